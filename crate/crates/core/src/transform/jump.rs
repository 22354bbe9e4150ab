//! The jump of `J(·, ξ)` across the imaginary axis.
//!
//! The one-sided limits at `p = ic` are sampled at `p ± δ` (closed form on the
//! right, strip formula on the left), and the difference is extrapolated to
//! `δ = 0` with a quadratic model in `δ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{closed_form, strip_transform};
use crate::error::{Error, Result};
use crate::gamma::{gamma, ComplexValue, GammaParameter, EXCLUSION_MARGIN};
use crate::quad::QuadratureSpec;

/// The quadratic model leaves an `O(δ³)` remainder; at `p = 0.3i` the triple
/// `(0.1, 0.05, 0.025)` is already off by 3e-3, this one by about 1e-5.
pub const DEFAULT_DELTAS: [f64; 3] = [0.02, 0.01, 0.005];

/// Successive extrapolants further apart than this fraction of the final
/// estimate are treated as divergent.
const UNSTABLE_RATIO: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct JumpEstimate {
    pub p: ComplexValue,
    pub xi: f64,
    pub deltas: Vec<f64>,
    /// `(J(p + δ, ξ), J(p − δ, ξ))` per delta.
    pub two_sided_values: Vec<(ComplexValue, ComplexValue)>,
    pub extrapolated: ComplexValue,
    pub closed_form: ComplexValue,
    pub discrepancy: f64,
    /// Same construction applied to `I = a·J`.
    pub i_extrapolated: ComplexValue,
    /// `2π cosh(pξ) Γ(1 + 2p)`, i.e. `2π cos(cξ) Γ(1 + 2ic)`.
    pub i_closed_form: ComplexValue,
    pub i_discrepancy: f64,
}

fn check_imaginary(p: ComplexValue) -> Result<()> {
    if p.re != 0.0 || !p.im.is_finite() || p.im.abs() <= EXCLUSION_MARGIN {
        return Err(Error::domain(format!(
            "jump point must be purely imaginary and nonzero, got {p}"
        )));
    }
    Ok(())
}

/// `4π cosh(pξ) Γ(2p)` for purely imaginary `p ≠ 0`.
pub fn jump_closed_form(p: ComplexValue, xi: f64) -> Result<ComplexValue> {
    check_imaginary(p)?;
    Ok(4.0 * PI * (p * xi).cosh() * gamma(2.0 * p)?)
}

fn i_jump_closed_form(p: ComplexValue, xi: f64) -> Result<ComplexValue> {
    Ok(2.0 * PI * (p * xi).cosh() * gamma(1.0 + 2.0 * p)?)
}

/// Value at zero of the polynomial through `(x_i, y_i)`.
fn lagrange_at_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        let mut w = 1.0;
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                w *= -xj / (xi - xj);
            }
        }
        sum += yi * w;
    }
    sum
}

/// Quadratic extrapolation through the three smallest deltas, checked
/// against the next-lower-order (or previous-triple) extrapolant.
fn extrapolate(deltas: &[f64], values: &[Complex64]) -> Result<Complex64> {
    let n = deltas.len();
    let best = lagrange_at_zero(&deltas[n - 3..], &values[n - 3..]);
    let rival = if n >= 4 {
        lagrange_at_zero(&deltas[n - 4..n - 1], &values[n - 4..n - 1])
    } else {
        lagrange_at_zero(&deltas[n - 2..], &values[n - 2..])
    };
    let spread = (best - rival).norm();
    if !(best.re.is_finite() && best.im.is_finite()) || spread > UNSTABLE_RATIO * best.norm() {
        return Err(Error::ExtrapolationUnstable(format!(
            "extrapolants {best} and {rival} differ by {spread:e}"
        )));
    }
    Ok(best)
}

fn check_deltas(deltas: &[f64]) -> Result<()> {
    if deltas.len() < 3 {
        return Err(Error::domain("at least three deltas are required"));
    }
    for &d in deltas {
        if !(d.is_finite() && d >= 10.0 * EXCLUSION_MARGIN && d < 1.0) {
            return Err(Error::domain(format!(
                "delta {d} outside [{:e}, 1)",
                10.0 * EXCLUSION_MARGIN
            )));
        }
    }
    if deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("deltas must be strictly decreasing"));
    }
    Ok(())
}

/// Estimates the jump at `p` from `J(p ± δ, ξ)` and compares it with
/// [`jump_closed_form`].
pub fn jump_estimate(p: ComplexValue, xi: f64, deltas: &[f64], spec: &QuadratureSpec) -> Result<JumpEstimate> {
    check_imaginary(p)?;
    check_deltas(deltas)?;
    if !xi.is_finite() {
        return Err(Error::domain(format!("frequency {xi} is not finite")));
    }

    let mut two_sided = Vec::with_capacity(deltas.len());
    let mut j_diffs = Vec::with_capacity(deltas.len());
    let mut i_diffs = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let right_a = p + d;
        let left_a = p - d;
        let right = closed_form(&GammaParameter::new(right_a)?, xi)?.value;
        let left = strip_transform(&GammaParameter::new(left_a)?, xi, spec)?.value;
        two_sided.push((right, left));
        j_diffs.push(right - left);
        i_diffs.push(right_a * right - left_a * left);
    }

    let extrapolated = extrapolate(deltas, &j_diffs)?;
    let i_extrapolated = extrapolate(deltas, &i_diffs)?;
    let closed = jump_closed_form(p, xi)?;
    let i_closed = i_jump_closed_form(p, xi)?;
    Ok(JumpEstimate {
        p,
        xi,
        deltas: deltas.to_vec(),
        two_sided_values: two_sided,
        extrapolated,
        closed_form: closed,
        discrepancy: (extrapolated - closed).norm() / closed.norm(),
        i_extrapolated,
        i_closed_form: i_closed,
        i_discrepancy: (i_extrapolated - i_closed).norm() / i_closed.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(c: f64) -> Complex64 {
        Complex64::new(0.0, c)
    }

    #[test]
    fn closed_form_at_half_i() {
        let v = jump_closed_form(im(0.5), 0.0).unwrap();
        let g = gamma(im(1.0)).unwrap();
        assert!((v - 4.0 * PI * g).norm() < 1e-14);
        // |Γ(i)|² = π / sinh π
        assert!((g.norm_sqr() - PI / PI.sinh()).abs() < 1e-15);
        let v1 = jump_closed_form(im(0.5), 1.0).unwrap();
        assert!((v1 - 4.0 * PI * 0.5f64.cos() * g).norm() < 1e-14);
        assert_eq!(v1, jump_closed_form(im(0.5), -1.0).unwrap());
    }

    #[test]
    fn closed_form_domain() {
        assert!(jump_closed_form(Complex64::new(0.1, 0.5), 0.0).is_err());
        assert!(jump_closed_form(im(0.0), 0.0).is_err());
    }

    #[test]
    fn lagrange_recovers_quadratic() {
        let xs = [0.1, 0.05, 0.025];
        let f = |x: f64| Complex64::new(2.0 - 3.0 * x + 7.0 * x * x, x);
        let ys: Vec<_> = xs.iter().map(|&x| f(x)).collect();
        assert!((lagrange_at_zero(&xs, &ys) - Complex64::new(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn divergent_sequence_is_unstable() {
        let xs = [0.1, 0.05, 0.025];
        let ys = [Complex64::new(1.0, 0.0), Complex64::new(-50.0, 0.0), Complex64::new(400.0, 0.0)];
        assert!(matches!(extrapolate(&xs, &ys), Err(Error::ExtrapolationUnstable(_))));
    }

    #[test]
    fn delta_validation() {
        assert!(check_deltas(&[0.1, 0.05]).is_err());
        assert!(check_deltas(&[0.1, 0.1, 0.05]).is_err());
        assert!(check_deltas(&[0.1, 0.05, 1e-9]).is_err());
        assert!(check_deltas(&[1.5, 0.5, 0.25]).is_err());
        assert!(check_deltas(&DEFAULT_DELTAS).is_ok());
    }

    #[test]
    fn coarse_deltas_at_half_i() {
        let est = jump_estimate(im(0.5), 1.0, &[0.1, 0.05, 0.025], &QuadratureSpec::default()).unwrap();
        assert!(est.discrepancy <= 1e-3, "{}", est.discrepancy);
    }

    #[test]
    fn estimate_at_half_i() {
        let est = jump_estimate(im(0.5), 0.0, &DEFAULT_DELTAS, &QuadratureSpec::default()).unwrap();
        assert!(est.discrepancy <= 1e-4, "{}", est.discrepancy);
        assert!(est.i_discrepancy <= 1e-4, "{}", est.i_discrepancy);
        assert_eq!(est.two_sided_values.len(), 3);
    }
}
