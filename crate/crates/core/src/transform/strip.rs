//! The strip `−1 < Re(a) < 0`, where `I(a, ·)` solves
//! `I'' − a²I = G` with `G(ξ) = −aΦ(a+1) sech^{2a+2}(ξ/2)`, and the
//! variation-of-parameters machinery shared with deeper strips.
//!
//! The complete solution is
//!
//! ```text
//! I(ξ) = e^{aξ}  (A + 1/(2a) ∫_0^ξ G(s) e^{−as} ds)
//!      + e^{−aξ} (B − 1/(2a) ∫_0^ξ G(s) e^{as}  ds)
//! ```
//!
//! and decay at both ends fixes `A` and `B`.

use num_complex::Complex64;

use super::{check_xi, MethodTag, TransformResult, GAMMA_FLOOR};
use crate::elementary::sech_pow;
use crate::error::{Error, Result};
use crate::gamma::{phi, ComplexValue, GammaParameter, StripLocation};
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadratureResult, QuadratureSpec};

/// Constants of the homogeneous part: `A` multiplies `e^{aξ}`, `B` multiplies
/// `e^{−aξ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConstants {
    pub a_coeff: ComplexValue,
    pub b_coeff: ComplexValue,
    pub err_estimate: f64,
    pub evaluations: usize,
}

impl BoundaryConstants {
    pub fn pair(&self) -> (ComplexValue, ComplexValue) {
        (self.a_coeff, self.b_coeff)
    }
}

/// The forcing `−aΦ(a+1) sech^{2a+2}(s/2)` of the first-strip equation.
pub fn strip_forcing(a: &GammaParameter) -> Result<impl Fn(f64) -> Complex64 + Send + Sync> {
    let av = a.value();
    let scale = -av * phi(av + 1.0)?;
    let w = 2.0 * av + 2.0;
    Ok(move |s: f64| scale * sech_pow(0.5 * s, w))
}

/// `A` and `B` making the variation-of-parameters solution decay as
/// `ξ → ±∞`, for a forcing that decays fast enough for the defining
/// half-line integrals to converge.
pub fn boundary_constants<F>(a: &GammaParameter, forcing: F, spec: &QuadratureSpec) -> Result<BoundaryConstants>
where
    F: Fn(f64) -> Complex64,
{
    let av = a.value();
    let spec = spec.resolving(av.im);
    let half_inv = 1.0 / (2.0 * av);
    if av.re < 0.0 {
        let right = integrate_semi_infinite(|s| forcing(s) * (av * s).exp(), 0.0, &spec)?;
        let left = integrate_semi_infinite(|s| forcing(-s) * (av * s).exp(), 0.0, &spec)?;
        Ok(BoundaryConstants {
            a_coeff: half_inv * left.value,
            b_coeff: half_inv * right.value,
            err_estimate: half_inv.norm() * right.err_estimate.max(left.err_estimate),
            evaluations: right.evaluations + left.evaluations,
        })
    } else {
        let right = integrate_semi_infinite(|s| forcing(s) * (-av * s).exp(), 0.0, &spec)?;
        let left = integrate_semi_infinite(|s| forcing(-s) * (-av * s).exp(), 0.0, &spec)?;
        Ok(BoundaryConstants {
            a_coeff: -half_inv * right.value,
            b_coeff: -half_inv * left.value,
            err_estimate: half_inv.norm() * right.err_estimate.max(left.err_estimate),
            evaluations: right.evaluations + left.evaluations,
        })
    }
}

/// Oriented integral over `[0, xi]`, optionally split at the multiples of
/// `knot_spacing` so each piece sees a smooth integrand.
fn integrate_from_zero<F>(f: F, xi: f64, knot_spacing: Option<f64>, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    let Some(h) = knot_spacing else {
        return integrate_finite(f, 0.0, xi, spec);
    };
    let sign = xi.signum();
    let len = xi.abs();
    let full = (len / h).floor() as usize;
    let mut total = QuadratureResult {
        value: Complex64::new(0.0, 0.0),
        err_estimate: 0.0,
        evaluations: 0,
        converged: true,
        truncation_point: 0.0,
    };
    let mut add = |lo: f64, hi: f64| -> Result<()> {
        let r = integrate_finite(&f, sign * lo, sign * hi, spec)?;
        total.value += r.value;
        total.err_estimate += r.err_estimate;
        total.evaluations += r.evaluations;
        Ok(())
    };
    for j in 0..full {
        add(j as f64 * h, (j + 1) as f64 * h)?;
    }
    let start = full as f64 * h;
    if len > start {
        add(start, len)?;
    }
    Ok(total)
}

pub(crate) fn vop_solution_with<F>(
    a: &GammaParameter,
    forcing: F,
    constants: &BoundaryConstants,
    xi: f64,
    knot_spacing: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    check_xi(xi)?;
    let av = a.value();
    let spec = spec.resolving(av.im);
    let half_inv = 1.0 / (2.0 * av);
    let minus = integrate_from_zero(|s| forcing(s) * (-av * s).exp(), xi, knot_spacing, &spec)?;
    let plus = integrate_from_zero(|s| forcing(s) * (av * s).exp(), xi, knot_spacing, &spec)?;
    let grow = (av * xi).exp();
    let decay = (-av * xi).exp();
    let value = grow * (constants.a_coeff + half_inv * minus.value)
        + decay * (constants.b_coeff - half_inv * plus.value);
    let err = grow.norm() * (constants.err_estimate + half_inv.norm() * minus.err_estimate)
        + decay.norm() * (constants.err_estimate + half_inv.norm() * plus.err_estimate);
    Ok(QuadratureResult {
        value,
        err_estimate: err,
        evaluations: constants.evaluations + minus.evaluations + plus.evaluations,
        converged: minus.converged && plus.converged,
        truncation_point: 0.0,
    })
}

/// Evaluates the complete variation-of-parameters solution at `xi`.
pub fn vop_solution<F>(
    a: &GammaParameter,
    forcing: F,
    constants: &BoundaryConstants,
    xi: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    vop_solution_with(a, forcing, constants, xi, None, spec)
}

/// `J(a, ξ)` for `−1 < Re(a) < 0` as `I(a, ξ)/a` with
///
/// ```text
/// I(a, ξ) = −Φ(a+1) { cosh(aξ) ∫_0^∞ e^{as} sech^{2a+2}(s/2) ds
///                     + ∫_0^ξ sinh(a(ξ−s)) sech^{2a+2}(s/2) ds }.
/// ```
///
/// The kernel of the second integral is `sinh`: it is what variation of
/// parameters with `A = B` produces, and `cosh` disagrees with direct
/// quadrature for every `ξ ≠ 0`.
pub fn strip_transform(a: &GammaParameter, xi: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    if a.strip() != StripLocation::Strip(0) {
        return Err(Error::domain(format!(
            "strip formula requires -1 < Re(a) < 0, got a = {}",
            a.value()
        )));
    }
    check_xi(xi)?;
    // I(a, ·) is even; using |ξ| makes the symmetry exact.
    let xi = xi.abs();
    let av = a.value();
    let w = 2.0 * av + 2.0;
    let spec = spec.resolving(av.im);
    let phi1 = phi(av + 1.0)?;

    let tail = integrate_semi_infinite(|s| (av * s).exp() * sech_pow(0.5 * s, w), 0.0, &spec)?;
    let head = integrate_finite(|s| (av * (xi - s)).sinh() * sech_pow(0.5 * s, w), 0.0, xi, &spec)?;

    let c = (av * xi).cosh();
    let i_value = -phi1 * (c * tail.value + head.value);
    let i_err = phi1.norm() * (c.norm() * tail.err_estimate + head.err_estimate) + GAMMA_FLOOR * i_value.norm();
    Ok(TransformResult {
        value: i_value / av,
        err_estimate: i_err / av.norm(),
        evaluations: tail.evaluations + head.evaluations,
        method: MethodTag::StripFormula,
        strip: a.strip(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::closed_form;
    use std::f64::consts::{LN_2, PI};

    fn param(re: f64, im: f64) -> GammaParameter {
        GammaParameter::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn half_line_integral_at_minus_half() {
        // ∫_0^∞ e^{−s/2} sech(s/2) ds = 2 ln 2
        let r = integrate_semi_infinite(
            |s| Complex64::new((-0.5 * s).exp() / (0.5 * s).cosh(), 0.0),
            0.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.value.re - 2.0 * LN_2).abs() < 1e-12);
    }

    #[test]
    fn strip_value_at_minus_half() {
        let r = strip_transform(&param(-0.5, 0.0), 0.0, &QuadratureSpec::default()).unwrap();
        let want = 4.0 * PI * LN_2;
        assert!((r.value.re - want).abs() / want < 1e-10);
        assert!(r.value.im == 0.0);
    }

    #[test]
    fn strip_is_even() {
        let spec = QuadratureSpec::default();
        let p = param(-0.5, 0.0);
        assert_eq!(
            strip_transform(&p, 1.7, &spec).unwrap().value,
            strip_transform(&p, -1.7, &spec).unwrap().value
        );
    }

    #[test]
    fn strip_rejects_other_strips() {
        let spec = QuadratureSpec::default();
        assert!(strip_transform(&param(0.5, 0.0), 0.0, &spec).is_err());
        assert!(strip_transform(&param(-1.5, 0.0), 0.0, &spec).is_err());
    }

    #[test]
    fn constants_at_minus_half() {
        let p = param(-0.5, 0.0);
        let k = boundary_constants(&p, strip_forcing(&p).unwrap(), &QuadratureSpec::default()).unwrap();
        let want = -PI * LN_2;
        assert!((k.a_coeff.re - want).abs() < 1e-10);
        assert_eq!(k.a_coeff, k.b_coeff);
    }

    #[test]
    fn constants_right_half_sign() {
        // A = B = Φ(3/2)/2 · ∫_0^∞ sech³(s/2) e^{−s/2} ds at a = 1/2
        let p = param(0.5, 0.0);
        let spec = QuadratureSpec::default();
        let k = boundary_constants(&p, strip_forcing(&p).unwrap(), &spec).unwrap();
        let integral = integrate_semi_infinite(
            |s| Complex64::new((0.5 * s).cosh().powi(-3) * (-0.5 * s).exp(), 0.0),
            0.0,
            &spec,
        )
        .unwrap()
        .value;
        let want = phi(Complex64::new(1.5, 0.0)).unwrap() / 2.0 * integral;
        assert!(k.a_coeff.re > 0.0);
        assert!((k.a_coeff - want).norm() < 1e-10);
        assert_eq!(k.a_coeff, k.b_coeff);
    }

    #[test]
    fn vop_reproduces_strip_formula() {
        let spec = QuadratureSpec::default();
        for (re, im) in [(-0.5, 0.0), (-0.3, 0.6)] {
            let p = param(re, im);
            let g = strip_forcing(&p).unwrap();
            let k = boundary_constants(&p, &g, &spec).unwrap();
            for xi in [0.0, 1.7, -2.5] {
                let vop = vop_solution(&p, &g, &k, xi, &spec).unwrap().value;
                let strip = strip_transform(&p, xi, &spec).unwrap().value * p.value();
                assert!((vop - strip).norm() / strip.norm() < 1e-9, "a = {re}+{im}i xi = {xi}");
            }
        }
    }

    #[test]
    fn vop_in_right_half_reproduces_closed_form() {
        let spec = QuadratureSpec::default();
        let p = param(0.5, 0.0);
        let g = strip_forcing(&p).unwrap();
        let k = boundary_constants(&p, &g, &spec).unwrap();
        for xi in [0.0, 1.0, -3.0] {
            let vop = vop_solution(&p, &g, &k, xi, &spec).unwrap().value;
            let want = closed_form(&p, xi).unwrap().value * p.value();
            assert!((vop - want).norm() / want.norm() < 1e-9, "xi = {xi}");
        }
    }
}
