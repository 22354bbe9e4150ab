use crate::error::{Error, Result};
use crate::gamma::GammaParameter;
use crate::quad::QuadratureSpec;

use super::i_transform;

/// Default step of the central second difference.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Relative residual of `(d²/dξ² − a²) I(a, ξ) = −a/(a+1) · I(a+1, ξ)` with
/// the second derivative replaced by a central three-point difference of
/// step `h`, normalised by `|I(a+1, ξ)|`.
pub fn ode_residual(a: &GammaParameter, xi: f64, h: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::domain(format!("finite-difference step must be positive, got {h}")));
    }
    let av = a.value();
    let next = a.shifted()?;
    let mid = i_transform(a, xi, spec)?.value;
    let up = i_transform(a, xi + h, spec)?.value;
    let down = i_transform(a, xi - h, spec)?.value;
    let shifted = i_transform(&next, xi, spec)?.value;

    let second = (up - 2.0 * mid + down) / (h * h);
    let lhs = second - av * av * mid;
    let rhs = -av / (av + 1.0) * shifted;
    Ok((lhs - rhs).norm() / shifted.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn residual_small_in_right_half() {
        let a = GammaParameter::real(1.0).unwrap();
        let r = ode_residual(&a, 0.5, DEFAULT_FD_STEP, &QuadratureSpec::default()).unwrap();
        assert!(r <= 1e-5, "{r}");
    }

    #[test]
    fn residual_small_in_first_strip() {
        let a = GammaParameter::real(-0.5).unwrap();
        let r = ode_residual(&a, 1.0, DEFAULT_FD_STEP, &QuadratureSpec::default()).unwrap();
        assert!(r <= 1e-4, "{r}");
    }

    #[test]
    fn first_difference_vanishes_at_symmetric_point() {
        let a = GammaParameter::real(0.5).unwrap();
        let spec = QuadratureSpec::default();
        for h in [1e-2, 1e-3] {
            let up = i_transform(&a, h, &spec).unwrap().value;
            let down = i_transform(&a, -h, &spec).unwrap().value;
            assert!((up - down).norm() <= h * h);
        }
    }

    #[test]
    fn rejects_bad_step() {
        let spec = QuadratureSpec::default();
        let a = GammaParameter::new(Complex64::new(0.5, 0.2)).unwrap();
        assert!(ode_residual(&a, 0.0, 0.0, &spec).is_err());
        assert!(ode_residual(&a, 0.0, f64::NAN, &spec).is_err());
    }
}
