//! Routes valid in the right half plane, and the direct oracle valid everywhere.

use std::cell::RefCell;
use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::{check_xi, MethodTag, TransformResult, GAMMA_FLOOR};
use crate::elementary::{sech_pow, two_cosh_neg_pow};
use crate::error::{Error, Result};
use crate::gamma::{gamma, phi, vertical_product, ComplexValue, GammaParameter, StripLocation};
use crate::quad::{integrate_line, QuadratureSpec};

const NAN: Complex64 = Complex64::new(f64::NAN, f64::NAN);

fn require_right_half(a: &GammaParameter, what: &str) -> Result<()> {
    if a.strip() == StripLocation::RightHalf {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} requires Re(a) > 0, got a = {}", a.value())))
    }
}

/// `J(a, ξ)` by quadrature of `Γ(a + it)Γ(a − it)e^{−iξt}` over the real line.
///
/// This is the oracle for every formula route.
pub fn direct_transform(a: &GammaParameter, xi: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    check_xi(xi)?;
    let av = a.value();
    let f = |t: f64| match vertical_product(av, t) {
        Ok(g) => g * Complex64::new(0.0, -xi * t).exp(),
        Err(_) => NAN,
    };
    let r = integrate_line(f, &spec.resolving(xi))?;
    Ok(TransformResult {
        value: r.value,
        err_estimate: r.err_estimate,
        evaluations: r.evaluations,
        method: MethodTag::Direct,
        strip: a.strip(),
    })
}

/// `2πΓ(2a) / (4^a cosh^{2a}(ξ/2))` for `Re(a) > 0`.
pub fn closed_form(a: &GammaParameter, xi: f64) -> Result<TransformResult> {
    require_right_half(a, "closed form")?;
    check_xi(xi)?;
    let av = a.value();
    let four_pow = (-av * (2.0 * LN_2)).exp();
    let value = 2.0 * PI * gamma(2.0 * av)? * four_pow * sech_pow(0.5 * xi, 2.0 * av);
    Ok(TransformResult {
        value,
        err_estimate: GAMMA_FLOOR * value.norm(),
        evaluations: 0,
        method: MethodTag::ClosedForm,
        strip: a.strip(),
    })
}

/// `Φ(a)·sech^{2a}(ξ/2)`, the duplication-formula twin of [`closed_form`].
pub fn sech_form(a: &GammaParameter, xi: f64) -> Result<TransformResult> {
    require_right_half(a, "sech form")?;
    check_xi(xi)?;
    let av = a.value();
    let value = phi(av)? * sech_pow(0.5 * xi, 2.0 * av);
    Ok(TransformResult {
        value,
        err_estimate: GAMMA_FLOOR * value.norm(),
        evaluations: 0,
        method: MethodTag::ClosedForm,
        strip: a.strip(),
    })
}

/// Gaussian-regularized transform
/// `Γ(2a) ∫ e^{−εt² − itξ} ∫ (e^{2itu} + e^{−2itu}) (e^u + e^{−u})^{−2a} du dt`,
/// evaluated by iterated quadrature with the inner `u`-integral first.
///
/// Tends to [`closed_form`] as `eps → 0⁺`.
pub fn regularized_transform(
    a: &GammaParameter,
    xi: f64,
    eps: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexValue> {
    require_right_half(a, "regularized transform")?;
    check_xi(xi)?;
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::domain(format!("regularization eps must be positive, got {eps}")));
    }
    let two_a = 2.0 * a.value();
    let inner_failure: RefCell<Option<Error>> = RefCell::new(None);

    let inner = |t: f64| -> Complex64 {
        let g = |u: f64| {
            let osc = Complex64::new(0.0, 2.0 * t * u).exp() + Complex64::new(0.0, -2.0 * t * u).exp();
            osc * two_cosh_neg_pow(u, two_a)
        };
        match integrate_line(g, &spec.resolving(2.0 * t)) {
            Ok(r) => r.value,
            Err(e) => {
                inner_failure.borrow_mut().get_or_insert(e);
                NAN
            }
        }
    };
    let outer = |t: f64| {
        let v = inner(t);
        v * Complex64::new(-eps * t * t, -xi * t).exp()
    };
    let res = integrate_line(outer, &spec.resolving(xi));
    if let Some(e) = inner_failure.into_inner() {
        return Err(e);
    }
    Ok(gamma(two_a)? * res?.value)
}
