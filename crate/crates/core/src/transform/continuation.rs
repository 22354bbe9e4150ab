//! Continuation of `I(a, ·)` into the strips `−k−1 < Re(a) < −k`, `k ≥ 1`.
//!
//! In strip `k` the forcing of `I'' − a²I = −a/(a+1) · I(a+1, ·)` is the
//! solution one strip to the right. Instead of nesting quadratures, that
//! solution is tabulated once on a uniform grid (a [`Profile`]) and read back
//! through a clamped cubic spline. Profiles are cached per parameter and
//! tolerance set.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use num_complex::Complex64;
use parking_lot::Mutex;

use super::strip::{boundary_constants, strip_forcing, vop_solution_with};
use super::{check_xi, MethodTag, TransformResult, GAMMA_FLOOR};
use crate::error::{Error, Result};
use crate::gamma::{ComplexValue, GammaParameter, StripLocation};
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadratureSpec};

/// Grid spacing of tabulated profiles.
pub const PROFILE_SPACING: f64 = 0.05;

/// Deepest strip index reachable by continuation.
pub const MAX_CONTINUATION_DEPTH: usize = 2;

const MAX_PROFILE_EXTENT: f64 = 4096.0;

/// `I(b, ξ)` tabulated at `ξ_j = j·h`, `j = 0..=N`, for `Re(b) < 0`,
/// extended evenly and by zero beyond `N·h`.
#[derive(Debug, Clone)]
pub struct Profile {
    parameter: ComplexValue,
    spacing: f64,
    values: Vec<Complex64>,
    second: Vec<Complex64>,
    quad_err: f64,
    interp_err: f64,
}

/// Second derivatives of the cubic spline through `y` with `S'(0) = 0` and a
/// natural right end.
fn spline_second_derivatives(y: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = y.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    if n == 0 {
        return vec![zero];
    }
    let scale = 6.0 / (h * h);
    // Tridiagonal system, solved by forward elimination / back substitution.
    let mut diag = vec![0.0; n + 1];
    let mut rhs = vec![zero; n + 1];
    diag[0] = 2.0;
    rhs[0] = (y[1] - y[0]) * scale;
    for j in 1..n {
        let w = 1.0 / diag[j - 1];
        diag[j] = 4.0 - w;
        rhs[j] = (y[j + 1] - 2.0 * y[j] + y[j - 1]) * scale - rhs[j - 1] * w;
    }
    let mut m = vec![zero; n + 1];
    for j in (0..n).rev() {
        m[j] = (rhs[j] - m[j + 1]) / diag[j];
    }
    m
}

fn spline_eval(y: &[Complex64], m: &[Complex64], h: f64, x: f64) -> Complex64 {
    let x = x.abs();
    let n = y.len() - 1;
    let extent = n as f64 * h;
    if x > extent {
        return Complex64::new(0.0, 0.0);
    }
    let j = ((x / h).floor() as usize).min(n.saturating_sub(1));
    if n == 0 {
        return y[0];
    }
    let t = x - j as f64 * h;
    let u = h - t;
    let h6 = h / 6.0;
    m[j] * (u * u * u / (6.0 * h))
        + m[j + 1] * (t * t * t / (6.0 * h))
        + (y[j] - m[j] * (h * h6)) * (u / h)
        + (y[j + 1] - m[j + 1] * (h * h6)) * (t / h)
}

impl Profile {
    pub fn parameter(&self) -> ComplexValue {
        self.parameter
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn extent(&self) -> f64 {
        (self.values.len() - 1) as f64 * self.spacing
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.values
    }

    /// Spline value at `xi`; even in `xi`, zero past the extent.
    pub fn eval(&self, xi: f64) -> Complex64 {
        spline_eval(&self.values, &self.second, self.spacing, xi)
    }

    /// Estimated absolute error of [`Profile::eval`] between nodes, from
    /// comparison with the spline on every other node.
    pub fn interpolation_error(&self) -> f64 {
        self.interp_err
    }

    /// Accumulated quadrature error of the node values.
    pub fn node_error(&self) -> f64 {
        self.quad_err
    }

    fn estimate_interpolation_error(values: &[Complex64], h: f64) -> f64 {
        if values.len() < 5 {
            return 0.0;
        }
        let coarse: Vec<Complex64> = values.iter().step_by(2).copied().collect();
        let m = spline_second_derivatives(&coarse, 2.0 * h);
        let worst = (1..values.len() - 1)
            .step_by(2)
            .map(|j| (spline_eval(&coarse, &m, 2.0 * h, j as f64 * h) - values[j]).norm())
            .fold(0.0, f64::max);
        // error scales like h^4
        worst / 16.0
    }

    /// Tabulates the decaying solution of `I'' − b²I = G` for an even forcing.
    ///
    /// With `L(ξ) = ∫_{−∞}^ξ e^{b(ξ−s)} G` and `R(ξ) = ∫_ξ^∞ e^{b(s−ξ)} G`,
    /// `I = (L + R)/(2b)`. Both are advanced panel by panel with the
    /// contracting factor `e^{bh}`, so no growing exponential is formed.
    fn solve<F>(b: ComplexValue, forcing: F, extent: f64, spec: &QuadratureSpec) -> Result<Profile>
    where
        F: Fn(f64) -> Complex64,
    {
        let h = PROFILE_SPACING;
        let n = (extent / h).ceil() as usize;
        let step = (b * h).exp();
        let spec = spec.resolving(b.im);

        let far = n as f64 * h;
        let tail = integrate_semi_infinite(|u| forcing(far + u) * (b * u).exp(), 0.0, &spec)?;
        let mut right = vec![Complex64::new(0.0, 0.0); n + 1];
        right[n] = tail.value;
        let mut err = tail.err_estimate;
        let mut panel_l = Vec::with_capacity(n);
        for j in (0..n).rev() {
            let lo = j as f64 * h;
            let hi = lo + h;
            let r = integrate_finite(|s| forcing(s) * (b * (s - lo)).exp(), lo, hi, &spec)?;
            let l = integrate_finite(|s| forcing(s) * (b * (hi - s)).exp(), lo, hi, &spec)?;
            right[j] = step * right[j + 1] + r.value;
            err += r.err_estimate + l.err_estimate;
            panel_l.push(l.value);
        }
        panel_l.reverse();
        let mut values = Vec::with_capacity(n + 1);
        let mut left = right[0];
        let inv = 1.0 / (2.0 * b);
        values.push(inv * (left + right[0]));
        for j in 0..n {
            left = step * left + panel_l[j];
            values.push(inv * (left + right[j + 1]));
        }
        let second = spline_second_derivatives(&values, h);
        let interp_err = Self::estimate_interpolation_error(&values, h);
        Ok(Profile {
            parameter: b,
            spacing: h,
            values,
            second,
            quad_err: err * inv.norm(),
            interp_err,
        })
    }
}

/// Distance from `Re(b)` to the nearest integer: the exponential decay rate
/// of `I(b, ξ)` in `ξ`.
fn decay_rate(b: ComplexValue) -> f64 {
    let frac = b.re - b.re.floor();
    frac.min(1.0 - frac)
}

fn initial_extent(b: ComplexValue, spec: &QuadratureSpec) -> f64 {
    let logs = (1.0 / spec.truncation_tail_tol).ln().max(1.0);
    let s = 1.25 * logs / decay_rate(b) + 10.0;
    (s.min(MAX_PROFILE_EXTENT) / PROFILE_SPACING).ceil() * PROFILE_SPACING
}

type ProfileKey = (u64, u64, u64, u64, u64, usize);

static PROFILE_CACHE: LazyLock<Mutex<HashMap<ProfileKey, Arc<Profile>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn cache_key(b: ComplexValue, spec: &QuadratureSpec) -> ProfileKey {
    (
        b.re.to_bits(),
        b.im.to_bits(),
        spec.abs_tol.to_bits(),
        spec.rel_tol.to_bits(),
        spec.truncation_tail_tol.to_bits(),
        spec.max_subdivisions,
    )
}

fn build_profile(b: &GammaParameter, spec: &QuadratureSpec) -> Result<Profile> {
    let bv = b.value();
    let mut extent = initial_extent(bv, spec);
    loop {
        let profile = match b.strip() {
            StripLocation::Strip(0) => Profile::solve(bv, strip_forcing(b)?, extent, spec)?,
            StripLocation::Strip(_) => {
                let prev = profile(&b.shifted()?, spec)?;
                let ratio = -bv / (bv + 1.0);
                Profile::solve(bv, |s| ratio * prev.eval(s), extent.max(prev.extent()), spec)?
            }
            StripLocation::RightHalf => {
                return Err(Error::domain("profiles are only tabulated for Re(b) < 0"));
            }
        };
        let head = profile.values[0].norm().max(1.0);
        let last = profile.values.last().copied().unwrap_or_default().norm();
        if last <= spec.truncation_tail_tol * head || extent >= MAX_PROFILE_EXTENT {
            return Ok(profile);
        }
        extent = (2.0 * extent).min(MAX_PROFILE_EXTENT);
    }
}

/// The cached profile of `I(b, ·)`, building it (and the profiles it depends
/// on) on first use. Concurrent first uses may both build; the results are
/// identical and the first insertion wins.
pub fn profile(b: &GammaParameter, spec: &QuadratureSpec) -> Result<Arc<Profile>> {
    let key = cache_key(b.value(), spec);
    if let Some(p) = PROFILE_CACHE.lock().get(&key) {
        return Ok(Arc::clone(p));
    }
    let built = Arc::new(build_profile(b, spec)?);
    let mut cache = PROFILE_CACHE.lock();
    Ok(Arc::clone(cache.entry(key).or_insert(built)))
}

fn check_depth(a: &GammaParameter) -> Result<usize> {
    match a.strip() {
        StripLocation::Strip(k) if (1..=MAX_CONTINUATION_DEPTH).contains(&k) => Ok(k),
        StripLocation::Strip(k) if k > MAX_CONTINUATION_DEPTH => Err(Error::DepthExceeded {
            depth: k,
            max: MAX_CONTINUATION_DEPTH,
        }),
        _ => Err(Error::domain(format!(
            "continuation requires Re(a) < -1, got a = {}",
            a.value()
        ))),
    }
}

/// `J(a, ξ)` for `a` in strip 1 or 2, by variation of parameters with the
/// forcing `−a/(a+1) · I(a+1, ·)` read from the profile one strip to the right.
pub fn continue_to_strip(a: &GammaParameter, xi: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    check_depth(a)?;
    check_xi(xi)?;
    let av = a.value();
    let prev = profile(&a.shifted()?, spec)?;
    let ratio = -av / (av + 1.0);
    let forcing = |s: f64| ratio * prev.eval(s);

    let constants = boundary_constants(a, forcing, spec)?;
    let sol = vop_solution_with(a, forcing, &constants, xi.abs(), Some(prev.spacing()), spec)?;

    // A forcing error δ moves I by at most δ·∫|Green| = δ / (|a|·|Re a|).
    let forcing_err = ratio.norm() * (prev.interpolation_error() + prev.node_error());
    let i_err = sol.err_estimate + forcing_err / (av.norm() * av.re.abs()) + GAMMA_FLOOR * sol.value.norm();
    Ok(TransformResult {
        value: sol.value / av,
        err_estimate: i_err / av.norm(),
        evaluations: sol.evaluations,
        method: MethodTag::Continuation,
        strip: a.strip(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::strip_transform;

    fn param(re: f64, im: f64) -> GammaParameter {
        GammaParameter::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn spline_interpolates_gaussian() {
        let h = 0.1;
        let y: Vec<Complex64> = (0..=40).map(|j| Complex64::new((-(j as f64 * h).powi(2)).exp(), 0.0)).collect();
        let m = spline_second_derivatives(&y, h);
        for x in [0.05, 0.33, 1.27, -0.61] {
            let want = (-x * x as f64).exp();
            assert!((spline_eval(&y, &m, h, x).re - want).abs() < 1e-4, "x = {x}");
        }
        assert_eq!(spline_eval(&y, &m, h, 4.5), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn strip_zero_profile_matches_strip_formula() {
        let spec = QuadratureSpec::default();
        for (re, im) in [(-0.5, 0.0), (-0.25, 0.0), (-0.75, 0.3)] {
            let b = param(re, im);
            let prof = profile(&b, &spec).unwrap();
            for xi in [0.0, 0.05, 1.0, 2.35, 6.0] {
                let want = strip_transform(&b, xi, &spec).unwrap().value * b.value();
                let got = prof.eval(xi);
                assert!((got - want).norm() / want.norm() < 1e-8, "b = {re}+{im}i xi = {xi}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn depth_limits() {
        let spec = QuadratureSpec::default();
        assert!(matches!(
            continue_to_strip(&param(-3.5, 0.0), 0.0, &spec),
            Err(Error::DepthExceeded { depth: 3, max: 2 })
        ));
        assert!(matches!(continue_to_strip(&param(-0.5, 0.0), 0.0, &spec), Err(Error::Domain(_))));
        assert!(matches!(continue_to_strip(&param(0.5, 0.0), 0.0, &spec), Err(Error::Domain(_))));
    }

    #[test]
    fn cache_returns_shared_profile() {
        let spec = QuadratureSpec::default();
        let b = param(-0.6, 0.0);
        let p1 = profile(&b, &spec).unwrap();
        let p2 = profile(&b, &spec).unwrap();
        assert!(Arc::ptr_eq(&p1, &p2));
    }
}
