//! Verification batteries for the standalone identities and the cross-route
//! agreements, shared by the test suites and `rgt verify`.
//!
//! Random grids are drawn from ChaCha8 seeded with [`GRID_SEED`], so every
//! report is reproducible.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elementary::{sech, two_cosh_neg_pow};
use crate::error::{Error, Result};
use crate::gamma::{beta, duplication_check, gamma, ComplexValue, GammaParameter, EXCLUSION_MARGIN};
use crate::quad::{integrate_line, QuadratureSpec};
use crate::transform::{
    closed_form, continue_to_strip, direct_transform, jump_estimate, ode_residual, regularized_transform,
    strip_transform, DEFAULT_DELTAS, DEFAULT_FD_STEP,
};

/// Seed of every random grid in this module.
pub const GRID_SEED: u64 = 20_240_917;

/// Points closer than this to a pole of any gamma factor are skipped by
/// [`duplication_suite`].
pub const POLE_SKIP_DISTANCE: f64 = 1e-6;

/// One sample of an identity: the input, the residual, and what went wrong
/// if the sample could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub input: String,
    pub residual: f64,
    pub error: Option<String>,
}

impl IdentityCheck {
    fn from_result(input: String, r: Result<f64>) -> Self {
        match r {
            Ok(residual) => IdentityCheck {
                input,
                residual,
                error: None,
            },
            Err(e) => IdentityCheck {
                input,
                residual: f64::INFINITY,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub sample_points: usize,
    pub max_rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: Vec<IdentityCheck>,
    /// Inputs left out on purpose (pole-adjacent grid points).
    pub skipped: Vec<String>,
}

impl IdentityReport {
    pub fn from_checks(name: impl Into<String>, tolerance: f64, details: Vec<IdentityCheck>) -> Self {
        let max = details.iter().map(|c| c.residual).fold(0.0, f64::max);
        let all_finite = details.iter().all(|c| c.residual.is_finite());
        IdentityReport {
            name: name.into(),
            sample_points: details.len(),
            max_rel_residual: max,
            tolerance,
            pass: all_finite && !details.is_empty() && max <= tolerance,
            details,
            skipped: Vec::new(),
        }
    }
}

fn rel_diff(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

fn fmt_c(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Relative residual of Binet's integral for B(p, q):
/// `∫ (e^{(p−q)u} + e^{(q−p)u}) / (e^u + e^{−u})^{p+q} du`.
pub fn binet_check(p: ComplexValue, q: ComplexValue, spec: &QuadratureSpec) -> Result<f64> {
    let want = beta(p, q)?;
    let d = p - q;
    let s = p + q;
    let f = |u: f64| ((d * u).exp() + (-d * u).exp()) * two_cosh_neg_pow(u, s);
    let got = integrate_line(f, &spec.resolving(d.im))?.value;
    Ok(rel_diff(got, want))
}

/// Residual of `∫ sech(πt) e^{−iξt} dt = sech(ξ/2)`.
pub fn sech_special_case(xi: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !xi.is_finite() {
        return Err(Error::Domain(format!("frequency {xi} is not finite")));
    }
    let f = |t: f64| sech(PI * t) * Complex64::new(0.0, -xi * t).exp();
    let got = integrate_line(f, &spec.resolving(xi))?.value;
    Ok(rel_diff(got, Complex64::new(sech(0.5 * xi), 0.0)))
}

/// Reading of the square root in the Lerch-type estimate
/// `|Γ(a+it)| = λ Γ(1+a) / √(a²+t²) · √(t / sinh πt)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LerchVariant {
    /// `√(t / sinh πt)`, as displayed.
    AsPrinted,
    /// `√(πt / sinh πt)`, which makes λ → 1 as t → 0.
    #[default]
    PiInside,
}

impl LerchVariant {
    pub const ALL: [LerchVariant; 2] = [LerchVariant::AsPrinted, LerchVariant::PiInside];

    pub fn as_str(&self) -> &'static str {
        match self {
            LerchVariant::AsPrinted => "as-printed",
            LerchVariant::PiInside => "pi-inside",
        }
    }
}

impl fmt::Display for LerchVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LerchVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" => Ok(LerchVariant::AsPrinted),
            "pi-inside" => Ok(LerchVariant::PiInside),
            other => Err(Error::Domain(format!("unknown Lerch variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LerchReport {
    pub a: f64,
    pub variant: LerchVariant,
    pub t_values: Vec<f64>,
    pub lambda_values: Vec<f64>,
    /// `1 < λ` per point.
    pub bracket_low_ok: Vec<bool>,
    /// `λ < √(1 + t²)` per point.
    pub bracket_high_ok: Vec<bool>,
}

impl LerchReport {
    pub fn bracket_holds(&self) -> bool {
        self.bracket_low_ok.iter().chain(&self.bracket_high_ok).all(|&ok| ok)
    }
}

// ln(x / sinh x) for x > 0, accurate near zero and without overflow.
fn ln_x_over_sinh(x: f64) -> f64 {
    if x < 1e-4 {
        -x * x / 6.0
    } else if x < 20.0 {
        (x / x.sinh()).ln()
    } else {
        x.ln() - x + LN_2 - (-2.0 * x).exp().ln_1p()
    }
}

/// Solves the Lerch-type relation for λ at each `t`.
pub fn lerch_report(a: f64, t_values: &[f64], variant: LerchVariant) -> Result<LerchReport> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!("Lerch estimate needs a > 0, got {a}")));
    }
    let g1a = gamma(Complex64::new(1.0 + a, 0.0))?.re;
    let mut lambda_values = Vec::with_capacity(t_values.len());
    let mut low = Vec::with_capacity(t_values.len());
    let mut high = Vec::with_capacity(t_values.len());
    for &t in t_values {
        if !t.is_finite() || t == 0.0 {
            return Err(Error::Domain(format!("Lerch estimate needs finite t != 0, got {t}")));
        }
        let x = PI * t.abs();
        // ln √(t / sinh πt) = ½(ln(πt/sinh πt) − ln π)
        let mut ln_root = 0.5 * ln_x_over_sinh(x);
        if variant == LerchVariant::AsPrinted {
            ln_root -= 0.5 * PI.ln();
        }
        let modulus = gamma(Complex64::new(a, t))?.norm();
        let lambda = (modulus.ln() + 0.5 * (a * a + t * t).ln() - g1a.ln() - ln_root).exp();
        lambda_values.push(lambda);
        low.push(1.0 < lambda);
        high.push(lambda < (1.0 + t * t).sqrt());
    }
    Ok(LerchReport {
        a,
        variant,
        t_values: t_values.to_vec(),
        lambda_values,
        bracket_low_ok: low,
        bracket_high_ok: high,
    })
}

// Pole distance of Γ(a), Γ(a + ½) and Γ(2a) together.
fn duplication_pole_distance(a: ComplexValue) -> f64 {
    let dist = |z: ComplexValue| {
        if z.re > 0.5 {
            f64::INFINITY
        } else {
            (z - z.re.round().min(0.0)).norm()
        }
    };
    dist(a).min(dist(a + 0.5)).min(dist(2.0 * a) / 2.0)
}

/// Duplication residual over `grid`; pole-adjacent points are skipped and
/// listed.
pub fn duplication_suite(grid: &[ComplexValue], tolerance: f64) -> IdentityReport {
    let mut details = Vec::new();
    let mut skipped = Vec::new();
    for &a in grid {
        if duplication_pole_distance(a) < POLE_SKIP_DISTANCE.max(EXCLUSION_MARGIN) {
            skipped.push(fmt_c(a));
            continue;
        }
        details.push(IdentityCheck::from_result(fmt_c(a), duplication_check(a)));
    }
    let mut report = IdentityReport::from_checks("duplication", tolerance, details);
    report.skipped = skipped;
    report
}

/// `n` complex points with `|Re|, |Im| ≤ radius` and modulus at most `radius`.
pub fn random_disc(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<ComplexValue> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let z = Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius));
        if z.norm() <= radius {
            out.push(z);
        }
    }
    out
}

pub fn seeded_rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(GRID_SEED)
}

/// The batteries selectable from `rgt verify --suite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Gamma,
    Binet,
    Thm1,
    Thm2,
    Continuation,
    Ode,
    Jump,
    Lerch,
    Gaussian,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::All,
        Suite::Gamma,
        Suite::Binet,
        Suite::Thm1,
        Suite::Thm2,
        Suite::Continuation,
        Suite::Ode,
        Suite::Jump,
        Suite::Lerch,
        Suite::Gaussian,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Gamma => "gamma",
            Suite::Binet => "binet",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Continuation => "continuation",
            Suite::Ode => "ode",
            Suite::Jump => "jump",
            Suite::Lerch => "lerch",
            Suite::Gaussian => "gaussian",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite `{s}`")))
    }
}

/// Output of [`run_suite`]: pass/fail reports plus the report-only Lerch
/// tables.
#[derive(Debug, Clone, Default)]
pub struct VerifyOutcome {
    pub reports: Vec<IdentityReport>,
    pub lerch: Vec<LerchReport>,
}

impl VerifyOutcome {
    /// Lerch tables never affect the verdict.
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn param(a: Complex64) -> Result<GammaParameter> {
    GammaParameter::new(a)
}

pub fn gamma_reports() -> Vec<IdentityReport> {
    let mut rng = seeded_rng();
    let grid = random_disc(&mut rng, 100, 10.0);
    let dup = duplication_suite(&grid, 1e-12);

    let exact = [c(0.5, 0.0), c(1.0, 0.0), c(1.5, 0.0), c(2.0, 0.0)];
    let exact = IdentityReport {
        name: "duplication-exact".into(),
        ..duplication_suite(&exact, 1e-13)
    };

    let pts = random_disc(&mut rng, 200, 10.0);
    let rec = pts
        .iter()
        .map(|&z| {
            let r = (|| {
                let next = gamma(z + 1.0)?;
                Ok(rel_diff(z * gamma(z)?, next))
            })();
            IdentityCheck::from_result(fmt_c(z), r)
        })
        .collect();
    let rec = IdentityReport::from_checks("gamma-recurrence", 1e-12, rec);

    // |Γ(i)|² = π / sinh π
    let gi = IdentityCheck::from_result(
        "i".into(),
        gamma(c(0.0, 1.0)).map(|g| (g.norm_sqr() - PI / PI.sinh()).abs() / (PI / PI.sinh())),
    );
    let gi = IdentityReport::from_checks("gamma-i-modulus", 1e-13, vec![gi]);
    vec![dup, exact, rec, gi]
}

pub fn binet_reports(spec: &QuadratureSpec) -> Vec<IdentityReport> {
    let exact: Vec<_> = [(c(1.0, 0.0), c(1.0, 0.0)), (c(0.5, 0.0), c(0.5, 0.0)), (c(1.0, 2.0), c(1.0, 0.0))]
        .into_iter()
        .map(|(p, q)| IdentityCheck::from_result(format!("p={} q={}", fmt_c(p), fmt_c(q)), binet_check(p, q, spec)))
        .collect();
    let mut rng = seeded_rng();
    let random: Vec<_> = (0..50)
        .map(|_| {
            let p = c(rng.random_range(0.1..5.0), rng.random_range(-2.0..2.0));
            let q = c(rng.random_range(0.1..5.0), rng.random_range(-2.0..2.0));
            IdentityCheck::from_result(format!("p={} q={}", fmt_c(p), fmt_c(q)), binet_check(p, q, spec))
        })
        .collect();
    // Beta values themselves at the exact points.
    let values = vec![
        IdentityCheck::from_result(
            "B(1,1)=1".into(),
            beta(c(1.0, 0.0), c(1.0, 0.0)).map(|b| rel_diff(b, c(1.0, 0.0))),
        ),
        IdentityCheck::from_result(
            "B(1/2,1/2)=pi".into(),
            beta(c(0.5, 0.0), c(0.5, 0.0)).map(|b| rel_diff(b, c(PI, 0.0))),
        ),
    ];
    vec![
        IdentityReport::from_checks("binet-exact", 1e-10, exact),
        IdentityReport::from_checks("binet-random", 1e-8, random),
        IdentityReport::from_checks("beta-exact", 1e-14, values),
    ]
}

pub const CLOSED_FORM_A: [(f64, f64); 5] = [(0.3, 0.0), (0.5, 0.0), (1.0, 0.0), (2.25, 0.0), (1.5, 0.7)];
pub const CLOSED_FORM_XI: [f64; 7] = [0.0, 0.5, -0.5, 2.0, -2.0, 5.0, -5.0];
pub const SECH_XI: [f64; 7] = [0.0, 0.5, -0.5, 2.0, -2.0, 6.0, -6.0];

pub fn closed_form_reports(spec: &QuadratureSpec) -> Vec<IdentityReport> {
    let mut grid = Vec::new();
    for (re, im) in CLOSED_FORM_A {
        for xi in CLOSED_FORM_XI {
            let r = (|| {
                let p = param(c(re, im))?;
                let d = direct_transform(&p, xi, spec)?.value;
                Ok(rel_diff(d, closed_form(&p, xi)?.value))
            })();
            grid.push(IdentityCheck::from_result(format!("a={} xi={xi}", fmt_c(c(re, im))), r));
        }
    }
    let half = IdentityCheck::from_result(
        "a=1/2 xi=0 -> pi".into(),
        param(c(0.5, 0.0)).and_then(|p| closed_form(&p, 0.0)).map(|r| rel_diff(r.value, c(PI, 0.0))),
    );
    let sech: Vec<_> = SECH_XI
        .iter()
        .map(|&xi| IdentityCheck::from_result(format!("xi={xi}"), sech_special_case(xi, spec)))
        .collect();
    vec![
        IdentityReport::from_checks("direct-vs-closed", 1e-8, grid),
        IdentityReport::from_checks("closed-at-half", 1e-10, vec![half]),
        IdentityReport::from_checks("sech-special-case", 1e-9, sech),
    ]
}

pub const STRIP_A: [(f64, f64); 4] = [(-0.25, 0.0), (-0.5, 0.0), (-0.75, 0.0), (-0.5, 0.4)];
pub const STRIP_XI: [f64; 5] = [0.0, 1.0, -1.0, 3.0, -3.0];

pub fn strip_reports(spec: &QuadratureSpec) -> Vec<IdentityReport> {
    let mut grid = Vec::new();
    for (re, im) in STRIP_A {
        for xi in STRIP_XI {
            let r = (|| {
                let p = param(c(re, im))?;
                let s = strip_transform(&p, xi, spec)?.value;
                Ok(rel_diff(s, direct_transform(&p, xi, spec)?.value))
            })();
            grid.push(IdentityCheck::from_result(format!("a={} xi={xi}", fmt_c(c(re, im))), r));
        }
    }
    let ln2 = IdentityCheck::from_result(
        "a=-1/2 xi=0 -> 4 pi ln 2".into(),
        param(c(-0.5, 0.0))
            .and_then(|p| strip_transform(&p, 0.0, spec))
            .map(|r| rel_diff(r.value, c(4.0 * PI * LN_2, 0.0))),
    );
    // Positivity: residual 0 when J(a, 0) > 0, infinite otherwise.
    let positivity = [-0.25, -0.5, -0.75]
        .into_iter()
        .map(|a| {
            let r = param(c(a, 0.0))
                .and_then(|p| strip_transform(&p, 0.0, spec))
                .map(|r| if r.value.re > 0.0 { 0.0 } else { f64::INFINITY });
            IdentityCheck::from_result(format!("a={a}"), r)
        })
        .collect();
    vec![
        IdentityReport::from_checks("strip-vs-direct", 1e-6, grid),
        IdentityReport::from_checks("strip-four-pi-ln2", 1e-8, vec![ln2]),
        IdentityReport::from_checks("strip-positivity", 0.0, positivity),
    ]
}

pub const CONTINUATION_A: [f64; 3] = [-1.25, -1.5, -1.75];
pub const CONTINUATION_XI: [f64; 3] = [0.0, 1.0, -1.0];

pub fn continuation_reports(spec: &QuadratureSpec) -> Vec<IdentityReport> {
    let mut grid = Vec::new();
    for a in CONTINUATION_A {
        for xi in CONTINUATION_XI {
            let r = (|| {
                let p = param(c(a, 0.0))?;
                let v = continue_to_strip(&p, xi, spec)?.value;
                Ok(rel_diff(v, direct_transform(&p, xi, spec)?.value))
            })();
            grid.push(IdentityCheck::from_result(format!("a={a} xi={xi}"), r));
        }
    }
    vec![IdentityReport::from_checks("continuation-vs-direct", 1e-4, grid)]
}

pub const ODE_A: [f64; 6] = [0.3, -0.3, 0.7, -0.7, 1.2, -1.3];
pub const ODE_XI: [f64; 2] = [0.5, 1.5];

pub fn ode_reports(spec: &QuadratureSpec) -> Vec<IdentityReport> {
    let mut grid = Vec::new();
    for a in ODE_A {
        for xi in ODE_XI {
            let r = param(c(a, 0.0)).and_then(|p| ode_residual(&p, xi, DEFAULT_FD_STEP, spec));
            grid.push(IdentityCheck::from_result(format!("a={a} xi={xi}"), r));
        }
    }
    vec![IdentityReport::from_checks("ode-residual", 1e-4, grid)]
}

pub const JUMP_C: [f64; 3] = [0.3, 0.5, 1.0];
pub const JUMP_XI: [f64; 2] = [0.0, 1.0];

pub fn jump_reports(spec: &QuadratureSpec) -> Vec<IdentityReport> {
    let mut j = Vec::new();
    let mut i = Vec::new();
    for cc in JUMP_C {
        for xi in JUMP_XI {
            let label = format!("p={cc}i xi={xi}");
            match jump_estimate(c(0.0, cc), xi, &DEFAULT_DELTAS, spec) {
                Ok(est) => {
                    j.push(IdentityCheck::from_result(label.clone(), Ok(est.discrepancy)));
                    i.push(IdentityCheck::from_result(label, Ok(est.i_discrepancy)));
                }
                Err(e) => {
                    j.push(IdentityCheck::from_result(label.clone(), Err(e.clone())));
                    i.push(IdentityCheck::from_result(label, Err(e)));
                }
            }
        }
    }
    vec![
        IdentityReport::from_checks("jump-j", 1e-3, j),
        IdentityReport::from_checks("jump-i", 1e-3, i),
    ]
}

pub const GAUSSIAN_EPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Regularized replay at `a = 1, ξ = 0`: within 1% of π/2 at ε = 1e-3 and
/// the error shrinking as ε does.
pub fn gaussian_reports(spec: &QuadratureSpec) -> Vec<IdentityReport> {
    let want = c(PI / 2.0, 0.0);
    let details: Vec<_> = GAUSSIAN_EPS
        .iter()
        .map(|&eps| {
            let r = param(c(1.0, 0.0))
                .and_then(|p| regularized_transform(&p, 0.0, eps, spec))
                .map(|v| rel_diff(v, want));
            IdentityCheck::from_result(format!("eps={eps:e}"), r)
        })
        .collect();
    let decreasing = details.windows(2).all(|w| w[1].residual < w[0].residual);
    let at_1e3 = details[1].residual;
    let mut report = IdentityReport::from_checks("gaussian-regularization", 1e-2, details);
    report.max_rel_residual = at_1e3;
    report.pass = at_1e3.is_finite() && at_1e3 <= 1e-2 && decreasing;
    vec![report]
}

pub const LERCH_A: [f64; 2] = [1.0, 2.0];
pub const LERCH_T: [f64; 8] = [1e-6, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0];

pub fn lerch_reports() -> Vec<LerchReport> {
    let mut out = Vec::new();
    for a in LERCH_A {
        for v in LerchVariant::ALL {
            out.push(lerch_report(a, &LERCH_T, v).expect("fixed grid is valid"));
        }
    }
    out
}

pub fn run_suite(suite: Suite, spec: &QuadratureSpec) -> VerifyOutcome {
    let mut out = VerifyOutcome::default();
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    if wanted(Suite::Gamma) {
        out.reports.extend(gamma_reports());
    }
    if wanted(Suite::Binet) {
        out.reports.extend(binet_reports(spec));
    }
    if wanted(Suite::Thm1) {
        out.reports.extend(closed_form_reports(spec));
    }
    if wanted(Suite::Thm2) {
        out.reports.extend(strip_reports(spec));
    }
    if wanted(Suite::Continuation) {
        out.reports.extend(continuation_reports(spec));
    }
    if wanted(Suite::Ode) {
        out.reports.extend(ode_reports(spec));
    }
    if wanted(Suite::Jump) {
        out.reports.extend(jump_reports(spec));
    }
    if wanted(Suite::Gaussian) {
        out.reports.extend(gaussian_reports(spec));
    }
    if wanted(Suite::Lerch) {
        out.lerch = lerch_reports();
    }
    out
}
