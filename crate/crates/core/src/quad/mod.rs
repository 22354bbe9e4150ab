//! Adaptive quadrature for smooth, rapidly decreasing, possibly oscillatory
//! complex-valued integrands on finite intervals, half-lines and the whole line.
//!
//! The base rule is Gauss–Kronrod 21/10 with global (largest error first)
//! bisection. Unbounded domains are truncated by a doubling-window test on the
//! mass of |f|; the retained interval is then handed to the finite integrator.

mod rule;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::ComplexValue;

/// Largest half-line extent probed by the truncation search, relative to the
/// lower limit.
pub const MAX_TRUNCATION_EXPONENT: u32 = 20;

// Hard cap on the initial partition so a huge wavenumber cannot allocate
// without bound.
const MAX_INITIAL_PANELS: usize = 200_000;

// Minimum number of initial panels on each side of a truncated domain.
const MIN_TRUNCATED_PANELS: usize = 16;

/// Tolerances and limits shared by every integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Bisections allowed on top of the initial partition.
    pub max_subdivisions: usize,
    /// Mass of |f| on a doubling window below which the tail is dropped.
    pub truncation_tail_tol: f64,
    /// Largest |ξ| the panel sizing must resolve; panels never exceed a
    /// quarter period `π / (2k)`.
    pub oscillation_wavenumber: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            truncation_tail_tol: 1e-12,
            oscillation_wavenumber: 0.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let nonneg = |x: f64| x.is_finite() && x >= 0.0;
        if !nonneg(self.abs_tol) || !nonneg(self.rel_tol) {
            return Err(Error::domain("tolerances must be finite and nonnegative"));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(Error::domain("one of abs_tol, rel_tol must be positive"));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::domain("max_subdivisions must be at least 8"));
        }
        if !(self.truncation_tail_tol.is_finite() && self.truncation_tail_tol > 0.0) {
            return Err(Error::domain("truncation_tail_tol must be positive"));
        }
        if !nonneg(self.oscillation_wavenumber) {
            return Err(Error::domain("oscillation_wavenumber must be nonnegative"));
        }
        Ok(())
    }

    /// Same spec with the oscillation wavenumber raised to at least `|xi|`.
    pub fn resolving(mut self, xi: f64) -> Self {
        self.oscillation_wavenumber = self.oscillation_wavenumber.max(xi.abs());
        self
    }

    /// The acceptance threshold for an integral whose magnitude is `scale`.
    pub fn tolerance(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale)
    }

    fn quarter_period(&self) -> Option<f64> {
        (self.oscillation_wavenumber > 0.0).then(|| PI / (2.0 * self.oscillation_wavenumber))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Where an unbounded domain was cut off; zero for finite intervals.
    pub truncation_point: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn non_finite(at: f64) -> Error {
    Error::domain(format!("integrand is not finite near {at}"))
}

fn evaluate_panel<F>(f: &F, lo: f64, hi: f64) -> Result<Panel>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let est = rule::apply(f, lo, hi);
    if !(est.value.re.is_finite() && est.value.im.is_finite() && est.err.is_finite()) {
        return Err(non_finite(0.5 * (lo + hi)));
    }
    Ok(Panel {
        lo,
        hi,
        value: est.value,
        err: est.err,
    })
}

/// Global adaptive integration of `f` over `lo < hi`, starting from `initial`
/// equal panels.
fn adaptive<F>(f: &F, lo: f64, hi: f64, initial: usize, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let width = (hi - lo) / initial as f64;
    let mut heap = BinaryHeap::with_capacity(initial + spec.max_subdivisions + 1);
    for i in 0..initial {
        let a = lo + width * i as f64;
        let b = if i + 1 == initial { hi } else { lo + width * (i + 1) as f64 };
        heap.push(evaluate_panel(f, a, b)?);
    }
    let mut evaluations = initial * rule::POINTS;

    let totals = |heap: &BinaryHeap<Panel>| {
        heap.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| (v + p.value, e + p.err))
    };

    let mut bisections = 0;
    loop {
        let (value, err) = totals(&heap);
        if err <= spec.tolerance(value.norm()) {
            return Ok(QuadratureResult {
                value,
                err_estimate: err,
                evaluations,
                converged: true,
                truncation_point: 0.0,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        let exhausted = bisections >= spec.max_subdivisions;
        if exhausted || mid <= worst.lo || mid >= worst.hi {
            let reason = if exhausted {
                format!("subdivision budget {} exhausted", spec.max_subdivisions)
            } else {
                format!("panel at {} cannot be bisected further", worst.lo)
            };
            return Err(Error::NonConvergence {
                value,
                err_estimate: err,
                evaluations,
                reason,
            });
        }
        heap.push(evaluate_panel(f, worst.lo, mid)?);
        heap.push(evaluate_panel(f, mid, worst.hi)?);
        evaluations += 2 * rule::POINTS;
        bisections += 1;
    }
}

fn initial_panels(len: f64, spec: &QuadratureSpec, minimum: usize) -> Result<usize> {
    let by_period = match spec.quarter_period() {
        Some(q) => (len / q).ceil(),
        None => 1.0,
    };
    let n = by_period.max(minimum as f64);
    if n > MAX_INITIAL_PANELS as f64 {
        return Err(Error::NonConvergence {
            value: Complex64::new(0.0, 0.0),
            err_estimate: f64::INFINITY,
            evaluations: 0,
            reason: format!("interval of length {len} needs more than {MAX_INITIAL_PANELS} panels"),
        });
    }
    Ok(n as usize)
}

fn finite_with_minimum<F>(f: &F, lo: f64, hi: f64, spec: &QuadratureSpec, minimum: usize) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    spec.validate()?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain("finite integration limits required"));
    }
    if lo == hi {
        return Ok(QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            err_estimate: 0.0,
            evaluations: 0,
            converged: true,
            truncation_point: 0.0,
        });
    }
    let (a, b, sign) = if lo < hi { (lo, hi, 1.0) } else { (hi, lo, -1.0) };
    let n = initial_panels(b - a, spec, minimum)?;
    let mut res = adaptive(f, a, b, n, spec)?;
    res.value *= sign;
    Ok(res)
}

/// Oriented integral of `f` from `lo` to `hi`.
///
/// Swapping the limits negates the result exactly.
pub fn integrate_finite<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    finite_with_minimum(&f, lo, hi, spec, 1)
}

/// Doubling-window search: returns the first `T = lo + 2w` such that the
/// mass of |f| on `[lo + w, lo + 2w]` is below the tail tolerance, together
/// with that mass and the evaluations spent.
fn find_truncation<G>(mass: G, spec: &QuadratureSpec) -> Result<(f64, f64, usize)>
where
    G: Fn(f64, f64) -> f64,
{
    let mut evaluations = 0;
    let mut last = f64::INFINITY;
    for k in 0..MAX_TRUNCATION_EXPONENT {
        let w = (1u64 << k) as f64;
        // eight sub-panels per window
        let step = w / 8.0;
        let m: f64 = (0..8).map(|i| mass(w + step * i as f64, w + step * (i + 1) as f64)).sum();
        evaluations += 8 * rule::POINTS;
        if !m.is_finite() {
            return Err(non_finite(w));
        }
        last = m;
        if m <= spec.truncation_tail_tol {
            return Ok((2.0 * w, m, evaluations));
        }
    }
    Err(Error::NonConvergence {
        value: Complex64::new(0.0, 0.0),
        err_estimate: last,
        evaluations,
        reason: format!(
            "tail mass {last:e} still above {:e} at offset 2^{MAX_TRUNCATION_EXPONENT}",
            spec.truncation_tail_tol
        ),
    })
}

fn finish_truncated(mut res: QuadratureResult, spec: &QuadratureSpec, tail: f64, t: f64, search_evals: usize) -> QuadratureResult {
    res.err_estimate += tail;
    res.evaluations += search_evals;
    res.converged = res.err_estimate <= spec.tolerance(res.value.norm());
    res.truncation_point = t;
    res
}

/// ∫_lo^∞ f. The integrand needs an eventually monotone, decaying envelope.
pub fn integrate_semi_infinite<F>(f: F, lo: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !lo.is_finite() {
        return Err(Error::domain("lower limit must be finite"));
    }
    let (offset, tail, evals) = find_truncation(|a, b| rule::abs_mass(&|s| f(lo + s), a, b), spec)?;
    let t = lo + offset;
    let res = finite_with_minimum(&f, lo, t, spec, MIN_TRUNCATED_PANELS)?;
    Ok(finish_truncated(res, spec, tail, t, evals))
}

/// ∫_{-∞}^{∞} f, truncated symmetrically.
pub fn integrate_line<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    let (t, tail, evals) = find_truncation(
        |a, b| rule::abs_mass(&f, a, b) + rule::abs_mass(&f, -b, -a),
        spec,
    )?;
    let res = finite_with_minimum(&f, -t, t, spec, 2 * MIN_TRUNCATED_PANELS)?;
    Ok(finish_truncated(res, spec, tail, t, 2 * evals))
}
