//! C ABI over `rgt-core`.
//!
//! All state lives in an opaque [`RgtContext`] holding the quadrature
//! tolerances and the message of the last failure. Every function returns an
//! [`RgtStatus`]; results go through out-pointers, which are left untouched on
//! failure. A context must not be used from two threads at once; separate
//! contexts are independent.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rgt_core::gamma::{beta, gamma};
use rgt_core::transform::{self, jump_closed_form, jump_estimate, ode_residual, DEFAULT_DELTAS};
use rgt_core::{Complex64, Error, GammaParameter, MethodTag, QuadratureSpec, StripLocation, TransformRequest};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RgtStatus {
    Ok = 0,
    /// Null pointer or malformed argument (bad method code, bad tolerance).
    InvalidArgument = 1,
    /// Parameter outside the domain of the requested route.
    Domain = 2,
    /// Gamma argument at a pole.
    Pole = 3,
    NonConvergence = 4,
    /// Continuation deeper than supported.
    DepthExceeded = 5,
    ExtrapolationUnstable = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

/// Route codes accepted by `rgt_transform`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RgtMethod {
    Direct = 0,
    Closed = 1,
    Strip = 2,
    Continuation = 3,
    Auto = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgtComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for RgtComplex {
    fn from(z: Complex64) -> Self {
        RgtComplex { re: z.re, im: z.im }
    }
}

impl From<RgtComplex> for Complex64 {
    fn from(z: RgtComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgtResult {
    pub value: RgtComplex,
    pub err_estimate: f64,
    pub evaluations: u64,
    /// Route actually taken (never `Auto`), as an `RgtMethod` code.
    pub method: i32,
    /// -1 for Re(a) > 0, otherwise k with -k-1 < Re(a) < -k.
    pub strip: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgtJump {
    pub extrapolated: RgtComplex,
    pub closed_form: RgtComplex,
    pub discrepancy: f64,
    pub i_extrapolated: RgtComplex,
    pub i_closed_form: RgtComplex,
    pub i_discrepancy: f64,
}

/// Opaque handle.
pub struct RgtContext {
    spec: QuadratureSpec,
    last_error: CString,
}

fn status_of(e: &Error) -> RgtStatus {
    match e {
        Error::Pole { .. } => RgtStatus::Pole,
        Error::Domain(_) => RgtStatus::Domain,
        Error::NonConvergence { .. } => RgtStatus::NonConvergence,
        Error::DepthExceeded { .. } => RgtStatus::DepthExceeded,
        Error::ExtrapolationUnstable(_) => RgtStatus::ExtrapolationUnstable,
    }
}

fn method_from_code(code: i32) -> Option<MethodTag> {
    Some(match code {
        0 => MethodTag::Direct,
        1 => MethodTag::ClosedForm,
        2 => MethodTag::StripFormula,
        3 => MethodTag::Continuation,
        4 => MethodTag::Auto,
        _ => return None,
    })
}

fn method_code(m: MethodTag) -> i32 {
    (match m {
        MethodTag::Direct => RgtMethod::Direct,
        MethodTag::ClosedForm => RgtMethod::Closed,
        MethodTag::StripFormula => RgtMethod::Strip,
        MethodTag::Continuation => RgtMethod::Continuation,
        MethodTag::Auto => RgtMethod::Auto,
    }) as i32
}

impl RgtContext {
    fn set_error(&mut self, msg: &str) {
        // Interior NULs cannot appear in our messages, but stay safe.
        self.last_error = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    }
}

/// Runs `body` with panics caught, storing any failure message in `ctx`.
fn guarded<F>(ctx: *mut RgtContext, body: F) -> RgtStatus
where
    F: FnOnce(&mut RgtContext) -> Result<(), (RgtStatus, String)>,
{
    // SAFETY: the caller promises `ctx` is null or came from rgt_context_new.
    let Some(ctx) = (unsafe { ctx.as_mut() }) else {
        return RgtStatus::InvalidArgument;
    };
    match catch_unwind(AssertUnwindSafe(|| body(ctx))) {
        Ok(Ok(())) => {
            ctx.last_error = CString::default();
            RgtStatus::Ok
        }
        Ok(Err((status, msg))) => {
            ctx.set_error(&msg);
            status
        }
        Err(_) => {
            ctx.set_error("internal panic");
            RgtStatus::Internal
        }
    }
}

fn lift(e: Error) -> (RgtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_arg(name: &str) -> (RgtStatus, String) {
    (RgtStatus::InvalidArgument, format!("{name} is null"))
}

fn to_result(r: transform::TransformResult) -> RgtResult {
    RgtResult {
        value: r.value.into(),
        err_estimate: r.err_estimate,
        evaluations: r.evaluations as u64,
        method: method_code(r.method),
        strip: match r.strip {
            StripLocation::RightHalf => -1,
            StripLocation::Strip(k) => k as i32,
        },
    }
}

/// Creates a context with default tolerances. Free with `rgt_context_free`.
#[no_mangle]
pub extern "C" fn rgt_context_new() -> *mut RgtContext {
    Box::into_raw(Box::new(RgtContext {
        spec: QuadratureSpec::default(),
        last_error: CString::default(),
    }))
}

/// # Safety
/// `ctx` must be null or a pointer from `rgt_context_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rgt_context_free(ctx: *mut RgtContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Replaces the quadrature tolerances; the context is unchanged on error.
///
/// # Safety
/// `ctx` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rgt_context_set_tolerances(
    ctx: *mut RgtContext,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: u64,
    truncation_tail_tol: f64,
) -> RgtStatus {
    guarded(ctx, |c| {
        let spec = QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions: usize::try_from(max_subdivisions).unwrap_or(usize::MAX),
            truncation_tail_tol,
            oscillation_wavenumber: 0.0,
        };
        spec.validate().map_err(|e| (RgtStatus::InvalidArgument, e.to_string()))?;
        c.spec = spec;
        Ok(())
    })
}

/// Message for the last failed call on `ctx`; empty after a success. The
/// pointer stays valid until the next call on `ctx`.
///
/// # Safety
/// `ctx` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn rgt_last_error(ctx: *const RgtContext) -> *const c_char {
    match ctx.as_ref() {
        Some(c) => c.last_error.as_ptr(),
        None => c"null context".as_ptr(),
    }
}

/// Static description of an `RgtStatus` code.
#[no_mangle]
pub extern "C" fn rgt_status_str(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"invalid argument",
        2 => c"domain error",
        3 => c"pole",
        4 => c"no convergence",
        5 => c"continuation depth exceeded",
        6 => c"extrapolation unstable",
        7 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// J(a, ξ) by the route `method` (an `RgtMethod` code).
///
/// # Safety
/// `ctx` must be valid and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rgt_transform(
    ctx: *mut RgtContext,
    a: RgtComplex,
    xi: f64,
    method: i32,
    out: *mut RgtResult,
) -> RgtStatus {
    guarded(ctx, |c| {
        let out = out.as_mut().ok_or_else(|| null_arg("out"))?;
        let m = method_from_code(method)
            .ok_or_else(|| (RgtStatus::InvalidArgument, format!("unknown method code {method}")))?;
        let p = GammaParameter::new(a.into()).map_err(lift)?;
        let r = TransformRequest::new(p, xi, m).with_spec(c.spec).evaluate().map_err(lift)?;
        *out = to_result(r);
        Ok(())
    })
}

/// I(a, ξ) = a·J(a, ξ) by the automatic route.
///
/// # Safety
/// `ctx` must be valid and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rgt_i_transform(ctx: *mut RgtContext, a: RgtComplex, xi: f64, out: *mut RgtResult) -> RgtStatus {
    guarded(ctx, |c| {
        let out = out.as_mut().ok_or_else(|| null_arg("out"))?;
        let p = GammaParameter::new(a.into()).map_err(lift)?;
        *out = to_result(transform::i_transform(&p, xi, &c.spec).map_err(lift)?);
        Ok(())
    })
}

/// # Safety
/// `ctx` must be valid and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rgt_gamma(ctx: *mut RgtContext, z: RgtComplex, out: *mut RgtComplex) -> RgtStatus {
    guarded(ctx, |_| {
        let out = out.as_mut().ok_or_else(|| null_arg("out"))?;
        *out = gamma(z.into()).map_err(lift)?.into();
        Ok(())
    })
}

/// # Safety
/// `ctx` must be valid and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rgt_beta(ctx: *mut RgtContext, p: RgtComplex, q: RgtComplex, out: *mut RgtComplex) -> RgtStatus {
    guarded(ctx, |_| {
        let out = out.as_mut().ok_or_else(|| null_arg("out"))?;
        *out = beta(p.into(), q.into()).map_err(lift)?.into();
        Ok(())
    })
}

/// 4π cosh(pξ) Γ(2p) for purely imaginary p ≠ 0.
///
/// # Safety
/// `ctx` must be valid and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rgt_jump_closed_form(
    ctx: *mut RgtContext,
    p: RgtComplex,
    xi: f64,
    out: *mut RgtComplex,
) -> RgtStatus {
    guarded(ctx, |_| {
        let out = out.as_mut().ok_or_else(|| null_arg("out"))?;
        *out = jump_closed_form(p.into(), xi).map_err(lift)?.into();
        Ok(())
    })
}

/// Two-sided jump estimate. Pass `deltas = NULL, n_deltas = 0` for the
/// defaults.
///
/// # Safety
/// `ctx` must be valid, `deltas` readable for `n_deltas` values (or null with
/// `n_deltas == 0`), and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rgt_jump_estimate(
    ctx: *mut RgtContext,
    p: RgtComplex,
    xi: f64,
    deltas: *const f64,
    n_deltas: usize,
    out: *mut RgtJump,
) -> RgtStatus {
    guarded(ctx, |c| {
        let out = out.as_mut().ok_or_else(|| null_arg("out"))?;
        let ds: &[f64] = if n_deltas == 0 {
            &DEFAULT_DELTAS
        } else if deltas.is_null() {
            return Err(null_arg("deltas"));
        } else {
            std::slice::from_raw_parts(deltas, n_deltas)
        };
        let e = jump_estimate(p.into(), xi, ds, &c.spec).map_err(lift)?;
        *out = RgtJump {
            extrapolated: e.extrapolated.into(),
            closed_form: e.closed_form.into(),
            discrepancy: e.discrepancy,
            i_extrapolated: e.i_extrapolated.into(),
            i_closed_form: e.i_closed_form.into(),
            i_discrepancy: e.i_discrepancy,
        };
        Ok(())
    })
}

/// Relative residual of the second-order ODE linking I(a, ·) and I(a+1, ·),
/// with a central difference of step `h`.
///
/// # Safety
/// `ctx` must be valid and `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn rgt_ode_residual(
    ctx: *mut RgtContext,
    a: RgtComplex,
    xi: f64,
    h: f64,
    out: *mut f64,
) -> RgtStatus {
    guarded(ctx, |c| {
        let out = out.as_mut().ok_or_else(|| null_arg("out"))?;
        let p = GammaParameter::new(a.into()).map_err(lift)?;
        *out = ode_residual(&p, xi, h, &c.spec).map_err(lift)?;
        Ok(())
    })
}

/// Library version, static string.
#[no_mangle]
pub extern "C" fn rgt_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}
