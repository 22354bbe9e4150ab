//! Every route to `J(a, ξ)` and `I(a, ξ) = a·J(a, ξ)`, plus dispatch.

mod continuation;
mod jump;
mod ode;
mod ramanujan;
mod strip;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{ComplexValue, GammaParameter, StripLocation};
use crate::quad::QuadratureSpec;

pub use continuation::{continue_to_strip, Profile, MAX_CONTINUATION_DEPTH, PROFILE_SPACING};
pub use jump::{jump_closed_form, jump_estimate, JumpEstimate, DEFAULT_DELTAS};
pub use ode::{ode_residual, DEFAULT_FD_STEP};
pub use ramanujan::{closed_form, direct_transform, regularized_transform, sech_form};
pub use strip::{boundary_constants, strip_forcing, strip_transform, vop_solution, BoundaryConstants};

/// Relative accuracy floor of closed-form evaluations built from a handful of
/// gamma calls.
pub const GAMMA_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodTag {
    Direct,
    #[serde(rename = "closed")]
    ClosedForm,
    #[serde(rename = "strip")]
    StripFormula,
    Continuation,
    Auto,
}

impl MethodTag {
    pub const ALL: [MethodTag; 5] = [
        MethodTag::Direct,
        MethodTag::ClosedForm,
        MethodTag::StripFormula,
        MethodTag::Continuation,
        MethodTag::Auto,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MethodTag::Direct => "direct",
            MethodTag::ClosedForm => "closed",
            MethodTag::StripFormula => "strip",
            MethodTag::Continuation => "continuation",
            MethodTag::Auto => "auto",
        }
    }

    /// The concrete route `Auto` picks for a strip.
    pub fn for_strip(strip: StripLocation) -> MethodTag {
        match strip {
            StripLocation::RightHalf => MethodTag::ClosedForm,
            StripLocation::Strip(0) => MethodTag::StripFormula,
            StripLocation::Strip(_) => MethodTag::Continuation,
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct" => Ok(MethodTag::Direct),
            "closed" | "closed-form" | "closedform" => Ok(MethodTag::ClosedForm),
            "strip" | "strip-formula" => Ok(MethodTag::StripFormula),
            "continuation" | "continue" => Ok(MethodTag::Continuation),
            "auto" => Ok(MethodTag::Auto),
            other => Err(Error::domain(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformRequest {
    pub a: GammaParameter,
    pub xi: f64,
    pub method: MethodTag,
    pub spec: QuadratureSpec,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub evaluations: usize,
    /// The route actually taken (never `Auto`).
    pub method: MethodTag,
    pub strip: StripLocation,
}

impl TransformResult {
    /// Multiplies the value (and its error) by `factor`.
    pub(crate) fn scaled(mut self, factor: ComplexValue) -> Self {
        self.value *= factor;
        self.err_estimate *= factor.norm();
        self
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if xi.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("frequency {xi} is not finite")))
    }
}

impl TransformRequest {
    pub fn new(a: GammaParameter, xi: f64, method: MethodTag) -> Self {
        TransformRequest {
            a,
            xi,
            method,
            spec: QuadratureSpec::default(),
        }
    }

    pub fn with_spec(mut self, spec: QuadratureSpec) -> Self {
        self.spec = spec;
        self
    }

    /// Evaluates `J(a, ξ)` with the requested route, rejecting routes that do
    /// not apply to the parameter's strip.
    pub fn evaluate(&self) -> Result<TransformResult> {
        check_xi(self.xi)?;
        let strip = self.a.strip();
        let method = match self.method {
            MethodTag::Auto => MethodTag::for_strip(strip),
            m => m,
        };
        match method {
            MethodTag::Direct => direct_transform(&self.a, self.xi, &self.spec),
            MethodTag::ClosedForm => closed_form(&self.a, self.xi),
            MethodTag::StripFormula => strip_transform(&self.a, self.xi, &self.spec),
            MethodTag::Continuation => continue_to_strip(&self.a, self.xi, &self.spec),
            MethodTag::Auto => unreachable!("auto resolved above"),
        }
    }
}

/// `J(a, ξ)` by the route matching the strip of `a`.
pub fn transform(a: &GammaParameter, xi: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    TransformRequest::new(*a, xi, MethodTag::Auto).with_spec(*spec).evaluate()
}

/// `I(a, ξ) = a·J(a, ξ)`, with `J` from the automatic route.
pub fn i_transform(a: &GammaParameter, xi: f64, spec: &QuadratureSpec) -> Result<TransformResult> {
    Ok(transform(a, xi, spec)?.scaled(a.value()))
}
