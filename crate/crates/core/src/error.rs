use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Argument lies within the exclusion margin of a nonpositive integer.
    #[error("pole: {z} is within the exclusion margin of a nonpositive integer")]
    Pole { z: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "no convergence: estimate {value} with error {err_estimate:e} after {evaluations} evaluations ({reason})"
    )]
    NonConvergence {
        value: Complex64,
        err_estimate: f64,
        evaluations: usize,
        reason: String,
    },

    #[error("continuation depth {depth} exceeds the supported maximum {max}")]
    DepthExceeded { depth: usize, max: usize },

    #[error("extrapolation unstable: {0}")]
    ExtrapolationUnstable(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
