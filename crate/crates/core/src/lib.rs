//! Fourier transform of `t ↦ Γ(a + it)Γ(a − it)` along vertical lines.
//!
//! `J(a, ξ) = ∫ Γ(a + it)Γ(a − it) e^{−iξt} dt` is computed by four routes
//! that check one another:
//!
//! * direct quadrature of the defining integral (any admissible `a`),
//! * Ramanujan's closed form `2πΓ(2a) / (4^a cosh^{2a}(ξ/2))` for `Re(a) > 0`,
//! * a one-dimensional quadrature formula for `−1 < Re(a) < 0`, obtained by
//!   solving `(d²/dξ² − a²) I(a, ξ) = −a/(a+1) · I(a+1, ξ)` with `I = aJ`,
//! * recursive continuation of that ODE into deeper strips.
//!
//! The jump of `J` across the imaginary axis is estimated from both sides and
//! compared with `4π cosh(pξ) Γ(2p)`.

pub mod cli;
pub mod elementary;
pub mod error;
pub mod gamma;
pub mod identities;
pub mod quad;
pub mod transform;

pub use error::{Error, Result};
pub use gamma::{ComplexValue, GammaParameter, StripLocation};
pub use num_complex::Complex64;
pub use quad::{QuadratureResult, QuadratureSpec};
pub use transform::{MethodTag, TransformRequest, TransformResult};
