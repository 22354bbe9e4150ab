//! Complex gamma and beta functions and the classical identities built on them.
//!
//! Γ is evaluated with a 9-term Lanczos sum (g = 7) for `Re(z) >= 1/2` and the
//! functional relation Γ(z) = Γ(z + n) / (z (z + 1) ... (z + n - 1)) to the left
//! of that line. The sum is accumulated in log space so that points far up a
//! vertical line underflow cleanly to zero instead of producing NaN.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The universal numeric currency: a pair of dimensionless reals.
pub type ComplexValue = Complex64;

/// Inputs closer than this to an excluded point (a pole of Γ, or a line
/// `Re(a) = -n`) are rejected rather than evaluated.
pub const EXCLUSION_MARGIN: f64 = 1e-9;

const LANCZOS_G: f64 = 7.0;

// Godfrey's coefficients for g = 7, n = 9.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn near_pole(z: Complex64) -> bool {
    if z.re > 0.5 {
        return false;
    }
    let n = z.re.round();
    n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() < EXCLUSION_MARGIN
}

/// ln Γ(z) for `Re(z) >= 1/2` (principal branch of the Lanczos form, not the
/// analytically continued log-gamma).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut sum = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (zm + k as f64);
    }
    let t = zm + (LANCZOS_G + 0.5);
    (zm + 0.5) * t.ln() - t + sum.ln() + LN_SQRT_2PI
}

/// Γ(z) for complex `z`.
///
/// Relative error is below 1e-13 for `|z| <= 50`. Satisfies
/// Γ(conj z) = conj Γ(z) bit for bit.
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("gamma argument {z} is not finite")));
    }
    if near_pole(z) {
        return Err(Error::Pole { z });
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z).exp());
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let mut denom = Complex64::new(1.0, 0.0);
    for k in 0..shift {
        denom *= z + k as f64;
    }
    let shifted = ln_gamma_right(z + shift as f64).exp();
    Ok(shifted / denom)
}

/// Γ(a + it)·Γ(a − it), the integrand core on a vertical line. Equals
/// |Γ(a + it)|² when `a` is real.
pub fn vertical_product(a: ComplexValue, t: f64) -> Result<ComplexValue> {
    let it = Complex64::new(0.0, t);
    Ok(gamma(a + it)? * gamma(a - it)?)
}

/// B(p, q) = Γ(p)Γ(q)/Γ(p + q) for `Re(p), Re(q) > 0`.
pub fn beta(p: ComplexValue, q: ComplexValue) -> Result<ComplexValue> {
    if p.re <= 0.0 || q.re <= 0.0 {
        return Err(Error::domain(format!(
            "beta requires positive real parts, got p = {p}, q = {q}"
        )));
    }
    Ok(gamma(p)? * gamma(q)? / gamma(p + q)?)
}

/// Φ(a) = √π Γ(a) Γ(a + 1/2).
pub fn phi(a: ComplexValue) -> Result<ComplexValue> {
    Ok(PI.sqrt() * gamma(a)? * gamma(a + 0.5)?)
}

/// Relative residual of the Legendre duplication formula
/// √π Γ(2a) = 2^(2a−1) Γ(a) Γ(a + 1/2).
pub fn duplication_check(a: ComplexValue) -> Result<f64> {
    let lhs = PI.sqrt() * gamma(2.0 * a)?;
    let rhs = ((2.0 * a - 1.0) * std::f64::consts::LN_2).exp() * gamma(a)? * gamma(a + 0.5)?;
    Ok((lhs - rhs).norm() / lhs.norm())
}

/// Which representation of the transform applies to a parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StripLocation {
    /// `Re(a) > 0`.
    RightHalf,
    /// `-k-1 < Re(a) < -k`.
    Strip(usize),
}

impl fmt::Display for StripLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StripLocation::RightHalf => write!(f, "right-half"),
            StripLocation::Strip(k) => write!(f, "strip-{k}"),
        }
    }
}

/// A validated transform parameter `a`, off every excluded line `Re(a) = -n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParameter {
    a: ComplexValue,
    strip: StripLocation,
}

impl GammaParameter {
    pub fn new(a: ComplexValue) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::domain(format!("parameter {a} is not finite")));
        }
        if a.re > EXCLUSION_MARGIN {
            return Ok(GammaParameter {
                a,
                strip: StripLocation::RightHalf,
            });
        }
        let nearest = a.re.round();
        if (a.re - nearest).abs() <= EXCLUSION_MARGIN {
            return Err(Error::domain(format!(
                "Re(a) = {} lies on the excluded line Re(a) = {}",
                a.re, nearest
            )));
        }
        let k = (-a.re).floor() as usize;
        Ok(GammaParameter {
            a,
            strip: StripLocation::Strip(k),
        })
    }

    pub fn real(a: f64) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0))
    }

    pub fn value(&self) -> ComplexValue {
        self.a
    }

    pub fn strip(&self) -> StripLocation {
        self.strip
    }

    /// The parameter shifted by one, which lies one strip to the right.
    pub fn shifted(&self) -> Result<Self> {
        Self::new(self.a + 1.0)
    }
}
