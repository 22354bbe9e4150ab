//! Values of J(a, ξ) frozen from an independent 25-digit evaluation of the
//! defining integral (mpmath `quad`), checked against every applicable route.

use rgt_core::transform::{direct_transform, transform};
use rgt_core::{Complex64, GammaParameter, MethodTag, QuadratureSpec};

// (Re a, Im a, ξ, Re J, Im J)
const ORACLE: [(f64, f64, f64, f64, f64); 13] = [
    (0.3, 0.0, 0.5, 6.059_726_905_522_816_8, 0.0),
    (1.5, 0.7, 2.0, 0.288_170_687_946_457_27, -0.064_660_615_303_636_865),
    (2.25, 0.0, -5.0, 0.000_922_331_890_709_403_18, 0.0),
    (-0.25, 0.0, 1.0, 12.497_033_641_216_449, 0.0),
    (-0.5, 0.0, 1.7, 7.482_517_796_560_321_9, 0.0),
    (-0.75, 0.0, 3.0, 9.085_995_406_281_025_5, 0.0),
    (-0.5, 0.4, -1.0, 3.915_692_499_743_712, 0.330_364_217_126_510_65),
    (-0.3, 0.6, 2.5, 0.413_441_965_096_002_33, 1.015_987_736_241_554_6),
    (-1.25, 0.0, 1.0, 7.696_305_281_037_096_1, 0.0),
    (-1.5, 0.0, 0.0, 3.712_501_138_416_410_2, 0.0),
    (-1.75, 0.0, -1.0, 3.792_440_097_087_615_9, 0.0),
    (-1.3, 0.2, 0.7, 3.344_313_764_980_923_1, 3.141_277_331_299_625_4),
    (-2.5, 0.0, 0.5, 0.578_774_804_449_470_53, 0.0),
];

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

#[test]
fn direct_quadrature_matches_oracle() {
    let spec = QuadratureSpec::default();
    for (re, im, xi, vr, vi) in ORACLE {
        let p = GammaParameter::new(Complex64::new(re, im)).unwrap();
        let got = direct_transform(&p, xi, &spec).unwrap().value;
        let r = rel(got, Complex64::new(vr, vi));
        assert!(r <= 1e-9, "a = {re}{im:+}i, xi = {xi}: {r:e}");
    }
}

#[test]
fn automatic_route_matches_oracle() {
    let spec = QuadratureSpec::default();
    for (re, im, xi, vr, vi) in ORACLE {
        let p = GammaParameter::new(Complex64::new(re, im)).unwrap();
        let res = transform(&p, xi, &spec).unwrap();
        let tol = match res.method {
            MethodTag::ClosedForm => 1e-12,
            MethodTag::StripFormula => 1e-9,
            _ => 1e-6,
        };
        let r = rel(res.value, Complex64::new(vr, vi));
        assert!(r <= tol, "a = {re}{im:+}i, xi = {xi} via {}: {r:e}", res.method);
    }
}

#[test]
fn partial_fraction_oracle_at_minus_three_halves() {
    // |Γ(-3/2 + it)|² = π / (cosh(πt) (9/4 + t²)(1/4 + t²)), and
    // 1/((9/4+t²)(1/4+t²)) = (1/(1/4+t²) − 1/(9/4+t²)) / 2.
    let spec = QuadratureSpec::default();
    let f = |t: f64| {
        let pf = 0.5 * (1.0 / (0.25 + t * t) - 1.0 / (2.25 + t * t));
        Complex64::new(std::f64::consts::PI / (std::f64::consts::PI * t).cosh() * pf, 0.0)
    };
    let reduced = rgt_core::quad::integrate_line(f, &spec).unwrap().value.re;
    assert!((reduced - 3.712_501_138_416_410_2).abs() < 1e-10);
}
