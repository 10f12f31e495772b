//! Special functions against independent references: series and asymptotic
//! expansions written here, and high-precision values computed offline with
//! mpmath (30 digits) and frozen below.

#![allow(clippy::excessive_precision)]

use mirror_radiance::specfun::{bessel_k, bessel_k_alt, gamma_abs_sq_imag, ComplexOrder};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

/// (re ν, im ν, x, Re K, Im K) from mpmath.besselk at 30 digits.
const REFERENCE: &[(f64, f64, f64, f64, f64)] = &[
    (0.0, 0.5, 0.1, 1.5736894873785720641, 0.0),
    (0.0, 3.0, 1.0, -0.00088614792322813929029, 0.0),
    (0.5, 4.3, 5.0, 0.00058489966958641236347, 0.00027120113078515853378),
    (0.0, 20.0, 0.1, 1.0132437403052809878e-15, 0.0),
    (0.5, 20.0, 0.1, 9.7193885258070203649e-14, -8.1715654794115391375e-14),
    (0.0, 50.0, 0.001, -2.6930648733781962929e-35, 0.0),
    (0.5, 50.0, 0.001, -2.3498603363591525746e-33, -3.6687974827420149258e-33),
    (0.0, 40.0, 40.0, 2.1191824481826080776e-28, 0.0),
    (0.5, 39.0, 40.0, 6.2016656228608466919e-28, 4.4157650230938829319e-28),
    (0.0, 12.5, 20.0, 1.1201377136820261817e-11, 0.0),
    (0.5, 0.7, 0.02, -2.8434046657026249383, 2.9680975594943415462),
    (0.0, 7.0, 3.0, -0.000016465782548147082902, 0.0),
];

#[test]
fn matches_high_precision_reference() {
    for &(a, mu, x, re, im) in REFERENCE {
        let expected = Complex64::new(re, im);
        for k in [
            bessel_k(ComplexOrder::new(a, mu), x),
            bessel_k_alt(ComplexOrder::new(a, mu), x),
        ] {
            let k = k.unwrap();
            let rel = (k.value - expected).norm() / expected.norm();
            assert!(
                rel < 1e-10,
                "nu = {a} + {mu}i, x = {x}: {} vs {expected} ({rel:e})",
                k.value
            );
            let rel_mod = (k.abs_sq - expected.norm_sqr()).abs() / expected.norm_sqr();
            assert!(rel_mod < 2e-10, "modulus at nu = {a} + {mu}i, x = {x}");
        }
    }
}

/// K₀ from the ascending series (small x) or the Hankel asymptotic series.
fn k0_series(x: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if x <= 2.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut harmonic = 0.0;
        let mut i0 = 1.0;
        let mut tail = 0.0;
        for k in 1..40 {
            term *= q / (k as f64 * k as f64);
            harmonic += 1.0 / k as f64;
            i0 += term;
            tail += term * harmonic;
        }
        -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
    } else {
        let mut sum = 1.0;
        let mut term = 1.0;
        let mut best = f64::INFINITY;
        for k in 1..60 {
            let odd = (2 * k - 1) as f64;
            term *= -(odd * odd) / (k as f64 * 8.0 * x);
            if term.abs() > best {
                break;
            }
            best = term.abs();
            sum += term;
        }
        (PI / (2.0 * x)).sqrt() * (-x).exp() * sum
    }
}

#[test]
fn real_order_zero_against_series() {
    assert!((k0_series(1.0) - 0.421_024_438_240_708_34).abs() < 1e-15);
    for &x in &[0.01, 0.1, 0.5, 1.0, 1.9, 15.0, 30.0] {
        let k = bessel_k(ComplexOrder::new(0.0, 0.0), x).unwrap().value.re;
        let s = k0_series(x);
        assert!((k - s).abs() / s < 1e-12, "x = {x}: {k} vs {s}");
    }
}

#[test]
fn half_integer_closed_form_at_two() {
    let k = bessel_k(ComplexOrder::new(0.5, 0.0), 2.0).unwrap();
    assert!((k.value.re - 0.119_937_771_968_061_51).abs() < 1e-15);
}

/// ln Γ(z) by upward recurrence to Re z ≥ 15 and the Stirling series.
fn ln_gamma_stirling(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 15.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0)))));
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

#[test]
fn gamma_modulus_against_stirling() {
    for &(x, frozen) in &[(1.0, 0.272_029_054_982_133_2), (2.0, 0.005_866_764_826_350_946)] {
        let oracle = (2.0 * ln_gamma_stirling(Complex64::new(0.0, x)).re).exp();
        assert!((oracle - frozen).abs() / frozen < 1e-13, "oracle at {x}");
        let g = gamma_abs_sq_imag(x).unwrap();
        assert!((g - frozen).abs() / frozen < 1e-14, "x = {x}");
    }
    for k in 1..50 {
        let x = 0.2 * k as f64;
        let oracle = (2.0 * ln_gamma_stirling(Complex64::new(0.0, x)).re).exp();
        let g = gamma_abs_sq_imag(x).unwrap();
        assert!((g - oracle).abs() / oracle < 1e-12, "x = {x}");
    }
}

#[test]
fn decreasing_in_argument_for_real_order() {
    for &nu in &[0.0, 0.5, 0.9] {
        let mut prev = f64::INFINITY;
        for k in 1..=60 {
            let x = 0.05 * k as f64 * k as f64 / 10.0 + 0.01;
            let v = bessel_k(ComplexOrder::new(nu, 0.0), x).unwrap().value.re;
            assert!(v < prev, "nu = {nu}, x = {x}");
            prev = v;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_path_agreement(x in 0.1f64..20.0, mu in 0.0f64..20.0, half in any::<bool>()) {
        let order = if half { ComplexOrder::half_plus_imaginary(mu) } else { ComplexOrder::imaginary(mu) };
        let a = bessel_k(order, x).unwrap();
        let b = bessel_k_alt(order, x).unwrap();
        let rel = (a.abs_sq - b.abs_sq).abs() / a.abs_sq;
        prop_assert!(rel < 1e-8, "x = {}, mu = {}: {:e}", x, mu, rel);
    }

    #[test]
    fn modulus_even_in_imaginary_part(x in 1e-3f64..50.0, mu in 0.0f64..50.0, half in any::<bool>()) {
        let re = if half { 0.5 } else { 0.0 };
        let p = bessel_k(ComplexOrder::new(re, mu), x).unwrap();
        let m = bessel_k(ComplexOrder::new(re, -mu), x).unwrap();
        prop_assert!((p.ln_abs_sq() - m.ln_abs_sq()).abs() < 1e-12);
    }

    #[test]
    fn gamma_reflection_identity(x in 0.01f64..10.0) {
        let g = gamma_abs_sq_imag(x).unwrap();
        let lhs = x * g * (PI * x).sinh();
        prop_assert!((lhs - PI).abs() / PI < 1e-12);
        prop_assert_eq!(g, gamma_abs_sq_imag(-x).unwrap());
    }
}
