//! Error-estimate honesty and consistency of the integrators.

use std::f64::consts::{E, PI};

use mirror_radiance::quadrature::{integrate, integrate_2d, integrate_oscillatory, Oscillator, OscillatorySpec};
use proptest::prelude::*;

type Case = (&'static str, fn(f64) -> f64, f64, f64, f64);

/// Ten smooth and three endpoint-singular integrals with known values.
const BATTERY: [Case; 13] = [
    ("exp", |x| x.exp(), 0.0, 1.0, E - 1.0),
    ("cos", |x| x.cos(), 0.0, PI / 2.0, 1.0),
    (
        "gaussian",
        |x| (-x * x).exp(),
        f64::NEG_INFINITY,
        f64::INFINITY,
        1.772_453_850_905_516,
    ),
    (
        "lorentzian",
        |x| 1.0 / (1.0 + x * x),
        f64::NEG_INFINITY,
        f64::INFINITY,
        PI,
    ),
    ("decay", |x| (-x).exp(), 0.0, f64::INFINITY, 1.0),
    ("poly", |x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, 1.5),
    (
        "peak",
        |x| 1.0 / (1e-4 + (x - 0.3).powi(2)),
        0.0,
        1.0,
        309.398_691_512_414_9,
    ),
    ("sin2", |x| x.sin().powi(2), 0.0, PI, PI / 2.0),
    ("rational", |x| 1.0 / (1.0 + x).powi(3), 0.0, f64::INFINITY, 0.5),
    ("log", |x| (1.0 + x).ln(), 0.0, 1.0, 0.386_294_361_119_890_6),
    ("sqrt", |x| 1.0 / x.sqrt(), 0.0, 1.0, 2.0),
    ("log-singular", |x| x.ln(), 0.0, 1.0, -1.0),
    ("x^-0.9", |x| x.powf(-0.9), 0.0, 1.0, 10.0),
];

#[test]
fn error_estimates_are_conservative() {
    for (name, f, a, b, exact) in BATTERY {
        for tol in [1e-6, 1e-10] {
            let r = integrate(f, a, b, tol);
            let true_err = (r.value - exact).abs();
            assert!(
                true_err <= 10.0 * r.abs_err.max(4.0 * f64::EPSILON * exact.abs()),
                "{name} at tol {tol}: error {true_err:e}, estimate {:e}",
                r.abs_err
            );
            if r.converged {
                assert!(
                    r.abs_err <= tol * r.value.abs() * 1.0001 || r.abs_err < 1e-13 * exact.abs(),
                    "{name}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn splitting_is_additive(c in -2.0f64..3.0) {
        let f = |x: f64| (-(x - 0.4).powi(2)).exp() * (3.0 * x).cos();
        let whole = integrate(f, -2.0, 3.0, 1e-12);
        let left = integrate(f, -2.0, c, 1e-12);
        let right = integrate(f, c, 3.0, 1e-12);
        let diff = (whole.value - left.value - right.value).abs();
        prop_assert!(diff <= whole.abs_err + left.abs_err + right.abs_err + 1e-15);
    }
}

#[test]
fn oscillatory_matches_plain_quadrature_when_absolutely_convergent() {
    for rate in [0.5, 1.0, 3.0] {
        let env = |s: f64| (-0.3 * s).exp() / (1.0 + s);
        for kind in [Oscillator::Sine, Oscillator::Cosine] {
            let spec = OscillatorySpec::new(env, rate, kind).unwrap();
            let osc = integrate_oscillatory(&spec, 1e-11).unwrap();
            let plain = integrate(
                |s| {
                    env(s)
                        * if kind == Oscillator::Sine {
                            (rate * s).sin()
                        } else {
                            (rate * s).cos()
                        }
                },
                0.0,
                200.0,
                1e-12,
            );
            assert!(
                (osc.value - plain.value).abs() <= 1e-8 * plain.value.abs(),
                "{rate} {kind:?}"
            );
        }
    }
}

#[test]
fn riemann_lebesgue_trend() {
    let at = |rate| {
        let spec = OscillatorySpec::new(|s: f64| s / (s * s + 1.0), rate, Oscillator::Sine).unwrap();
        integrate_oscillatory(&spec, 1e-9).unwrap().value
    };
    assert!(at(20.0).abs() < at(1.0).abs());
    // ∫ s sin(rs)/(s²+1) ds = (π/2) e^{-r}
    for r in [0.5, 1.0, 2.0] {
        assert!((at(r) - 0.5 * PI * (-r).exp()).abs() < 1e-9);
    }
}

#[test]
fn two_dimensional_semi_infinite() {
    let r = integrate_2d(
        |x, y| (-x).exp() * (1.0 - y * y),
        (0.0, f64::INFINITY),
        (-1.0, 1.0),
        1e-9,
    );
    assert!(r.converged);
    assert!((r.value - 4.0 / 3.0).abs() < 1e-9);
}
