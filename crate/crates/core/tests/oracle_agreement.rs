//! The brute-force trajectory integral against the closed forms.

use std::f64::consts::PI;

use mirror_radiance::oracle::*;
use mirror_radiance::specfun::{bessel_k, ComplexOrder};
use mirror_radiance::spectra::{self_dual_transverse_limit, spectral_distribution};
use mirror_radiance::{AngularPoint, Error, TrajectoryKind, TrajectoryParams};

fn integrand(kind: TrajectoryKind, v: f64, omega: f64, t: f64) -> RadiationIntegrand {
    RadiationIntegrand::new(
        TrajectoryParams::new(kind, v, 1.0).unwrap(),
        AngularPoint::new(omega, t).unwrap(),
    )
}

#[test]
fn self_dual_modulus_against_bessel_form() {
    // |A|² = (8v/(κ²T)) sinh(πb) |K_{1/2+ib}(ω/κ)|², b = ωvT/κ
    let (v, omega, t) = (0.95, 1.0, 0.5);
    let a = amplitude(&integrand(TrajectoryKind::SelfDual, v, omega, t), 1e-10).unwrap();
    let b = omega * v * t;
    let k = bessel_k(ComplexOrder::half_plus_imaginary(b), omega).unwrap();
    let expected = 8.0 * v / t * (PI * b).sinh() * k.abs_sq;
    assert!((a.value.norm_sqr() - expected).abs() < 1e-5 * expected);
}

#[test]
fn beta_k_raw_modulus_carries_one_sided_factor() {
    // |A|² = (4v₀²/κ²) e^{-πb} K_{ib}(ω/κ)²
    for t in [-0.7, -0.2, 0.3, 0.8] {
        let (v, omega) = (0.9, 2.0);
        let a = amplitude(&integrand(TrajectoryKind::BetaK, v, omega, t), 1e-10).unwrap();
        let b = omega * v * t;
        let k = bessel_k(ComplexOrder::imaginary(b), omega).unwrap();
        let expected = 4.0 * v * v * (-PI * b).exp() * k.abs_sq;
        assert!((a.value.norm_sqr() - expected).abs() < 1e-7 * expected, "T = {t}");
    }
}

#[test]
fn self_dual_modulus_even_in_direction() {
    for (omega, t) in [(0.5, 0.3), (2.0, 0.8), (4.0, 0.55)] {
        let p = amplitude(&integrand(TrajectoryKind::SelfDual, 0.95, omega, t), 1e-10).unwrap();
        let m = amplitude(&integrand(TrajectoryKind::SelfDual, 0.95, omega, -t), 1e-10).unwrap();
        let (a, b) = (p.value.norm_sqr(), m.value.norm_sqr());
        assert!((a - b).abs() < 1e-8 * a);
    }
}

#[test]
fn interior_grid_matches_closed_forms() {
    for kind in TrajectoryKind::ALL {
        let params = TrajectoryParams::new(kind, 0.95, 1.0).unwrap();
        for omega in [0.2, 0.7, 2.5, 6.0, 10.0] {
            for t in [-0.95, -0.4, 0.0, 0.45, 0.95] {
                let s = integrand(kind, 0.95, omega, t);
                let brute = distribution_symmetrized(&s, 1e-7).unwrap().value;
                let closed = spectral_distribution(&params, s.point).unwrap().value;
                assert!(
                    (brute - closed).abs() < 1e-5 * closed,
                    "{kind} {omega} {t}: {brute} vs {closed}"
                );
            }
        }
    }
}

#[test]
fn self_dual_perpendicular_limit() {
    for omega in [0.5, 1.0, 3.0] {
        let f = distribution_bruteforce(&integrand(TrajectoryKind::SelfDual, 0.95, omega, 0.0), 1e-10)
            .unwrap()
            .value;
        let limit = self_dual_transverse_limit(0.95, 1.0, omega);
        assert!((f - limit).abs() < 1e-5 * limit);
    }
}

#[test]
fn symmetrization_is_a_no_op_for_self_dual() {
    let s = integrand(TrajectoryKind::SelfDual, 0.9, 1.5, 0.6);
    let raw = distribution_bruteforce(&s, 1e-10).unwrap().value;
    let sym = distribution_symmetrized(&s, 1e-10).unwrap().value;
    assert!((raw - sym).abs() < 1e-8 * raw);
}

#[test]
fn bruteforce_integrates_to_energy() {
    // Coarse tolerance. Beyond ω = 20 the integrand is far below 1e-3 of the
    // total, and there |A| is too small for a relative target on the
    // oscillatory sums to be met in double precision.
    let params = TrajectoryParams::beta_k(0.5, 1.0).unwrap();
    let r = mirror_radiance::quadrature::integrate_2d(
        |omega, t| {
            if omega <= 0.0 || !omega.is_finite() {
                return 0.0;
            }
            let s = RadiationIntegrand::new(params, AngularPoint::new(omega, t).unwrap());
            match distribution_symmetrized(&s, 1e-5) {
                Ok(f) => f.value,
                // A transform this small contributes below 1e-14 to dI/dΩ.
                Err(Error::NonConvergence { value, abs_err, .. }) if value.abs() < 1e-8 && abs_err < 1e-12 => 0.0,
                Err(e) => panic!("omega = {omega}, T = {t}: {e}"),
            }
        },
        (0.0, 20.0),
        (0.0, 1.0),
        1e-4,
    );
    let e = 4.0 * PI * r.value;
    let closed = params.total_energy_closed();
    assert!((e - closed).abs() < 1e-3 * closed, "{e} vs {closed}");
}
