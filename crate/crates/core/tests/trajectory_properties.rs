//! Kinematic and energetic invariants of both worldlines.

use mirror_radiance::trajectories::PowerKind;
use mirror_radiance::{TrajectoryKind, TrajectoryParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = TrajectoryParams> {
    (
        prop_oneof![Just(TrajectoryKind::SelfDual), Just(TrajectoryKind::BetaK)],
        0.01f64..0.99,
        0.1f64..10.0,
    )
        .prop_map(|(kind, v, k)| TrajectoryParams::new(kind, v, k).unwrap())
}

proptest! {
    #[test]
    fn parity_of_position_and_power(p in params(), t in -50.0f64..50.0) {
        let (a, b) = (p.position(t), p.position(-t));
        match p.kind {
            TrajectoryKind::SelfDual => prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-300)),
            TrajectoryKind::BetaK => prop_assert!((a + b).abs() <= 1e-14 * a.abs().max(1e-300)),
        }
        let (la, lb) = (p.larmor_power(t), p.larmor_power(-t));
        prop_assert!((la - lb).abs() <= 1e-14 * la.max(1e-300));
        prop_assert!(la >= 0.0);
    }

    #[test]
    fn speed_bounded_and_gamma_consistent(p in params(), t in -1e3f64..1e3) {
        let s = p.state(t);
        prop_assert!(s.v.abs() <= p.v_max * (1.0 + 1e-15));
        let g = 1.0 / (1.0 - s.v * s.v).sqrt();
        prop_assert!((s.gamma - g).abs() <= 1e-14 * g);
    }

    #[test]
    fn proper_acceleration_matches_finite_differences(p in params(), s in 0.05f64..5.0) {
        let t = s / p.kappa;
        // Skip the zeros of dv/dt, where a relative comparison is meaningless.
        prop_assume!(p.kind == TrajectoryKind::BetaK || (s - 1.0).abs() > 0.05);
        let h = 1e-4 * t.abs().max(1.0 / p.kappa);
        let gv = |t: f64| { let st = p.state(t); st.gamma * st.v };
        // Fourth-order central difference of γv.
        let fd = (-gv(t + 2.0 * h) + 8.0 * gv(t + h) - 8.0 * gv(t - h) + gv(t - 2.0 * h)) / (12.0 * h);
        let alpha = p.state(t).alpha;
        prop_assert!((fd - alpha).abs() <= 1e-6 * alpha.abs(), "fd {} vs {}", fd, alpha);
    }

    #[test]
    fn energy_scales_with_kappa(p in params()) {
        let doubled = TrajectoryParams { kappa: 2.0 * p.kappa, ..p };
        let ratio = doubled.total_energy_closed() / p.total_energy_closed();
        prop_assert!((ratio - 2.0).abs() < 1e-14);
    }
}

#[test]
fn peak_speed_only_where_expected() {
    let sd = TrajectoryParams::self_dual(0.9, 2.0).unwrap();
    for t in [-0.5, 0.5] {
        assert!((sd.state(t).v.abs() - 0.9).abs() < 1e-15);
    }
    for t in [-3.0, -0.51, 0.0, 0.3, 0.49, 7.0] {
        assert!(sd.state(t).v.abs() < 0.9);
    }
    let bk = TrajectoryParams::beta_k(0.9, 2.0).unwrap();
    assert_eq!(bk.state(0.0).v, -0.9);
    assert!((bk.state(0.0).gamma - 2.294_157_338_705_618).abs() < 1e-12);
    assert!(bk.state(1e-3).v.abs() < 0.9);
}

#[test]
fn self_dual_larmor_at_origin() {
    let sd = TrajectoryParams::self_dual(0.9, 1.0).unwrap();
    let expected = 2.0 * 0.81 / (3.0 * std::f64::consts::PI);
    assert!((sd.larmor_power(0.0) - expected).abs() < 1e-15);
    assert!((sd.larmor_power_from_alpha(0.0) - expected).abs() < 1e-15);
}

#[test]
fn beta_k_feynman_zero_on_predicted_speed() {
    // The bracket 2 − V²(1−v₀²)/(v₀²−V²) vanishes at V² = 2v₀²/(3−v₀²).
    for v0 in [0.3, 0.6, 0.9] {
        let bk = TrajectoryParams::beta_k(v0, 1.0).unwrap();
        let v2 = 2.0 * v0 * v0 / (3.0 - v0 * v0);
        // V² = v₀²/(1+κ²t²)
        let t_zero = (v0 * v0 / v2 - 1.0).sqrt();
        // Root of the implementation by bisection around the prediction.
        let (mut lo, mut hi) = (0.5 * t_zero, 2.0 * t_zero);
        let f = |t: f64| bk.feynman_power(t);
        assert!(f(lo) * f(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid
            } else {
                lo = mid
            }
        }
        assert!((lo - t_zero).abs() < 1e-12, "v0 = {v0}: {lo} vs {t_zero}");
    }
}

#[test]
fn energy_increases_with_speed() {
    for kind in TrajectoryKind::ALL {
        let mut last = 0.0;
        for k in 1..=99 {
            let e = TrajectoryParams::new(kind, 0.01 * k as f64, 1.0)
                .unwrap()
                .total_energy_closed();
            assert!(e > last);
            last = e;
        }
    }
}

#[test]
fn numeric_energy_examples() {
    let sd = TrajectoryParams::self_dual(0.9, 1.0).unwrap();
    let b = sd.total_energy_numeric(1e-10).unwrap();
    assert!((b.e_closed - 0.639_798_220_971_915_5).abs() < 1e-12);
    assert!(b.max_rel_spread() < 1e-6);
    let bk = TrajectoryParams::beta_k(0.5, 1.0).unwrap();
    assert!(bk.total_energy_numeric(1e-10).unwrap().max_rel_spread() < 1e-6);
    let q = sd.energy_by_time_integral(PowerKind::Larmor, 1e-10);
    assert!(q.converged && (q.value - b.e_closed).abs() <= 10.0 * q.abs_err.max(1e-12 * b.e_closed));
}
