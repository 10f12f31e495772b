//! Kinematics, Larmor and Feynman power, and radiated energy for the two
//! asymptotically static worldlines.
//!
//! Both trajectories are written with the leading minus sign of their usual
//! mirror-literature form:
//!
//! ```text
//! self-dual:  x(t) = -(v/κ)  ln(κ²t² + 1)      v(t) = -2vκt / (κ²t² + 1)
//! betaK:      x(t) = -(v₀/κ) asinh(κt)         v(t) = -v₀ / √(κ²t² + 1)
//! ```
//!
//! For rectilinear motion the proper acceleration is `α = γ³ dv/dt`, the
//! Larmor power is `α²/6π` and the radiation-reaction force is
//! `F = (dα/dτ)/6π = γ (dα/dt)/6π`. The Feynman power is recorded as
//! `P_F = -F·v`, which integrates to the same total energy as the Larmor
//! power for any asymptotically inertial worldline.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{Integrator, QuadratureResult, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrajectoryKind {
    SelfDual,
    BetaK,
}

impl TrajectoryKind {
    pub const ALL: [TrajectoryKind; 2] = [TrajectoryKind::SelfDual, TrajectoryKind::BetaK];

    pub fn name(self) -> &'static str {
        match self {
            TrajectoryKind::SelfDual => "self-dual",
            TrajectoryKind::BetaK => "betak",
        }
    }
}

impl std::fmt::Display for TrajectoryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TrajectoryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "self-dual" | "selfdual" | "sd" => Ok(TrajectoryKind::SelfDual),
            "betak" | "beta-k" | "bk" => Ok(TrajectoryKind::BetaK),
            other => Err(Error::InvalidParams(format!("unknown trajectory '{other}'"))),
        }
    }
}

/// Which worldline, its maximum speed and its acceleration scale.
///
/// `v_max = 0` is accepted as the static limit (no motion, no radiation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryParams {
    pub kind: TrajectoryKind,
    pub v_max: f64,
    pub kappa: f64,
}

/// Kinematic state at coordinate time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorldlineState {
    pub t: f64,
    pub x: f64,
    pub v: f64,
    pub gamma: f64,
    /// Proper acceleration, signed.
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSample {
    pub t: f64,
    pub larmor: f64,
    pub feynman: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PowerKind {
    Larmor,
    Feynman,
}

/// Total radiated energy by time integration of both powers, plus the
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBudget {
    pub e_larmor: f64,
    pub e_feynman: f64,
    pub e_closed: f64,
    pub err_larmor: f64,
    pub err_feynman: f64,
}

impl EnergyBudget {
    /// Largest pairwise relative disagreement among the three routes.
    pub fn max_rel_spread(&self) -> f64 {
        let vals = [self.e_larmor, self.e_feynman, self.e_closed];
        let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in i + 1..3 {
                worst = worst.max((vals[i] - vals[j]).abs() / scale);
            }
        }
        worst
    }
}

/// `v`, `dv/dt`, `d²v/dt²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityJet {
    pub v: f64,
    pub accel: f64,
    pub jerk: f64,
}

impl TrajectoryParams {
    pub fn new(kind: TrajectoryKind, v_max: f64, kappa: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&v_max) {
            return Err(Error::InvalidParams(format!("v_max must lie in [0, 1), got {v_max}")));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParams(format!("kappa must be positive, got {kappa}")));
        }
        Ok(TrajectoryParams { kind, v_max, kappa })
    }

    pub fn self_dual(v: f64, kappa: f64) -> Result<Self> {
        Self::new(TrajectoryKind::SelfDual, v, kappa)
    }

    pub fn beta_k(v0: f64, kappa: f64) -> Result<Self> {
        Self::new(TrajectoryKind::BetaK, v0, kappa)
    }

    /// Lorentz factor at maximum speed.
    pub fn gamma_max(&self) -> f64 {
        1.0 / (1.0 - self.v_max * self.v_max).sqrt()
    }

    pub fn position(&self, t: f64) -> f64 {
        let s = self.kappa * t;
        match self.kind {
            TrajectoryKind::SelfDual => -(self.v_max / self.kappa) * s.mul_add(s, 1.0).ln(),
            TrajectoryKind::BetaK => -(self.v_max / self.kappa) * s.asinh(),
        }
    }

    /// Velocity and its first two time derivatives, in closed form.
    pub fn velocity_jet(&self, t: f64) -> VelocityJet {
        let k = self.kappa;
        let vm = self.v_max;
        let s = k * t;
        let w = s.mul_add(s, 1.0);
        match self.kind {
            TrajectoryKind::SelfDual => VelocityJet {
                v: -2.0 * vm * s / w,
                accel: -2.0 * vm * k * (1.0 - s * s) / (w * w),
                jerk: -4.0 * vm * k * k * s * (s * s - 3.0) / (w * w * w),
            },
            TrajectoryKind::BetaK => {
                let root = w.sqrt();
                VelocityJet {
                    v: -vm / root,
                    accel: vm * k * s / (w * root),
                    jerk: vm * k * k * (1.0 - 2.0 * s * s) / (w * w * root),
                }
            }
        }
    }

    pub fn state(&self, t: f64) -> WorldlineState {
        let jet = self.velocity_jet(t);
        let gamma = 1.0 / (1.0 - jet.v * jet.v).sqrt();
        WorldlineState {
            t,
            x: self.position(t),
            v: jet.v,
            gamma,
            alpha: gamma.powi(3) * jet.accel,
        }
    }

    /// `dα/dt = 3γ⁵ v a² + γ³ j`.
    pub fn alpha_rate(&self, t: f64) -> f64 {
        let jet = self.velocity_jet(t);
        let g2 = 1.0 / (1.0 - jet.v * jet.v);
        let g3 = g2 * g2.sqrt();
        3.0 * g3 * g2 * jet.v * jet.accel * jet.accel + g3 * jet.jerk
    }

    /// Larmor power from the closed forms, arranged to stay finite for
    /// arbitrarily large `|t|`.
    pub fn larmor_power(&self, t: f64) -> f64 {
        let k = self.kappa;
        let vm = self.v_max;
        let s = k * t;
        let u = s * s;
        match self.kind {
            TrajectoryKind::SelfDual => {
                // 2κ²v²(u²−1)² / (3π[(u+1)² − 4uv²]³), top and bottom divided by (u+1)⁶.
                let up1 = u + 1.0;
                let ratio = (u - 1.0) / up1;
                let inv = 1.0 / up1;
                let den = 1.0 - 4.0 * u * vm * vm * inv * inv;
                2.0 * k * k * vm * vm * ratio * ratio * (inv * inv) / (3.0 * PI * den * den * den)
            }
            TrajectoryKind::BetaK => {
                // (κ²/6π) γ⁶ (v₀² − V²) V⁴ / v₀⁴ with V² = v₀²/(1+u).
                if vm == 0.0 {
                    return 0.0;
                }
                let w = 1.0 + u;
                let v2 = vm * vm / w;
                let g2 = 1.0 / (1.0 - v2);
                let diff = vm * vm * u / w;
                k * k / (6.0 * PI) * g2 * g2 * g2 * diff * (v2 * v2) / (vm * vm * vm * vm)
            }
        }
    }

    /// Larmor power as `α²/6π` from [`TrajectoryParams::state`].
    pub fn larmor_power_from_alpha(&self, t: f64) -> f64 {
        let a = self.state(t).alpha;
        a * a / (6.0 * PI)
    }

    /// `P_F = -F·v = -γ v (dα/dt) / 6π`.
    pub fn feynman_power(&self, t: f64) -> f64 {
        let jet = self.velocity_jet(t);
        let gamma = 1.0 / (1.0 - jet.v * jet.v).sqrt();
        -gamma * jet.v * self.alpha_rate(t) / (6.0 * PI)
    }

    /// BetaK closed form `P_F = -(α²/6π)[2 − V²(1−v₀²)/(v₀²−V²)]`, with the
    /// overall sign chosen so that `∫P_F dt = ∫P_L dt`. `None` for the
    /// self-dual trajectory, and at `t = 0` where the bracket is singular.
    pub fn feynman_power_closed(&self, t: f64) -> Option<f64> {
        if self.kind != TrajectoryKind::BetaK || t == 0.0 {
            return None;
        }
        let vm = self.v_max;
        let v = self.velocity_jet(t).v;
        let bracket = 2.0 - v * v * (1.0 - vm * vm) / (vm * vm - v * v);
        Some(-self.larmor_power(t) * bracket)
    }

    pub fn power(&self, which: PowerKind, t: f64) -> f64 {
        match which {
            PowerKind::Larmor => self.larmor_power(t),
            PowerKind::Feynman => self.feynman_power(t),
        }
    }

    pub fn power_sample(&self, t: f64) -> PowerSample {
        PowerSample {
            t,
            larmor: self.larmor_power(t),
            feynman: self.feynman_power(t),
        }
    }

    /// Closed-form total radiated energy:
    /// self-dual `(κ/24) γ v² (γ² + 3)`, betaK `(κ/48) γ₀³ v₀²`.
    pub fn total_energy_closed(&self) -> f64 {
        let g = self.gamma_max();
        let v2 = self.v_max * self.v_max;
        match self.kind {
            TrajectoryKind::SelfDual => self.kappa / 24.0 * g * v2 * (g * g + 3.0),
            TrajectoryKind::BetaK => self.kappa / 48.0 * g * g * g * v2,
        }
    }

    /// `∫ P dt` over the whole line for one of the two powers.
    pub fn energy_by_time_integral(&self, which: PowerKind, tol: f64) -> QuadratureResult {
        // Integrate in s = κt so the features sit at |s| ~ 1 for every κ.
        let k = self.kappa;
        let r = Integrator::new(Tolerance::new(tol, 1e-300))
            .with_initial_panels(8)
            .integrate(|s| self.power(which, s / k), f64::NEG_INFINITY, f64::INFINITY);
        QuadratureResult {
            value: r.value / k,
            abs_err: r.abs_err / k,
            ..r
        }
    }

    /// All three energy routes.
    pub fn total_energy_numeric(&self, tol: f64) -> Result<EnergyBudget> {
        let larmor = self
            .energy_by_time_integral(PowerKind::Larmor, tol)
            .into_result("Larmor energy")?;
        let feynman = self
            .energy_by_time_integral(PowerKind::Feynman, tol)
            .into_result("Feynman energy")?;
        Ok(EnergyBudget {
            e_larmor: larmor.value,
            e_feynman: feynman.value,
            e_closed: self.total_energy_closed(),
            err_larmor: larmor.abs_err,
            err_feynman: feynman.abs_err,
        })
    }
}
