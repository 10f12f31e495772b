//! A relativistic projectile of unit mass thrown horizontally with speed
//! `v₀` under a constant vertical force `α_y`.
//!
//! The force law `d(γv)/dt = α` is linear in the momentum `u = γv`, so
//! `u_x = γ₀v₀` is conserved and `u_y = α_y t`. With `κ = α_y/γ₀`:
//!
//! ```text
//! γ   = γ₀ √(1 + κ²t²)
//! v_x = v₀ / √(1 + κ²t²)          x = (v₀/κ) asinh(κt)
//! v_y = κt / √(1 + κ²t²)          y = (√(1 + κ²t²) − 1)/κ
//! ```
//!
//! The horizontal motion is the betaK worldline with its velocity reversed,
//! and the vertical motion is hyperbolic, `(κy + 1)² − κ²t² = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectileParams {
    pub v0: f64,
    pub alpha_y: f64,
}

impl ProjectileParams {
    pub fn new(v0: f64, alpha_y: f64) -> Result<Self> {
        if !(v0 > 0.0 && v0 < 1.0) {
            return Err(Error::InvalidParams(format!("v0 must lie in (0, 1), got {v0}")));
        }
        if !(alpha_y > 0.0) || !alpha_y.is_finite() {
            return Err(Error::InvalidParams(format!("alpha_y must be positive, got {alpha_y}")));
        }
        Ok(ProjectileParams { v0, alpha_y })
    }

    pub fn gamma0(&self) -> f64 {
        1.0 / (1.0 - self.v0 * self.v0).sqrt()
    }

    /// `κ = α_y/γ₀`
    pub fn kappa(&self) -> f64 {
        self.alpha_y / self.gamma0()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectileState {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub v_x: f64,
    pub v_y: f64,
    pub v_z: f64,
    pub gamma: f64,
}

impl ProjectileState {
    /// `(κy + 1)² − κ²t² − 1`, zero on the exact trajectory.
    pub fn hyperbola_residual(&self, kappa: f64) -> f64 {
        let a = kappa * self.y + 1.0;
        let b = kappa * self.t;
        (a - b) * (a + b) - 1.0
    }

    /// [`Self::hyperbola_residual`] divided by `(κy + 1)²`, the size of the
    /// terms that cancel. Rounding in `y` alone makes the absolute residual
    /// grow like `κ²t`.
    pub fn hyperbola_residual_rel(&self, kappa: f64) -> f64 {
        let a = kappa * self.y + 1.0;
        self.hyperbola_residual(kappa) / (a * a)
    }
}

pub fn closed_form_state(params: &ProjectileParams, t: f64) -> ProjectileState {
    let k = params.kappa();
    let s = k * t;
    let root = s.mul_add(s, 1.0).sqrt();
    ProjectileState {
        t,
        x: params.v0 / k * s.asinh(),
        // √(1+s²) − 1 without cancellation near s = 0
        y: s * s / (root + 1.0) / k,
        z: 0.0,
        v_x: params.v0 / root,
        v_y: s / root,
        v_z: 0.0,
        gamma: params.gamma0() * root,
    }
}

/// Result of [`integrate_eom`]: the state after every accepted step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub states: Vec<ProjectileState>,
    pub rejected_steps: usize,
    /// Largest `|γv_x − γ₀v₀|` seen along the run.
    pub conservation_drift: f64,
}

/// Phase-space point: position and momentum per unit mass.
type Phase = [f64; 6];

fn rhs(y: &Phase, force: &[f64; 3]) -> Phase {
    let gamma = (1.0 + y[3] * y[3] + y[4] * y[4] + y[5] * y[5]).sqrt();
    [y[3] / gamma, y[4] / gamma, y[5] / gamma, force[0], force[1], force[2]]
}

fn state_at(t: f64, y: &Phase) -> ProjectileState {
    let gamma = (1.0 + y[3] * y[3] + y[4] * y[4] + y[5] * y[5]).sqrt();
    ProjectileState {
        t,
        x: y[0],
        y: y[1],
        z: y[2],
        v_x: y[3] / gamma,
        v_y: y[4] / gamma,
        v_z: y[5] / gamma,
        gamma,
    }
}

// Dormand–Prince 5(4) tableau. The force is time independent, so the
// node offsets are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 1_000_000;

/// Integrates `d(γv)/dt = force`, `dr/dt = v` from the origin with initial
/// velocity `v_start`, adaptive Dormand–Prince 5(4) with mixed error control
/// `|err_i| ≤ step_tol · (1 + |y_i|)`.
pub fn integrate_eom_3d(v_start: [f64; 3], force: [f64; 3], t_end: f64, step_tol: f64) -> Result<Trace> {
    let speed2: f64 = v_start.iter().map(|v| v * v).sum();
    if !(speed2 < 1.0) {
        return Err(Error::InvalidParams(format!(
            "initial speed must be below 1, got {}",
            speed2.sqrt()
        )));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidParams(format!(
            "t_end must be finite and non-negative, got {t_end}"
        )));
    }
    if !(step_tol > 0.0 && step_tol < 1.0) {
        return Err(Error::InvalidParams(format!(
            "step tolerance must lie in (0, 1), got {step_tol}"
        )));
    }
    let g0 = 1.0 / (1.0 - speed2).sqrt();
    let mut y: Phase = [0.0, 0.0, 0.0, g0 * v_start[0], g0 * v_start[1], g0 * v_start[2]];
    let ux0 = y[3];
    let mut t = 0.0;
    let mut states = vec![state_at(t, &y)];
    let mut rejected = 0;
    let mut drift = 0.0f64;
    let mut h = (t_end * 1e-3).max(f64::MIN_POSITIVE);
    let mut k = [[0.0; 6]; 7];
    k[0] = rhs(&y, &force);

    while t < t_end {
        if states.len() + rejected > MAX_STEPS {
            return Err(Error::NonConvergence {
                context: "projectile integration".into(),
                value: t,
                abs_err: f64::NAN,
            });
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        for stage in 1..7 {
            let mut ys = y;
            for (i, yi) in ys.iter_mut().enumerate() {
                for j in 0..stage {
                    *yi += h * A[stage][j] * k[j][i];
                }
            }
            k[stage] = rhs(&ys, &force);
        }
        // Stage 6 was evaluated at the fifth-order solution (FSAL).
        let mut y_new = y;
        for (i, yi) in y_new.iter_mut().enumerate() {
            for j in 0..6 {
                *yi += h * A[6][j] * k[j][i];
            }
        }
        let mut err = 0.0f64;
        for i in 0..6 {
            let e: f64 = (0..7).map(|j| E[j] * k[j][i]).sum::<f64>() * h;
            let scale = step_tol * (1.0 + y[i].abs().max(y_new[i].abs()));
            err = err.max(e.abs() / scale);
        }
        if err <= 1.0 {
            t = if last { t_end } else { t + h };
            y = y_new;
            k[0] = k[6];
            drift = drift.max((y[3] - ux0).abs());
            states.push(state_at(t, &y));
        } else {
            rejected += 1;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if t < t_end && h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { t });
        }
    }
    Ok(Trace {
        states,
        rejected_steps: rejected,
        conservation_drift: drift,
    })
}

/// The planar pitcher problem: horizontal `v₀`, vertical force `α_y`.
pub fn integrate_eom(params: &ProjectileParams, t_end: f64, step_tol: f64) -> Result<Trace> {
    integrate_eom_3d([params.v0, 0.0, 0.0], [0.0, params.alpha_y, 0.0], t_end, step_tol)
}
