//! The pointwise dictionary between mirror modes and charge radiation.
//!
//! An out-mode `p` and in-mode `q` correspond to frequency `ω = p + q` and
//! direction `T = cos θ = (p − q)/(p + q)`, i.e.
//! `p = ω(1+T)/2`, `q = ω(1−T)/2`, with `dp dq = (ω/2) dω dT`. Under this map
//!
//! ```text
//! |β_pq|² = (4π/ω²) [dI/dΩ(ω, T) + dI/dΩ(ω, −T)]
//! ```
//!
//! the two terms being the radiation on the two sides of the mirror.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{ln_beta_sq, ln_spectral_distribution, AngularPoint, ModePair};
use crate::trajectories::TrajectoryParams;

/// Floor on the denominator of the relative residual.
pub const RESIDUAL_FLOOR: f64 = 1e-300;

/// A frequency/direction pair together with its mode frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeAngleMap {
    pub omega: f64,
    pub cos_theta: f64,
    pub p: f64,
    pub q: f64,
}

impl ModeAngleMap {
    pub fn from_angle(omega: f64, cos_theta: f64) -> Result<Self> {
        let point = AngularPoint::new(omega, cos_theta)?;
        let (p, q) = split(point.omega, point.cos_theta);
        Ok(ModeAngleMap { omega, cos_theta, p, q })
    }

    /// `dp dq = jacobian · dω dT`
    pub fn jacobian(&self) -> f64 {
        jacobian(self.omega)
    }
}

fn split(omega: f64, t: f64) -> (f64, f64) {
    (0.5 * omega * (1.0 + t), 0.5 * omega * (1.0 - t))
}

/// `ln(e^a + e^b)`.
fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// `(ω, T) → (p, q)`. Interior directions only: at `T = ±1` one of the modes
/// has zero frequency.
pub fn modes_from_angle(omega: f64, cos_theta: f64) -> Result<ModePair> {
    let point = AngularPoint::new(omega, cos_theta)?;
    let (p, q) = split(point.omega, point.cos_theta);
    ModePair::new(p, q)
}

/// `(p, q) → (ω, T)`.
pub fn angle_from_modes(p: f64, q: f64) -> Result<AngularPoint> {
    let m = ModePair::new(p, q)?;
    let omega = m.omega();
    AngularPoint::new(omega, (m.sigma() / omega).clamp(-1.0, 1.0))
}

/// `∂(p, q)/∂(ω, T) = ω/2`.
pub fn jacobian(omega: f64) -> f64 {
    0.5 * omega
}

/// Both sides of the identity at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub omega: f64,
    pub cos_theta: f64,
    /// `|β_pq|²`
    pub mirror_side: f64,
    /// `(4π/ω²) [dI/dΩ(ω, T) + dI/dΩ(ω, −T)]`
    pub charge_side: f64,
    /// `|f(T) − f(−T)| / max(f(T), f(−T))`, checked before the parity sum is
    /// replaced by `2f(T)`.
    pub parity_defect: f64,
    pub residual: f64,
}

/// Evaluates both sides from the closed forms and returns their relative
/// difference. `T = ±1` is accepted: both sides vanish there and the residual
/// is zero.
pub fn check_identity(params: &TrajectoryParams, omega: f64, cos_theta: f64) -> Result<IdentityCheck> {
    let point = AngularPoint::new(omega, cos_theta)?;
    let mirrored = AngularPoint::new(omega, -cos_theta)?;
    let ln_f = ln_spectral_distribution(params, point)?;
    let ln_f_mirror = ln_spectral_distribution(params, mirrored)?;
    let (f, f_mirror) = (ln_f.exp(), ln_f_mirror.exp());
    let parity_defect = (f - f_mirror).abs() / f.max(f_mirror).max(RESIDUAL_FLOOR);

    if cos_theta.abs() == 1.0 {
        return Ok(IdentityCheck {
            omega,
            cos_theta,
            mirror_side: 0.0,
            charge_side: 0.0,
            parity_defect,
            residual: 0.0,
        });
    }
    let modes = modes_from_angle(omega, cos_theta)?;
    // Compared in log space so the check keeps its meaning after both sides
    // underflow.
    let ln_mirror = ln_beta_sq(params, modes)?;
    let ln_charge = (4.0 * std::f64::consts::PI / (omega * omega)).ln() + ln_add(ln_f, ln_f_mirror);
    let residual = if ln_mirror == f64::NEG_INFINITY && ln_charge == f64::NEG_INFINITY {
        0.0
    } else {
        let (hi, lo) = if ln_mirror > ln_charge {
            (ln_mirror, ln_charge)
        } else {
            (ln_charge, ln_mirror)
        };
        -(lo - hi).exp_m1()
    };
    Ok(IdentityCheck {
        omega,
        cos_theta,
        mirror_side: ln_mirror.exp(),
        charge_side: ln_charge.exp(),
        parity_defect,
        residual,
    })
}

/// Relative residual `|LHS − RHS| / max(LHS, RHS, ε)` of the identity.
///
/// Both distributions are even in `T`; that is asserted (to `1e-12`) before
/// the parity sum is used, and a violation is reported as an error rather
/// than folded into the residual.
pub fn verify_identity(params: &TrajectoryParams, omega: f64, cos_theta: f64) -> Result<f64> {
    let c = check_identity(params, omega, cos_theta)?;
    if c.parity_defect > 1e-12 {
        return Err(Error::Domain(format!(
            "distribution not even in T at omega = {omega}, T = {cos_theta}: defect {:e}",
            c.parity_defect
        )));
    }
    Ok(c.residual)
}

/// The dictionary is a statement about radiation from a charge implying
/// particle creation by a mirror. Reading it backwards needs the angle
/// convention `T = (p − q)/(p + q)`, which the mirror problem does not supply
/// by itself; [`angle_from_modes`] adopts that convention and no other.
pub fn direction_note() -> &'static str {
    "charge radiation -> mirror particle creation; the inverse map (p, q) -> (omega, T) \
     assumes T = (p - q)/(p + q)"
}
