//! Brute-force spectral distribution straight from the trajectory.
//!
//! For rectilinear motion along `x` the radiated energy per unit frequency
//! and solid angle is
//!
//! ```text
//! dI/dΩ = ω²/(16π³) · sin²θ · |A|²,     A = ∫dt ẋ(t) exp(iω(t − x(t) cos θ))
//! ```
//!
//! With `s = κt`, `r = ω/κ` and `b = ωvT/κ` the phase factor
//! `exp(-iωT x(t))` becomes a pure power `(1+s²)^{ib}` for the self-dual
//! worldline and `exp(ib asinh s)` for betaK. Parity in `s` folds each
//! integral onto `[0, ∞)`:
//!
//! ```text
//! self-dual  A = -(4iv/κ)  ∫₀^∞ s (1+s²)^{-1+ib} sin(rs) ds
//! betaK      A = -(2v₀/κ)  ∫₀^∞ cos(rs + b asinh s) / √(1+s²) ds
//! ```
//!
//! Each is split into two real sine/cosine transforms with slowly decaying
//! envelopes and handed to the half-period oscillatory integrator. No Bessel function is
//! involved anywhere on this path.
//!
//! The betaK amplitude is not even in `T`: `|A(T)|²` carries a factor
//! `e^{-πb}` where the closed form has `cosh(πb)`. The closed form is the
//! average over the two sides of the mirror, see
//! [`distribution_symmetrized`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_oscillatory_with, Oscillator, OscillatorySpec, QuadratureResult, Tolerance, DEFAULT_MAX_EVALS,
};
use crate::spectra::{AngularPoint, SpectralDensity};
use crate::trajectories::{TrajectoryKind, TrajectoryParams};

/// The radiation integral for one worldline, seen from one direction at one
/// frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiationIntegrand {
    pub trajectory: TrajectoryParams,
    pub point: AngularPoint,
}

impl RadiationIntegrand {
    pub fn new(trajectory: TrajectoryParams, point: AngularPoint) -> Self {
        RadiationIntegrand { trajectory, point }
    }

    fn mirrored(&self) -> Self {
        RadiationIntegrand {
            point: AngularPoint {
                cos_theta: -self.point.cos_theta,
                ..self.point
            },
            ..*self
        }
    }
}

/// Budget for the first, relative-tolerance pass over each transform.
const FIRST_PASS_EVALS: usize = 50_000;

/// The two real transforms that make up `A`, computed so that their combined
/// error is below `tol·|A|`. A transform much smaller than the other cannot
/// reach `tol` relative to itself; it is redone with an absolute target set
/// by the first pass.
fn transform_pair<F, G>(
    first: OscillatorySpec<F>,
    second: OscillatorySpec<G>,
    tol: f64,
) -> Result<[QuadratureResult; 2]>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let relative = Tolerance::relative(tol);
    let mut a = integrate_oscillatory_with(&first, relative, FIRST_PASS_EVALS)?;
    let mut b = integrate_oscillatory_with(&second, relative, FIRST_PASS_EVALS)?;
    if !(a.converged && b.converged) {
        let target = Tolerance::new(tol, 0.25 * tol * a.value.abs().max(b.value.abs()));
        if !a.converged {
            a = integrate_oscillatory_with(&first, target, DEFAULT_MAX_EVALS)?;
        }
        if !b.converged {
            b = integrate_oscillatory_with(&second, target, DEFAULT_MAX_EVALS)?;
        }
    }
    let evals = a.evals + b.evals;
    for r in [&a, &b] {
        if !r.converged {
            return Err(Error::NonConvergence {
                context: format!("radiation amplitude transform ({evals} evaluations)"),
                value: r.value,
                abs_err: r.abs_err,
            });
        }
    }
    Ok([a, b])
}

/// The complex amplitude `A`. `abs_err` bounds `|A − value|`.
pub fn amplitude(spec: &RadiationIntegrand, tol: f64) -> Result<QuadratureResult<Complex64>> {
    let TrajectoryParams { kind, v_max: v, kappa } = spec.trajectory;
    let r = spec.point.omega / kappa;
    let b = r * v * spec.point.cos_theta;
    if v == 0.0 {
        return Ok(QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
            evals: 0,
            converged: true,
        });
    }
    let (value, abs_err, evals) = match kind {
        TrajectoryKind::SelfDual => {
            let env = move |f: fn(f64) -> f64| {
                move |s: f64| {
                    let w = s.mul_add(s, 1.0);
                    s * f(b * w.ln()) / w
                }
            };
            let [ic, is] = transform_pair(
                OscillatorySpec::new(env(f64::cos), r, Oscillator::Sine)?,
                OscillatorySpec::new(env(f64::sin), r, Oscillator::Sine)?,
                tol,
            )?;
            // -(4iv/κ)(Ic + i·Is)
            let scale = 4.0 * v / kappa;
            (
                Complex64::new(scale * is.value, -scale * ic.value),
                scale * (ic.abs_err + is.abs_err),
                ic.evals + is.evals,
            )
        }
        TrajectoryKind::BetaK => {
            let env = move |f: fn(f64) -> f64| move |s: f64| f(b * s.asinh()) / s.mul_add(s, 1.0).sqrt();
            let [cc, ss] = transform_pair(
                OscillatorySpec::new(env(f64::cos), r, Oscillator::Cosine)?,
                OscillatorySpec::new(env(f64::sin), r, Oscillator::Sine)?,
                tol,
            )?;
            let scale = 2.0 * v / kappa;
            (
                Complex64::new(-scale * (cc.value - ss.value), 0.0),
                scale * (cc.abs_err + ss.abs_err),
                cc.evals + ss.evals,
            )
        }
    };
    Ok(QuadratureResult {
        value,
        abs_err,
        evals,
        converged: true,
    })
}

/// `dI/dΩ = ω²/(16π³) (1 − T²) |A|²` for the single worldline.
pub fn distribution_bruteforce(spec: &RadiationIntegrand, tol: f64) -> Result<SpectralDensity> {
    let a = amplitude(spec, tol)?;
    let t = spec.point.cos_theta;
    let omega = spec.point.omega;
    Ok(SpectralDensity {
        value: omega * omega / (16.0 * PI.powi(3)) * (1.0 - t) * (1.0 + t) * a.value.norm_sqr(),
    })
}

/// Mean of the brute-force distribution at `T` and `−T`: the radiation
/// averaged over both sides of the mirror, which is what the closed forms
/// describe.
pub fn distribution_symmetrized(spec: &RadiationIntegrand, tol: f64) -> Result<SpectralDensity> {
    let here = distribution_bruteforce(spec, tol)?.value;
    let there = distribution_bruteforce(&spec.mirrored(), tol)?.value;
    Ok(SpectralDensity {
        value: 0.5 * (here + there),
    })
}
