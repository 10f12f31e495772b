//! Bogolyubov coefficients, particle spectra and the closed-form angular
//! spectral distributions, together with their integrals.
//!
//! With `σ = p − q`, `ω = p + q` and `r = ω/κ`:
//!
//! ```text
//! self-dual  |β_pq|² = 16vpq/(π²κ²σω) · sinh(πvσ/κ) · |K_{1/2+ivσ/κ}(r)|²
//! betaK      |β_pq|² = 8v₀²pq/(π²κ²ω²) · cosh(πv₀σ/κ) · |K_{iv₀σ/κ}(r)|²
//!
//! self-dual  dI/dΩ = vω²/(κ²π³) · (1−T²)/(2T) · sinh(πvTω/κ) · |K_{1/2+ivTω/κ}(r)|²
//! betaK      dI/dΩ = v₀²ω²/(4κ²π³) · (1−T²) · cosh(πv₀Tω/κ) · |K_{iv₀Tω/κ}(r)|²
//! ```
//!
//! Everything is assembled in log form: `sinh` overflows long before `|K|²`
//! underflows. Integrals over frequencies run to infinity. The distributions
//! decay like `exp(-2r[√(1−u²) + u·asin u − πu/2])` with `u = v|T|`, which
//! becomes very slow as `v|T| → 1`, so no finite cutoff is safe.

use std::f64::consts::PI;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_2d, Integrator, QuadratureResult, Tolerance};
use crate::specfun::{bessel_k, ln_cosh, ln_sinh, ComplexOrder};
use crate::trajectories::{TrajectoryKind, TrajectoryParams};

/// Below this the `sinh(y)/y` factor is replaced by its limit 1.
const REMOVABLE_EPS: f64 = 1e-8;

/// Out-mode frequency `p` and in-mode frequency `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModePair {
    pub p: f64,
    pub q: f64,
}

impl ModePair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && q > 0.0) || !p.is_finite() || !q.is_finite() {
            return Err(Error::Domain(format!(
                "mode frequencies must be positive, got p = {p}, q = {q}"
            )));
        }
        Ok(ModePair { p, q })
    }

    pub fn omega(&self) -> f64 {
        self.p + self.q
    }

    pub fn sigma(&self) -> f64 {
        self.p - self.q
    }
}

/// Frequency `ω` and direction cosine `T = cos θ` relative to the line of
/// motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularPoint {
    pub omega: f64,
    pub cos_theta: f64,
}

impl AngularPoint {
    pub fn new(omega: f64, cos_theta: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!("frequency must be positive, got {omega}")));
        }
        if !(-1.0..=1.0).contains(&cos_theta) {
            return Err(Error::Domain(format!(
                "direction cosine must lie in [-1, 1], got {cos_theta}"
            )));
        }
        Ok(AngularPoint { omega, cos_theta })
    }
}

/// Radiated energy per unit frequency per unit solid angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralDensity {
    pub value: f64,
}

/// `ln(sinh(y)/y)`, even in `y`.
fn ln_sinhc(y: f64) -> f64 {
    let y = y.abs();
    if y < REMOVABLE_EPS {
        0.0
    } else if y < 0.5 {
        (y.sinh() / y).ln()
    } else {
        ln_sinh(y) - y.ln()
    }
}

/// Exponent `g(u) = √(1−u²) + u asin u − πu/2` of the high-frequency decay
/// `exp(-2r g(v|T|))`. Decreasing on `[0, 1]`.
fn decay_rate(u: f64) -> f64 {
    let u = u.abs().min(1.0);
    (1.0 - u * u).sqrt() + u * u.asin() - 0.5 * PI * u
}

/// `2r g` beyond which every quantity here is below `e^{-1000}` relative to
/// its polynomial prefactor.
const NEGLIGIBLE_EXPONENT: f64 = 1000.0;

/// Bessel order and its `sinh`/`cosh` companion for the given trajectory at
/// reduced frequency-difference `mu = v·σ/κ`.
fn ln_kernel(kind: TrajectoryKind, mu: f64, r: f64) -> Result<f64> {
    let k = match kind {
        TrajectoryKind::SelfDual => bessel_k(ComplexOrder::half_plus_imaginary(mu), r)?,
        TrajectoryKind::BetaK => bessel_k(ComplexOrder::imaginary(mu), r)?,
    };
    Ok(k.ln_abs_sq())
}

/// `ln |β_pq|²`; `-∞` when the coefficient vanishes.
pub fn ln_beta_sq(params: &TrajectoryParams, modes: ModePair) -> Result<f64> {
    let (v, k) = (params.v_max, params.kappa);
    if v == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let omega = modes.omega();
    let sigma = modes.sigma();
    let r = omega / k;
    if 2.0 * r * decay_rate(v * sigma / omega) > NEGLIGIBLE_EXPONENT {
        return Ok(f64::NEG_INFINITY);
    }
    let mu = v * sigma / k;
    let y = PI * mu;
    let ln_pq = modes.p.ln() + modes.q.ln();
    let ln_k2 = ln_kernel(params.kind, mu, r)?;
    Ok(match params.kind {
        // sinh(πvσ/κ)/σ = (πv/κ) · sinh(y)/y
        TrajectoryKind::SelfDual => {
            (16.0 * v / (PI * PI * k * k)).ln() + ln_pq - omega.ln() + (PI * v / k).ln() + ln_sinhc(y) + ln_k2
        }
        TrajectoryKind::BetaK => (8.0 * v * v / (PI * PI * k * k)).ln() + ln_pq - 2.0 * omega.ln() + ln_cosh(y) + ln_k2,
    })
}

/// `|β_pq|²`, symmetric under `p ↔ q`.
pub fn beta_sq(params: &TrajectoryParams, modes: ModePair) -> Result<f64> {
    Ok(ln_beta_sq(params, modes)?.exp())
}

/// `ln dI/dΩ`; `-∞` at `T = ±1` and wherever the density vanishes.
pub fn ln_spectral_distribution(params: &TrajectoryParams, point: AngularPoint) -> Result<f64> {
    let (v, k) = (params.v_max, params.kappa);
    let (omega, t) = (point.omega, point.cos_theta);
    let transverse = (1.0 - t) * (1.0 + t);
    if v == 0.0 || transverse == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let r = omega / k;
    if 2.0 * r * decay_rate(v * t) > NEGLIGIBLE_EXPONENT {
        return Ok(f64::NEG_INFINITY);
    }
    let mu = v * t * r;
    let y = PI * mu;
    let ln_k2 = ln_kernel(params.kind, mu, r)?;
    Ok(match params.kind {
        // sinh(πvTω/κ)/(2T) = (πvω/2κ) · sinh(y)/y
        TrajectoryKind::SelfDual => {
            (v * omega * omega / (k * k * PI.powi(3))).ln()
                + transverse.ln()
                + (PI * v * omega / (2.0 * k)).ln()
                + ln_sinhc(y)
                + ln_k2
        }
        TrajectoryKind::BetaK => {
            (v * v * omega * omega / (4.0 * k * k * PI.powi(3))).ln() + transverse.ln() + ln_cosh(y) + ln_k2
        }
    })
}

/// Closed-form `dI/dΩ(ω, T)`. Even in `T` and exactly zero at `T = ±1`.
pub fn spectral_distribution(params: &TrajectoryParams, point: AngularPoint) -> Result<SpectralDensity> {
    Ok(SpectralDensity {
        value: ln_spectral_distribution(params, point)?.exp(),
    })
}

/// Perpendicular (`T = 0`) value of the self-dual distribution,
/// `v²ω²/(4πκ²) e^{-2ω/κ}`.
pub fn self_dual_transverse_limit(v: f64, kappa: f64, omega: f64) -> f64 {
    v * v * omega * omega / (4.0 * PI * kappa * kappa) * (-2.0 * omega / kappa).exp()
}

/// Large-`ω` form of the betaK distribution at `T = 0`,
/// `v₀²ω/(8π²κ) e^{-2ω/κ}`.
pub fn beta_k_transverse_asymptotic(v0: f64, kappa: f64, omega: f64) -> f64 {
    v0 * v0 * omega / (8.0 * PI * PI * kappa) * (-2.0 * omega / kappa).exp()
}

/// Collects the first error raised inside an integrand that must return a
/// plain `f64`.
#[derive(Default)]
struct ErrorSlot(Mutex<Option<Error>>);

impl ErrorSlot {
    fn value(&self, r: Result<f64>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.0.lock().unwrap_or_else(|p| p.into_inner());
                slot.get_or_insert(e);
                0.0
            }
        }
    }

    fn check<T>(self, value: T) -> Result<T> {
        match self.0.into_inner().unwrap_or_else(|p| p.into_inner()) {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }
}

fn mode_integrand(params: &TrajectoryParams, p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0 && q > 0.0) || !p.is_finite() || !q.is_finite() {
        return Ok(0.0);
    }
    beta_sq(params, ModePair { p, q })
}

fn angular_integrand(params: &TrajectoryParams, omega: f64, t: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Ok(0.0);
    }
    Ok(spectral_distribution(params, AngularPoint { omega, cos_theta: t })?.value)
}

/// `N_p = ∫₀^{q_max} |β_pq|² dq`; pass `f64::INFINITY` for the full spectrum.
pub fn particle_spectrum(params: &TrajectoryParams, p: f64, q_max: f64, tol: f64) -> Result<QuadratureResult> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("p must be positive, got {p}")));
    }
    let errors = ErrorSlot::default();
    let r = Integrator::new(Tolerance::new(tol, 1e-300)).integrate(
        |q| errors.value(mode_integrand(params, p, q)),
        0.0,
        q_max,
    );
    errors.check(r)?.into_result("particle spectrum")
}

/// `E = ∫∫ p |β_pq|² dp dq` over the whole quadrant.
pub fn energy_from_modes(params: &TrajectoryParams, tol: f64) -> Result<QuadratureResult> {
    let errors = ErrorSlot::default();
    let r = integrate_2d(
        |p, q| errors.value(mode_integrand(params, p, q).map(|b| p * b)),
        (0.0, f64::INFINITY),
        (0.0, f64::INFINITY),
        tol,
    );
    errors.check(r)?.into_result("mode-sum energy")
}

/// `I(ω) = 2π ∫_{-1}^{1} dI/dΩ dT`.
pub fn energy_spectrum(params: &TrajectoryParams, omega: f64, tol: f64) -> Result<QuadratureResult> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("frequency must be positive, got {omega}")));
    }
    let errors = ErrorSlot::default();
    // The integrand is even in T.
    let r = Integrator::new(Tolerance::new(tol, 1e-300)).integrate(
        |t| errors.value(angular_integrand(params, omega, t)),
        0.0,
        1.0,
    );
    let r = errors.check(r)?.into_result("energy spectrum")?;
    Ok(QuadratureResult {
        value: 4.0 * PI * r.value,
        abs_err: 4.0 * PI * r.abs_err,
        ..r
    })
}

/// `E = 2π ∫dω ∫dT dI/dΩ`, the closed-form distribution integrated over
/// frequency and solid angle.
pub fn energy_from_distribution(params: &TrajectoryParams, tol: f64) -> Result<QuadratureResult> {
    let errors = ErrorSlot::default();
    let r = integrate_2d(
        |omega, t| errors.value(angular_integrand(params, omega, t)),
        (0.0, f64::INFINITY),
        (0.0, 1.0),
        tol,
    );
    let r = errors.check(r)?.into_result("distribution energy")?;
    Ok(QuadratureResult {
        value: 4.0 * PI * r.value,
        abs_err: 4.0 * PI * r.abs_err,
        ..r
    })
}

/// Total particle number by the classical and the mode route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleCount {
    /// `∫dω ∫dΩ (1/ω) dI/dΩ`
    pub classical: f64,
    /// `½ ∫∫ |β_pq|² dp dq`: one side of the mirror.
    pub modes_one_side: f64,
    pub err_classical: f64,
    pub err_modes: f64,
}

impl ParticleCount {
    pub fn rel_disagreement(&self) -> f64 {
        let scale = self.classical.abs().max(self.modes_one_side.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.classical - self.modes_one_side).abs() / scale
        }
    }
}

/// Classical route only.
pub fn particle_count_classical(params: &TrajectoryParams, tol: f64) -> Result<QuadratureResult> {
    let errors = ErrorSlot::default();
    let r = integrate_2d(
        |omega, t| errors.value(angular_integrand(params, omega, t).map(|f| f / omega)),
        (0.0, f64::INFINITY),
        (0.0, 1.0),
        tol,
    );
    let r = errors.check(r)?.into_result("classical particle count")?;
    Ok(QuadratureResult {
        value: 4.0 * PI * r.value,
        abs_err: 4.0 * PI * r.abs_err,
        ..r
    })
}

/// Mode route only, `½ ∫∫ |β_pq|² dp dq`.
pub fn particle_count_modes(params: &TrajectoryParams, tol: f64) -> Result<QuadratureResult> {
    let errors = ErrorSlot::default();
    let r = integrate_2d(
        |p, q| errors.value(mode_integrand(params, p, q)),
        (0.0, f64::INFINITY),
        (0.0, f64::INFINITY),
        tol,
    );
    let r = errors.check(r)?.into_result("mode particle count")?;
    Ok(QuadratureResult {
        value: 0.5 * r.value,
        abs_err: 0.5 * r.abs_err,
        ..r
    })
}

pub fn particle_count(params: &TrajectoryParams, tol: f64) -> Result<ParticleCount> {
    let c = particle_count_classical(params, tol)?;
    let m = particle_count_modes(params, tol)?;
    Ok(ParticleCount {
        classical: c.value,
        modes_one_side: m.value,
        err_classical: c.abs_err,
        err_modes: m.abs_err,
    })
}

/// Best Planck-shaped fit `A/(e^{p/T} − 1)` to a sampled spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalFit {
    pub amplitude: f64,
    pub temperature: f64,
    /// Root-mean-square of `(fit − data)/data` over the samples.
    pub rms_rel_dev: f64,
}

/// Fits amplitude and temperature by minimising the relative RMS deviation.
/// For fixed temperature the best amplitude is linear least squares; the
/// temperature is found by golden-section search in `ln T` over
/// `[1e-3, 1e3]` times the mean sample frequency.
pub fn thermal_fit(samples: &[(f64, f64)]) -> Result<ThermalFit> {
    if samples.len() < 3 || samples.iter().any(|&(p, n)| !(p > 0.0) || !(n > 0.0)) {
        return Err(Error::Domain(
            "thermal fit needs at least three positive samples".into(),
        ));
    }
    let at = |temp: f64| -> (f64, f64) {
        let g: Vec<f64> = samples.iter().map(|&(p, n)| 1.0 / ((p / temp).exp_m1() * n)).collect();
        let amp = g.iter().sum::<f64>() / g.iter().map(|x| x * x).sum::<f64>();
        let ms = g.iter().map(|x| (amp * x - 1.0).powi(2)).sum::<f64>() / g.len() as f64;
        (amp, ms.sqrt())
    };
    let mean_p = samples.iter().map(|s| s.0).sum::<f64>() / samples.len() as f64;
    let (mut lo, mut hi) = ((mean_p * 1e-3).ln(), (mean_p * 1e3).ln());
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let mut a = hi - golden * (hi - lo);
    let mut b = lo + golden * (hi - lo);
    let (mut fa, mut fb) = (at(a.exp()).1, at(b.exp()).1);
    for _ in 0..200 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - golden * (hi - lo);
            fa = at(a.exp()).1;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + golden * (hi - lo);
            fb = at(b.exp()).1;
        }
        if hi - lo < 1e-10 {
            break;
        }
    }
    let temperature = (0.5 * (lo + hi)).exp();
    let (amplitude, rms_rel_dev) = at(temperature);
    Ok(ThermalFit {
        amplitude,
        temperature,
        rms_rel_dev,
    })
}

/// Samples `N_p` on `p_grid` and fits a Planck curve to it.
pub fn nonthermality(params: &TrajectoryParams, p_grid: &[f64], tol: f64) -> Result<ThermalFit> {
    let samples = p_grid
        .iter()
        .map(|&p| particle_spectrum(params, p, f64::INFINITY, tol).map(|r| (p, r.value)))
        .collect::<Result<Vec<_>>>()?;
    thermal_fit(&samples)
}
