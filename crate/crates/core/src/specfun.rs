//! Modified Bessel function of the second kind for complex order at real
//! positive argument, and `|Γ(ix)|²`.
//!
//! `K_ν(x) = ½ ∫_{-∞}^{∞} exp(-x cosh t + ν t) dt`. For `ν = a + iμ` the
//! integrand on the real axis has modulus of order `e^{-x}` while the result
//! is as small as `e^{-π|μ|/2}`, so direct quadrature cancels away every digit
//! once `|μ|` exceeds `x`. The integral is instead taken along the horizontal
//! line `Im t = θ` through the saddle of `-x cosh t + iμt`, where the phase is
//! stationary and the modulus stays comparable to the result. All work is done
//! relative to the maximum modulus on the contour, so the value is available
//! in log form far beyond the range of `f64`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{Integrator, Tolerance};

/// Order `re + i·im` of `K_ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexOrder {
    pub re: f64,
    pub im: f64,
}

impl ComplexOrder {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexOrder { re, im }
    }

    /// `iμ`
    pub fn imaginary(im: f64) -> Self {
        ComplexOrder { re: 0.0, im }
    }

    /// `½ + iμ`
    pub fn half_plus_imaginary(im: f64) -> Self {
        ComplexOrder { re: 0.5, im }
    }
}

/// `K_ν(x)` together with its log-modulus.
///
/// `value` underflows to zero for very large `x`; `ln_abs` does not, and is
/// what products like `sinh(πμ)|K|²` should be assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselKValue {
    pub value: Complex64,
    pub abs_sq: f64,
    /// `ln |K_ν(x)|`
    pub ln_abs: f64,
    /// Relative error estimate on the modulus.
    pub rel_err: f64,
}

impl BesselKValue {
    pub fn ln_abs_sq(&self) -> f64 {
        2.0 * self.ln_abs
    }

    fn from_scaled(scaled: Complex64, ln_scale: f64, rel_err: f64, conjugate: bool) -> Self {
        let ln_abs = scaled.norm().ln() + ln_scale;
        let value = scaled * ln_scale.exp();
        let value = if conjugate { value.conj() } else { value };
        BesselKValue {
            value,
            abs_sq: (2.0 * ln_abs).exp(),
            ln_abs,
            rel_err,
        }
    }
}

/// Log-modulus drop, relative to the contour maximum, at which the integrand
/// is truncated (e^-45 ≈ 2.9e-20).
const TRUNCATION_DEPTH: f64 = 45.0;

/// Geometry of the integration line `Im t = theta`.
#[derive(Debug, Clone, Copy)]
struct Contour {
    a: f64,
    mu: f64,
    x: f64,
    theta: f64,
    sin_theta: f64,
    cos_theta: f64,
    /// Maximum of the log-modulus along the line.
    ln_peak: f64,
    t_lo: f64,
    t_hi: f64,
}

impl Contour {
    /// `a >= 0`, `mu >= 0`. `offset` > 0 lowers the line below the saddle;
    /// used only by the cross-check path.
    fn new(a: f64, mu: f64, x: f64, offset: f64) -> Self {
        let theta = if mu == 0.0 {
            0.0
        } else {
            // The saddle reaches π/2 for μ ≥ x; stop short of it so the
            // integrand keeps decaying, at a cost of at most e^{μ·margin}.
            let margin = (0.5f64).min(1.0 / mu);
            let saddle = (mu / x).min(1.0).asin();
            (saddle.min(FRAC_PI_2 - margin) - offset).max(0.0)
        };
        let c = theta.cos();
        // Real part of the exponent, without the constant -μθ.
        let log_mod = |t: f64| -x * c * t.cosh() + a * t;
        let t_peak = (a / (x * c)).asinh();
        let peak = log_mod(t_peak);
        let floor = peak - TRUNCATION_DEPTH;
        let bracket = |dir: f64| -> f64 {
            let mut step = 1.0;
            let mut inner = t_peak;
            let mut outer = t_peak + dir * step;
            while log_mod(outer) > floor {
                inner = outer;
                step *= 2.0;
                outer = t_peak + dir * step;
            }
            for _ in 0..60 {
                let mid = 0.5 * (inner + outer);
                if log_mod(mid) > floor {
                    inner = mid;
                } else {
                    outer = mid;
                }
            }
            outer
        };
        Contour {
            a,
            mu,
            x,
            theta,
            sin_theta: theta.sin(),
            cos_theta: c,
            ln_peak: peak - mu * theta,
            t_lo: bracket(-1.0),
            t_hi: bracket(1.0),
        }
    }

    /// Integrand divided by `e^{ln_peak}`, including the factor ½.
    fn scaled_integrand(&self, t: f64) -> Complex64 {
        let e = t.exp();
        let (cosh, sinh) = (0.5 * (e + 1.0 / e), 0.5 * (e - 1.0 / e));
        let re = -self.x * cosh * self.cos_theta + self.a * t - self.mu * self.theta - self.ln_peak;
        let im = -self.x * sinh * self.sin_theta + self.mu * t + self.a * self.theta;
        Complex64::from_polar(0.5 * re.exp(), im)
    }

    fn phase(&self, t: f64) -> f64 {
        -self.x * t.sinh() * self.sin_theta + self.mu * t
    }

    /// Rough number of half-oscillations across the truncated range.
    fn half_oscillations(&self) -> usize {
        const SAMPLES: usize = 256;
        let h = (self.t_hi - self.t_lo) / SAMPLES as f64;
        let mut total = 0.0;
        let mut prev = self.phase(self.t_lo);
        for k in 1..=SAMPLES {
            let p = self.phase(self.t_lo + k as f64 * h);
            total += (p - prev).abs();
            prev = p;
        }
        (total / PI).ceil() as usize
    }
}

fn validate(order: ComplexOrder, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K_nu(x) requires finite x > 0, got {x}")));
    }
    if !order.re.is_finite() || !order.im.is_finite() {
        return Err(Error::Domain(format!("non-finite Bessel order {order:?}")));
    }
    Ok(())
}

/// `K_ν(x)` for complex order and real `x > 0`.
///
/// Uses `K_ν = K_{-ν}` and `K_{ν̄}(x) = conj(K_ν(x))` to reduce to
/// `re >= 0`, `im >= 0`, then integrates along the saddle contour with
/// adaptive Gauss–Kronrod.
pub fn bessel_k(order: ComplexOrder, x: f64) -> Result<BesselKValue> {
    validate(order, x)?;
    let (a, mu, conjugate) = canonical(order);
    let contour = Contour::new(a, mu, x, 0.0);
    let panels = (contour.half_oscillations() / 2).clamp(4, 4096);
    let r = Integrator::new(Tolerance::relative(1e-12))
        .with_initial_panels(panels)
        .integrate(|t| contour.scaled_integrand(t), contour.t_lo, contour.t_hi);
    let rel_err = r.abs_err / r.value.norm();
    if !r.converged && rel_err > 1e-8 {
        return Err(Error::NonConvergence {
            context: format!("bessel_k({order:?}, {x})"),
            value: r.value.norm() * contour.ln_peak.exp(),
            abs_err: r.abs_err * contour.ln_peak.exp(),
        });
    }
    Ok(BesselKValue::from_scaled(r.value, contour.ln_peak, rel_err, conjugate))
}

/// Second, independent evaluation of `K_ν(x)`: the trapezoidal rule (step
/// halving until converged) on a contour displaced from the saddle line.
/// The integral is the same by Cauchy's theorem, but nodes, rule, contour
/// and truncation all differ from [`bessel_k`].
pub fn bessel_k_alt(order: ComplexOrder, x: f64) -> Result<BesselKValue> {
    validate(order, x)?;
    let (a, mu, conjugate) = canonical(order);
    // Moving the line down by δ costs roughly e^{-μδ} of cancellation.
    let offset = if mu > 0.0 { (0.3f64).min(0.7 / mu) } else { 0.0 };
    let contour = Contour::new(a, mu, x, offset);
    let span = contour.t_hi - contour.t_lo;
    let mut n = (4 * contour.half_oscillations()).clamp(64, 1 << 16);
    let mut h = span / n as f64;
    let mut sum: Complex64 = (0..=n)
        .map(|k| contour.scaled_integrand(contour.t_lo + k as f64 * h))
        .sum();
    let mut estimate = sum * h;
    for _ in 0..12 {
        // Add the midpoints of the current grid.
        let mids: Complex64 = (0..n)
            .map(|k| contour.scaled_integrand(contour.t_lo + (k as f64 + 0.5) * h))
            .sum();
        sum += mids;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        let change = (next - estimate).norm();
        estimate = next;
        if change <= 1e-12 * estimate.norm() {
            let rel_err = change / estimate.norm();
            return Ok(BesselKValue::from_scaled(estimate, contour.ln_peak, rel_err, conjugate));
        }
    }
    Err(Error::NonConvergence {
        context: format!("bessel_k_alt({order:?}, {x})"),
        value: estimate.norm() * contour.ln_peak.exp(),
        abs_err: f64::NAN,
    })
}

fn canonical(order: ComplexOrder) -> (f64, f64, bool) {
    let (re, im) = if order.re < 0.0 {
        (-order.re, -order.im)
    } else {
        (order.re, order.im)
    };
    (re, im.abs(), im < 0.0)
}

/// `|Γ(ix)|² = π / (x sinh(πx))`.
pub fn gamma_abs_sq_imag(x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("|Gamma(ix)|^2 has a pole at x = 0 (got {x})")));
    }
    let ax = x.abs();
    Ok(PI / (ax * (PI * ax).sinh()))
}

/// `ln sinh(y)` for `y > 0`, without overflow.
pub(crate) fn ln_sinh(y: f64) -> f64 {
    if y > 20.0 {
        y - std::f64::consts::LN_2 + (-2.0 * y).exp().ln_1p()
    } else {
        y.sinh().ln()
    }
}

/// `ln cosh(y)`, without overflow.
pub(crate) fn ln_cosh(y: f64) -> f64 {
    let y = y.abs();
    y - std::f64::consts::LN_2 + (-2.0 * y).exp().ln_1p()
}
