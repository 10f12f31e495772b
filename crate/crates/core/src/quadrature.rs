//! One-dimensional adaptive quadrature.
//!
//! The workhorse is a global-adaptive Gauss–Kronrod (7/15) bisection scheme
//! in the QUADPACK style: the interval with the largest error estimate is
//! split until the summed estimate meets the tolerance or the evaluation
//! budget runs out. Infinite endpoints are folded onto a finite interval by a
//! rational change of variables before the adaptive loop starts.
//!
//! Two derived drivers sit on top:
//!
//! * [`integrate_oscillatory`] for conditionally convergent transforms
//!   `∫₀^∞ g(s) sin(rs) ds` / `∫₀^∞ g(s) cos(rs) ds`, partitioned at the zeros
//!   of the oscillator and summed with Euler (repeated-averaging) acceleration.
//! * [`integrate_2d`] for iterated integrals over a rectangle, with the inner
//!   integrals evaluated in parallel at the outer nodes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default evaluation budget per call.
pub const DEFAULT_MAX_EVALS: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Number of integrand evaluations per Gauss–Kronrod panel.
pub const RULE_POINTS: usize = 15;

/// Values the adaptive kernel can accumulate.
pub trait QuadValue: Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    /// Magnitude used by the error estimator.
    fn norm(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
}

/// Value plus an attached error that is integrated alongside it but does not
/// drive refinement. Used by the outer level of [`integrate_2d`].
#[derive(Debug, Clone, Copy)]
struct Carried {
    value: f64,
    err: f64,
}

impl Add for Carried {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Carried {
            value: self.value + rhs.value,
            err: self.err + rhs.err,
        }
    }
}

impl Sub for Carried {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Carried {
            value: self.value - rhs.value,
            err: self.err - rhs.err,
        }
    }
}

impl Mul<f64> for Carried {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Carried {
            value: self.value * rhs,
            err: self.err * rhs,
        }
    }
}

impl QuadValue for Carried {
    fn zero() -> Self {
        Carried { value: 0.0, err: 0.0 }
    }
    fn norm(self) -> f64 {
        self.value.abs()
    }
}

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult<V = f64> {
    pub value: V,
    pub abs_err: f64,
    pub evals: usize,
    pub converged: bool,
}

impl<V: Copy> QuadratureResult<V> {
    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn into_result(self, context: &str) -> Result<Self>
    where
        V: QuadValue,
    {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                context: context.to_string(),
                value: self.value.norm(),
                abs_err: self.abs_err,
            })
        }
    }
}

/// Requested accuracy: converged when `abs_err <= max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Tolerance { rel, abs: 0.0 }
    }

    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    err: f64,
    resabs: f64,
    splittable: bool,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<V> Eq for Panel<V> {}

impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V> Ord for Panel<V> {
    // Largest error first; unsplittable panels sink to the bottom. Ties are
    // broken on position so the refinement order is deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.splittable
            .cmp(&other.splittable)
            .then(self.err.total_cmp(&other.err))
            .then(other.a.total_cmp(&self.a))
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut scaled = err.abs();
    if resasc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / resasc).powf(1.5);
        scaled = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * resabs);
    }
    scaled
}

fn kronrod_nodes(a: f64, b: f64) -> [f64; RULE_POINTS] {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut xs = [0.0; RULE_POINTS];
    for j in 0..7 {
        xs[2 * j] = center - half * XGK[j];
        xs[2 * j + 1] = center + half * XGK[j];
    }
    xs[14] = center;
    xs
}

fn apply_rule<V: QuadValue>(a: f64, b: f64, fx: &[V; RULE_POINTS]) -> Panel<V> {
    let half = 0.5 * (b - a);
    let fc = fx[14];
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = WGK[7] * fc.norm();
    for j in 0..7 {
        let pair = fx[2 * j] + fx[2 * j + 1];
        kron = kron + pair * WGK[j];
        resabs += WGK[j] * (fx[2 * j].norm() + fx[2 * j + 1].norm());
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fx[2 * j] - mean).norm() + (fx[2 * j + 1] - mean).norm());
    }
    let diff = (kron - gauss) * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let err = rescale_error(diff.norm(), resabs, resasc);
    Panel {
        a,
        b,
        value: kron * half,
        err,
        resabs,
        splittable: true,
    }
}

/// Adaptive integrator configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub tol: Tolerance,
    pub max_evals: usize,
    /// Initial uniform subdivision of the (mapped) interval.
    pub initial_panels: usize,
}

impl Integrator {
    pub fn new(tol: Tolerance) -> Self {
        Integrator {
            tol,
            max_evals: DEFAULT_MAX_EVALS,
            initial_panels: 1,
        }
    }

    pub fn with_max_evals(mut self, max_evals: usize) -> Self {
        self.max_evals = max_evals;
        self
    }

    pub fn with_initial_panels(mut self, n: usize) -> Self {
        self.initial_panels = n.max(1);
        self
    }

    /// Integrates `f` over `[a, b]`; either bound may be infinite.
    pub fn integrate<V, F>(&self, f: F, a: f64, b: f64) -> QuadratureResult<V>
    where
        V: QuadValue,
        F: Fn(f64) -> V,
    {
        self.integrate_batched(
            |xs: &[f64], out: &mut [V]| {
                for (x, y) in xs.iter().zip(out.iter_mut()) {
                    *y = f(*x);
                }
            },
            a,
            b,
        )
    }

    /// Same as [`Integrator::integrate`], but the integrand sees all the nodes
    /// of a panel at once, so an expensive integrand can fan them out.
    pub fn integrate_batched<V, F>(&self, f: F, a: f64, b: f64) -> QuadratureResult<V>
    where
        V: QuadValue,
        F: Fn(&[f64], &mut [V]),
    {
        if a == b {
            return QuadratureResult {
                value: V::zero(),
                abs_err: 0.0,
                evals: 0,
                converged: true,
            };
        }
        if b < a {
            let r = self.integrate_batched(f, b, a);
            return QuadratureResult {
                value: r.value * -1.0,
                ..r
            };
        }
        match (a.is_finite(), b.is_finite()) {
            (true, true) => self.adaptive(&f, a, b, |s| (s, 1.0)),
            (true, false) => self.adaptive(&f, 0.0, 1.0, |s| {
                let d = 1.0 - s;
                (a + s / d, 1.0 / (d * d))
            }),
            (false, true) => self.adaptive(&f, 0.0, 1.0, |s| {
                let d = 1.0 - s;
                (b - s / d, 1.0 / (d * d))
            }),
            (false, false) => self.adaptive(&f, -1.0, 1.0, |s| {
                let d = 1.0 - s * s;
                (s / d, (1.0 + s * s) / (d * d))
            }),
        }
    }

    fn adaptive<V, F, M>(&self, f: &F, a: f64, b: f64, map: M) -> QuadratureResult<V>
    where
        V: QuadValue,
        F: Fn(&[f64], &mut [V]),
        M: Fn(f64) -> (f64, f64),
    {
        let evals = std::cell::Cell::new(0usize);
        let panel = |lo: f64, hi: f64| -> Panel<V> {
            let nodes = kronrod_nodes(lo, hi);
            let mut xs = [0.0; RULE_POINTS];
            let mut jac = [0.0; RULE_POINTS];
            for (k, s) in nodes.iter().enumerate() {
                let (x, j) = map(*s);
                xs[k] = x;
                jac[k] = j;
            }
            let mut fx = [V::zero(); RULE_POINTS];
            f(&xs, &mut fx);
            for k in 0..RULE_POINTS {
                // Mapped endpoints can pair an underflowed integrand with a
                // huge Jacobian; 0 * inf must stay 0.
                let y = fx[k];
                fx[k] = if y.norm() == 0.0 || !jac[k].is_finite() {
                    V::zero()
                } else {
                    y * jac[k]
                };
            }
            evals.set(evals.get() + RULE_POINTS);
            let mut p = apply_rule(lo, hi, &fx);
            let mid = 0.5 * (lo + hi);
            p.splittable = mid > lo && mid < hi && (hi - lo) > 4.0 * f64::EPSILON * lo.abs().max(hi.abs());
            p
        };

        let n0 = self.initial_panels;
        let mut heap = BinaryHeap::with_capacity(64);
        for k in 0..n0 {
            let lo = a + (b - a) * k as f64 / n0 as f64;
            let hi = if k + 1 == n0 {
                b
            } else {
                a + (b - a) * (k + 1) as f64 / n0 as f64
            };
            heap.push(panel(lo, hi));
        }

        let totals = |heap: &BinaryHeap<Panel<V>>| -> (V, f64, f64) {
            // Summed in position order so the result does not depend on the
            // heap's internal layout.
            let mut ps: Vec<&Panel<V>> = heap.iter().collect();
            ps.sort_by(|x, y| x.a.total_cmp(&y.a));
            ps.iter().fold((V::zero(), 0.0, 0.0), |(v, e, r), p| {
                (v + p.value, e + p.err, r + p.resabs)
            })
        };

        let (mut value, mut err, mut resabs) = totals(&heap);
        loop {
            let target = self.tol.target(value.norm());
            let roundoff_floor = 50.0 * f64::EPSILON * resabs;
            let converged = err <= target.max(2.0 * roundoff_floor);
            let stuck = heap.peek().is_none_or(|p| !p.splittable);
            if converged || stuck || evals.get() + 2 * RULE_POINTS > self.max_evals {
                let (value, err, resabs) = totals(&heap);
                let target = self.tol.target(value.norm());
                return QuadratureResult {
                    value,
                    abs_err: err,
                    evals: evals.get(),
                    converged: err <= target.max(100.0 * f64::EPSILON * resabs),
                };
            }
            let worst = heap.pop().expect("heap is non-empty");
            let mid = 0.5 * (worst.a + worst.b);
            let left = panel(worst.a, mid);
            let right = panel(mid, worst.b);
            value = value - worst.value + left.value + right.value;
            err += left.err + right.err - worst.err;
            resabs += left.resabs + right.resabs - worst.resabs;
            heap.push(left);
            heap.push(right);
            if heap.len() % 256 == 0 {
                (value, err, resabs) = totals(&heap);
            }
        }
    }
}

/// Adaptive integral of `f` over `[a, b]` (either bound may be infinite) to
/// relative tolerance `tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> QuadratureResult
where
    F: Fn(f64) -> f64,
{
    Integrator::new(Tolerance::relative(tol)).integrate(f, a, b)
}

/// Which oscillator multiplies the envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Oscillator {
    Sine,
    Cosine,
}

/// `∫₀^∞ envelope(s) · osc(phase_rate · s) ds`.
pub struct OscillatorySpec<F> {
    pub envelope: F,
    pub phase_rate: f64,
    pub kind: Oscillator,
}

impl<F: Fn(f64) -> f64> OscillatorySpec<F> {
    pub fn new(envelope: F, phase_rate: f64, kind: Oscillator) -> Result<Self> {
        if !(phase_rate > 0.0 && phase_rate.is_finite()) {
            return Err(Error::Domain(format!("phase rate must be positive, got {phase_rate}")));
        }
        Ok(OscillatorySpec {
            envelope,
            phase_rate,
            kind,
        })
    }

    /// Panel boundary `k` (k = 0 is the origin, then successive zeros).
    fn boundary(&self, k: usize) -> f64 {
        let period = std::f64::consts::PI / self.phase_rate;
        match (self.kind, k) {
            (_, 0) => 0.0,
            (Oscillator::Sine, k) => k as f64 * period,
            (Oscillator::Cosine, k) => (k as f64 - 0.5) * period,
        }
    }

    fn integrand(&self, s: f64) -> f64 {
        let osc = match self.kind {
            Oscillator::Sine => (self.phase_rate * s).sin(),
            Oscillator::Cosine => (self.phase_rate * s).cos(),
        };
        (self.envelope)(s) * osc
    }
}

/// Depth of the repeated-averaging (Euler) transform.
const EULER_LEVELS: usize = 14;

fn euler_estimate(partial: &[f64], end: usize) -> f64 {
    // Binomially weighted mean of the partial sums S[end-L..=end].
    let start = end - EULER_LEVELS;
    let mut row: Vec<f64> = partial[start..=end].to_vec();
    for _ in 0..EULER_LEVELS {
        for j in 0..row.len() - 1 {
            row[j] = 0.5 * (row[j] + row[j + 1]);
        }
        row.pop();
    }
    row[0]
}

/// Evaluates a half-line sine or cosine transform.
///
/// `[0, ∞)` is cut at the zeros of the oscillator, each half-period panel is
/// integrated adaptively, and the sequence of partial sums is accelerated by
/// repeated averaging. The panel count doubles until two successive
/// accelerated estimates agree to `tol` (relative).
pub fn integrate_oscillatory<F>(spec: &OscillatorySpec<F>, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    integrate_oscillatory_with(spec, Tolerance::relative(tol), DEFAULT_MAX_EVALS)
}

/// [`integrate_oscillatory`] with a mixed tolerance and an explicit budget.
/// An exhausted budget is reported through `converged = false`, not as an
/// error.
pub fn integrate_oscillatory_with<F>(
    spec: &OscillatorySpec<F>,
    tol: Tolerance,
    max_evals: usize,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(tol.rel >= 0.0 && tol.rel < 1.0 && tol.abs >= 0.0) || tol.rel + tol.abs == 0.0 {
        return Err(Error::Domain(format!("invalid tolerance {tol:?}")));
    }
    let panel_rule = Integrator::new(Tolerance::new(tol.rel.max(1e-15) * 1e-3, 0.0)).with_max_evals(20_000);

    let mut partial: Vec<f64> = vec![0.0];
    let mut evals = 0usize;
    let mut panel_err = 0.0;
    let mut scale = 0.0f64;
    let add_panels = |partial: &mut Vec<f64>, upto: usize, evals: &mut usize, panel_err: &mut f64, scale: &mut f64| {
        while partial.len() <= upto {
            let k = partial.len() - 1;
            let r = panel_rule.integrate(|s| spec.integrand(s), spec.boundary(k), spec.boundary(k + 1));
            *evals += r.evals;
            *panel_err += r.abs_err;
            *scale = scale.max(r.value.abs());
            let last = *partial.last().expect("non-empty");
            partial.push(last + r.value);
        }
    };

    let mut n = 4 * EULER_LEVELS;
    add_panels(&mut partial, n, &mut evals, &mut panel_err, &mut scale);
    let mut previous = euler_estimate(&partial, n);
    loop {
        let next_n = 2 * n;
        add_panels(&mut partial, next_n, &mut evals, &mut panel_err, &mut scale);
        let estimate = euler_estimate(&partial, next_n);
        let delta = (estimate - previous).abs();
        // Floor at rounding level of the largest panel; the transform of a
        // smooth alternating tail cannot resolve below it.
        let floor = 64.0 * f64::EPSILON * scale;
        let abs_err = delta + panel_err;
        let target = tol.target(estimate.abs()).max(floor);
        if abs_err <= target {
            return Ok(QuadratureResult {
                value: estimate,
                abs_err,
                evals,
                converged: true,
            });
        }
        if evals >= max_evals {
            return Ok(QuadratureResult {
                value: estimate,
                abs_err,
                evals,
                converged: false,
            });
        }
        previous = estimate;
        n = next_n;
    }
}

/// Iterated integral `∫_{x0}^{x1} dx ∫_{y0}^{y1} dy f(x, y)`.
///
/// The outer range may be semi-infinite. Inner integrals at the fifteen
/// outer nodes of a panel are evaluated in parallel; each node's inner
/// integral is a pure function of its inputs, so results do not depend on
/// thread scheduling.
pub fn integrate_2d<F>(f: F, x_range: (f64, f64), y_range: (f64, f64), tol: f64) -> QuadratureResult
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let inner = Integrator::new(Tolerance::relative(tol * 0.1)).with_max_evals(200_000);
    let inner_evals = AtomicUsize::new(0);
    let all_inner_converged = std::sync::atomic::AtomicBool::new(true);
    let outer = Integrator::new(Tolerance::relative(tol * 0.5)).with_max_evals(20_000);
    let r = outer.integrate_batched(
        |xs: &[f64], out: &mut [Carried]| {
            xs.par_iter().zip(out.par_iter_mut()).for_each(|(&x, slot)| {
                let ri = inner.integrate(|y| f(x, y), y_range.0, y_range.1);
                inner_evals.fetch_add(ri.evals, AtomicOrdering::Relaxed);
                if !ri.converged {
                    all_inner_converged.store(false, AtomicOrdering::Relaxed);
                }
                *slot = Carried {
                    value: ri.value,
                    err: ri.abs_err,
                };
            });
        },
        x_range.0,
        x_range.1,
    );
    let abs_err = r.abs_err + r.value.err.abs();
    let converged =
        r.converged && all_inner_converged.load(AtomicOrdering::Relaxed) && abs_err <= tol * r.value.value.abs();
    QuadratureResult {
        value: r.value.value,
        abs_err,
        evals: inner_evals.load(AtomicOrdering::Relaxed),
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    #[test]
    fn gaussian_over_the_real_line() {
        let r = integrate(|x| (-x * x).exp(), f64::NEG_INFINITY, f64::INFINITY, 1e-10);
        assert!(r.converged);
        assert!((r.value - PI.sqrt()).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn lorentzian_over_the_real_line() {
        let r = integrate(|x| 1.0 / (1.0 + x * x), f64::NEG_INFINITY, f64::INFINITY, 1e-12);
        assert!((r.value - PI).abs() < 1e-11, "{}", r.value);
    }

    #[test]
    fn half_lines_both_directions() {
        let r = integrate(|x| (-x).exp(), 0.0, f64::INFINITY, 1e-12);
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate(|x| x.exp(), f64::NEG_INFINITY, 0.0, 1e-12);
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let r = integrate(|x| x * x, 1.0, 0.0, 1e-12);
        assert!((r.value + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10);
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = Integrator::new(Tolerance::relative(1e-15))
            .with_max_evals(45)
            .integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 3.0);
        assert!(!r.converged);
        assert!(r.evals <= 45);
        assert!(r.into_result("test").is_err());
    }

    #[test]
    fn complex_values() {
        let r = Integrator::new(Tolerance::relative(1e-13)).integrate(|x: f64| Complex64::new(0.0, x).exp(), 0.0, PI);
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn oscillatory_sine_transform() {
        let spec = OscillatorySpec::new(|s: f64| s / (s * s + 1.0), 1.0, Oscillator::Sine).unwrap();
        let r = integrate_oscillatory(&spec, 1e-10).unwrap();
        assert!(r.converged);
        assert!((r.value - PI / (2.0 * E)).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn oscillatory_cosine_transform() {
        let spec = OscillatorySpec::new(|s: f64| 1.0 / (s * s + 1.0), 1.0, Oscillator::Cosine).unwrap();
        let r = integrate_oscillatory(&spec, 1e-10).unwrap();
        assert!((r.value - PI / (2.0 * E)).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn oscillatory_decays_with_phase_rate() {
        let at = |rate: f64| {
            let spec = OscillatorySpec::new(|s: f64| s / (s * s + 1.0), rate, Oscillator::Sine).unwrap();
            integrate_oscillatory(&spec, 1e-8).unwrap().value
        };
        assert!(at(20.0).abs() < at(1.0).abs());
    }

    #[test]
    fn oscillatory_rejects_bad_rate() {
        assert!(OscillatorySpec::new(|s: f64| s, 0.0, Oscillator::Sine).is_err());
        assert!(OscillatorySpec::new(|s: f64| s, -1.0, Oscillator::Cosine).is_err());
    }

    #[test]
    fn unit_square() {
        let r = integrate_2d(|_, _| 1.0, (0.0, 1.0), (-1.0, 1.0), 1e-10);
        assert!((r.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn separable_semi_infinite() {
        let r = integrate_2d(
            |x, y| (-x).exp() * (1.0 - y * y),
            (0.0, f64::INFINITY),
            (-1.0, 1.0),
            1e-10,
        );
        assert!(r.converged);
        assert!((r.value - 4.0 / 3.0).abs() < 1e-10);
    }
}
