//! Adaptive Gauss–Kronrod integration.
//!
//! Every measure in the crate is an integral of a density functional, and all
//! of them funnel through [`integrate`]. The rule is the 10-point Gauss /
//! 21-point Kronrod pair with QUADPACK-style error scaling; panels are bisected
//! worst-first until the summed error estimate drops below the tolerance.
//! Infinite endpoints are mapped onto a finite interval with
//! `x = lo + t/(1-t)` (mirrored for a lower infinite bound, and `t/(1-t²)`
//! when both are infinite). Nodes are strictly interior, so integrands are
//! never evaluated at the endpoints.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::distributions::Distribution;
use crate::error::{Error, Result};

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Maximum number of panels kept by the adaptive scheme.
pub const MAX_SUBDIVISIONS: usize = 1 << 15;

// Kronrod abscissae on [0, 1]; odd indices are the Gauss points.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_389_681,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Outcome of an integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// False when the subdivision cap was hit before the tolerance was met.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff_limited: bool,
    id: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// One application of the 21-point Kronrod rule on [a, b].
fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, id: usize) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { x })
        }
    };

    let fc = eval(center)?;
    let mut resk = WGK[10] * fc;
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    let roundoff_limited = error <= floor;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        roundoff_limited,
        id,
    })
}

/// Adaptive integration of `f` on a finite interval.
fn integrate_finite<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<IntegralResult> {
    let first = kronrod21(f, lo, hi, 0)?;
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Panel> = Vec::new();
    let mut total_error = first.error;
    if first.roundoff_limited {
        settled.push(first);
    } else {
        heap.push(first);
    }
    let mut next_id = 1;
    let mut panels = 1;

    while total_error > tol && panels < MAX_SUBDIVISIONS {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        // Panel no longer splittable in floating point.
        if !(mid > worst.a && mid < worst.b) {
            settled.push(worst);
            continue;
        }
        let left = kronrod21(f, worst.a, mid, next_id)?;
        let right = kronrod21(f, mid, worst.b, next_id + 1)?;
        next_id += 2;
        evaluations += 42;
        panels += 1;
        total_error += left.error + right.error - worst.error;
        for p in [left, right] {
            if p.roundoff_limited {
                settled.push(p);
            } else {
                heap.push(p);
            }
        }
    }

    let mut all: Vec<Panel> = heap.into_vec();
    all.extend(settled);
    // Sum in interval order so the result does not depend on heap layout.
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = all.iter().map(|p| p.value).sum();
    let abs_error_estimate: f64 = all.iter().map(|p| p.error).sum();
    let roundoff_only = all.iter().all(|p| p.roundoff_limited);
    Ok(IntegralResult {
        value,
        abs_error_estimate,
        evaluations,
        converged: abs_error_estimate <= tol || roundoff_only,
    })
}

/// Integrates `h` over `(lo, hi)`; either endpoint may be infinite.
pub fn integrate<F>(h: F, lo: f64, hi: f64, tol: f64) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    if lo.is_nan() || hi.is_nan() || !(lo < hi) {
        return Err(Error::Domain(format!("integration interval ({lo}, {hi}) is empty")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => integrate_finite(&h, lo, hi, tol),
        (true, false) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t;
                h(lo + t / s) / (s * s)
            },
            0.0,
            1.0,
            tol,
        ),
        (false, true) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t;
                h(hi - t / s) / (s * s)
            },
            0.0,
            1.0,
            tol,
        ),
        (false, false) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t * t;
                h(t / s) * (1.0 + t * t) / (s * s)
            },
            -1.0,
            1.0,
            tol,
        ),
    }
}

/// `E[h(X)]` for `X ~ d`, computed as `∫₀¹ h(Q(u)) du` through the quantile
/// function. Falls back to `∫ h f` over the support if a quantile evaluation
/// fails to converge.
pub fn expectation<F>(d: &Distribution, h: F, tol: f64) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    let quantile_failed = Cell::new(false);
    let via_quantile = integrate(
        |u| match d.quantile(u) {
            Ok(x) => h(x),
            Err(_) => {
                quantile_failed.set(true);
                f64::NAN
            }
        },
        0.0,
        1.0,
        tol,
    );
    if !quantile_failed.get() {
        return via_quantile;
    }
    let s = d.support();
    integrate(
        |x| {
            let f = d.pdf(x);
            if f == 0.0 {
                0.0
            } else {
                h(x) * f
            }
        },
        s.lo,
        s.hi,
        tol,
    )
}

/// Composite trapezoid rule on a tabulated function.
pub fn grid_integrate(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::Domain("grid needs at least two points".into()));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    Ok(xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_unit_interval() {
        let r = integrate(|_| 1.0, 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        assert!(r.converged);
        assert!(r.evaluations > 0);
        assert!(r.abs_error_estimate >= 0.0);
    }

    #[test]
    fn kronrod_rule_is_exact_for_degree_31() {
        // ∫₀¹ x^31 = 1/32 from a single panel.
        let p = kronrod21(&|x: f64| x.powi(31), 0.0, 1.0, 0).unwrap();
        assert!((p.value - 1.0 / 32.0).abs() < 1e-15);
        // The embedded Gauss rule is exact through degree 19: error estimate collapses.
        let q = kronrod21(&|x: f64| x.powi(19), 0.0, 1.0, 0).unwrap();
        assert!(q.error < 1e-14);
    }

    #[test]
    fn exponential_density_normalizes() {
        let r = integrate(|x| 4.0 * (-4.0 * x).exp(), 0.0, f64::INFINITY, DEFAULT_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_type_product_integral() {
        // ∫ x² 16e^{-8x} 5e^{-5x} dx = 2·16·5/13³
        let r = integrate(
            |x| x * x * 16.0 * (-8.0 * x).exp() * 5.0 * (-5.0 * x).exp(),
            0.0,
            f64::INFINITY,
            DEFAULT_TOL,
        )
        .unwrap();
        let expected = 160.0 / 13f64.powi(3);
        assert!((r.value - expected).abs() < 1e-12, "{} vs {}", r.value, expected);
    }

    #[test]
    fn lower_infinite_and_doubly_infinite() {
        let r = integrate(|x| x.exp(), f64::NEG_INFINITY, 0.0, DEFAULT_TOL).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        let r = integrate(
            |x| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            DEFAULT_TOL,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn endpoint_singularity_is_never_evaluated() {
        // ∫₀¹ x^{-1/2} = 2; the integrand is infinite at 0.
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-9).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn non_finite_interior_value_is_an_error() {
        let err = integrate(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { .. }));
    }

    #[test]
    fn bad_interval_and_tolerance() {
        assert!(integrate(|x| x, 1.0, 1.0, 1e-10).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn deterministic_bits() {
        let f = |x: f64| (x.sin() * 3.0).exp() / (1.0 + x * x);
        let a = integrate(f, 0.0, f64::INFINITY, 1e-12).unwrap();
        let b = integrate(f, 0.0, f64::INFINITY, 1e-12).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.abs_error_estimate.to_bits(), b.abs_error_estimate.to_bits());
    }

    #[test]
    fn trapezoid_grid() {
        assert_eq!(grid_integrate(&[0.0, 1.0], &[1.0, 1.0]).unwrap(), 1.0);
        assert!((grid_integrate(&[0.0, 0.5, 1.0], &[0.0, 0.5, 1.0]).unwrap() - 0.5).abs() < 1e-15);
        let xs: Vec<f64> = (0..512).map(|i| 10.0 * i as f64 / 511.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (-x).exp()).collect();
        let v = grid_integrate(&xs, &ys).unwrap();
        assert!((v - (1.0 - (-10f64).exp())).abs() < 1e-4);
        assert!(matches!(
            grid_integrate(&[0.0, 1.0], &[1.0]),
            Err(Error::LengthMismatch(2, 1))
        ));
    }

    #[test]
    fn expectation_examples() {
        let e1 = Distribution::exponential(1.0).unwrap();
        let one = expectation(&e1, |_| 1.0, DEFAULT_TOL).unwrap();
        assert!((one.value - 1.0).abs() < 1e-12);
        let mean = expectation(&e1, |x| x, DEFAULT_TOL).unwrap();
        assert!((mean.value - 1.0).abs() < 1e-9);
        let dens = expectation(&e1, |x| (-x).exp(), DEFAULT_TOL).unwrap();
        assert!((dens.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn expectation_matches_direct_integral() {
        let g = Distribution::gamma(0.7, 2.0).unwrap();
        let via_q = expectation(&g, |x| x * x, 1e-11).unwrap().value;
        let direct = integrate(|x| x * x * g.pdf(x), 0.0, f64::INFINITY, 1e-11).unwrap().value;
        // E[X²] = α(α+1)/λ²
        assert!((via_q - 0.7 * 1.7 / 4.0).abs() < 1e-9);
        assert!((via_q - direct).abs() < 1e-9);
    }
}
