//! Maximum-likelihood fitting.

use super::{Distribution, Family, Sample};
use crate::error::{Error, Result};
use crate::special::{digamma, trigamma};

const MAX_ITER: usize = 200;
const REL_TOL: f64 = 1e-10;

/// Fit `family` to `s` by maximum likelihood.
pub fn fit_mle(family: Family, s: &Sample) -> Result<Distribution> {
    s.require(2)?;
    let xs = s.values();
    let n = xs.len() as f64;
    let positive_support = !matches!(family, Family::Uniform);
    if positive_support && s.min() <= 0.0 {
        return Err(Error::SupportViolation(format!(
            "{family} requires positive observations, found {}",
            s.min()
        )));
    }
    match family {
        Family::Exponential => Distribution::exponential(n / xs.iter().sum::<f64>()),
        Family::LogNormal => {
            let mu = xs.iter().map(|x| x.ln()).sum::<f64>() / n;
            let ss = xs.iter().map(|x| (x.ln() - mu).powi(2)).sum::<f64>() / n;
            Distribution::lognormal(mu, ss.sqrt())
        }
        Family::Uniform => Distribution::uniform(s.min(), s.max()),
        Family::Power => {
            if s.max() >= 1.0 {
                return Err(Error::SupportViolation(format!(
                    "power family lives on (0, 1), found {}",
                    s.max()
                )));
            }
            Distribution::power(-n / xs.iter().map(|x| x.ln()).sum::<f64>())
        }
        Family::Gamma => fit_gamma(xs),
        Family::Weibull => fit_weibull(xs),
    }
}

fn fit_gamma(xs: &[f64]) -> Result<Distribution> {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let s = mean.ln() - xs.iter().map(|x| x.ln()).sum::<f64>() / n;
    if !(s > 0.0) {
        return Err(Error::DegenerateSample);
    }
    // ln α − ψ(α) − s is strictly decreasing in α.
    let phi = |a: f64| (a.ln() - digamma(a) - s, 1.0 / a - trigamma(a));
    let start = (3.0 - s + ((s - 3.0).powi(2) + 24.0 * s).sqrt()) / (12.0 * s);
    let shape = solve_monotone(phi, start, "gamma shape")?;
    Distribution::gamma(shape, shape / mean)
}

fn fit_weibull(xs: &[f64]) -> Result<Distribution> {
    let n = xs.len() as f64;
    // Work with y = x / max so y^k stays bounded for large shapes.
    let top = xs.iter().cloned().fold(f64::MIN, f64::max);
    let ly: Vec<f64> = xs.iter().map(|x| (x / top).ln()).collect();
    let mean_ly = ly.iter().sum::<f64>() / n;
    // Profile score: Σy^k ln y / Σy^k − 1/k − mean(ln y), increasing in k.
    let score = |k: f64| {
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &l in &ly {
            let w = (k * l).exp();
            s0 += w;
            s1 += w * l;
            s2 += w * l * l;
        }
        let a = s1 / s0;
        let var = (s2 / s0 - a * a).max(0.0);
        (a - 1.0 / k - mean_ly, var + 1.0 / (k * k))
    };
    let sd = (ly.iter().map(|l| (l - mean_ly).powi(2)).sum::<f64>() / n).sqrt();
    let start = if sd > 0.0 { 1.2825 / sd } else { 1.0 };
    let shape = solve_monotone(score, start, "weibull shape")?;
    let mean_yk = ly.iter().map(|l| (shape * l).exp()).sum::<f64>() / n;
    let scale = top * mean_yk.powf(1.0 / shape);
    Distribution::weibull(shape, 1.0 / scale)
}

/// Root of a strictly monotone function on (0, ∞) by Newton's method,
/// falling back to bisection whenever a step leaves the current bracket.
fn solve_monotone<F>(f: F, start: f64, what: &'static str) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (f0, d0) = f(start);
    if f0 == 0.0 {
        return Ok(start);
    }
    let increasing = d0 > 0.0;
    // Bracket: `lo` has the sign of f just below the root.
    let below = |v: f64| (v < 0.0) == increasing;
    let (mut lo, mut hi) = (start, start);
    let mut expand = 0;
    if below(f0) {
        while below(f(hi).0) {
            hi *= 2.0;
            expand += 1;
            if expand > MAX_ITER || !hi.is_finite() {
                return Err(Error::NoConvergence { what, iterations: expand });
            }
        }
    } else {
        while !below(f(lo).0) {
            lo *= 0.5;
            expand += 1;
            if expand > MAX_ITER || lo == 0.0 {
                return Err(Error::NoConvergence { what, iterations: expand });
            }
        }
    }

    let mut x = start.clamp(lo, hi);
    for _ in 0..MAX_ITER {
        let (fx, dx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if below(fx) {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / dx;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= REL_TOL * next.abs() {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoConvergence {
        what,
        iterations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{BEARINGS, LOCOMOTIVE};

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lognormal_locomotive() {
        let d = fit_mle(Family::LogNormal, &sample(LOCOMOTIVE)).unwrap();
        assert!((d.params()[0] - 4.422567).abs() < 1e-4);
        assert!((d.params()[1] - 0.4031749).abs() < 1e-4);
    }

    #[test]
    fn weibull_bearings() {
        let d = fit_mle(Family::Weibull, &sample(BEARINGS)).unwrap();
        assert!((d.params()[0] - 2.101).abs() < 5e-3, "{d}");
        assert!((d.params()[1] - 0.0122).abs() < 1e-4, "{d}");
    }

    #[test]
    fn gamma_bearings() {
        let d = fit_mle(Family::Gamma, &sample(BEARINGS)).unwrap();
        assert!((d.params()[0] - 4.0255).abs() < 5e-3, "{d}");
        assert!((d.params()[1] - 0.0557).abs() < 5e-4, "{d}");
    }

    #[test]
    fn score_equations_hold_at_fit() {
        let s = sample(BEARINGS);
        let g = fit_mle(Family::Gamma, &s).unwrap();
        let n = s.len() as f64;
        let (a, l) = (g.params()[0], g.params()[1]);
        // ∂ℓ/∂λ = nα/λ − Σx, ∂ℓ/∂α = n ln λ − nψ(α) + Σ ln x
        let dl = n * a / l - s.values().iter().sum::<f64>();
        let da = n * l.ln() - n * digamma(a) + s.values().iter().map(|x| x.ln()).sum::<f64>();
        assert!(dl.abs() < 1e-6 * s.values().iter().sum::<f64>());
        assert!(da.abs() < 1e-6);
    }

    #[test]
    fn degenerate_and_small_samples() {
        assert_eq!(fit_mle(Family::Gamma, &sample(&[2.0, 2.0, 2.0])), Err(Error::DegenerateSample));
        assert!(matches!(
            fit_mle(Family::Exponential, &sample(&[1.0])),
            Err(Error::TooFewObservations { need: 2, got: 1 })
        ));
        assert!(matches!(
            fit_mle(Family::Weibull, &sample(&[-1.0, 2.0])),
            Err(Error::SupportViolation(_))
        ));
    }

    #[test]
    fn closed_forms() {
        let s = sample(&[0.5, 1.5, 1.0]);
        let e = fit_mle(Family::Exponential, &s).unwrap();
        assert!((e.params()[0] - 1.0).abs() < 1e-15);
        let u = fit_mle(Family::Uniform, &s).unwrap();
        assert_eq!(u.params(), &[0.5, 1.5]);
        let p = fit_mle(Family::Power, &sample(&[0.2, 0.5, 0.9])).unwrap();
        let expect = -3.0 / (0.2f64.ln() + 0.5f64.ln() + 0.9f64.ln());
        assert!((p.params()[0] - expect).abs() < 1e-14);
    }
}
