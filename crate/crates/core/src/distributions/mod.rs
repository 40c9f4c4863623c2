//! Parametric families used throughout the crate.
//!
//! Rates rather than scales parameterize the exponential, gamma and Weibull
//! families: the Weibull density is `λα(λx)^{α-1} exp(-(λx)^α)` and the gamma
//! density `λ^α x^{α-1} e^{-λx} / Γ(α)`.

mod fit;
mod sample;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{gamma_lr, gamma_ur, ln_gamma, std_normal_cdf, std_normal_quantile, std_normal_sf};

pub use fit::fit_mle;
pub use sample::Sample;

const QUANTILE_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Exponential,
    Gamma,
    Weibull,
    LogNormal,
    Uniform,
    Power,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Exponential,
        Family::Gamma,
        Family::Weibull,
        Family::LogNormal,
        Family::Uniform,
        Family::Power,
    ];

    pub fn param_count(self) -> usize {
        match self {
            Family::Exponential | Family::Power => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Exponential => "exponential",
            Family::Gamma => "gamma",
            Family::Weibull => "weibull",
            Family::LogNormal => "lognormal",
            Family::Uniform => "uniform",
            Family::Power => "power",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Exponential => &["rate"],
            Family::Gamma => &["shape", "rate"],
            Family::Weibull => &["shape", "rate"],
            Family::LogNormal => &["mu", "sigma"],
            Family::Uniform => &["lower", "upper"],
            Family::Power => &["shape"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exp" | "exponential" => Ok(Family::Exponential),
            "gamma" => Ok(Family::Gamma),
            "weibull" => Ok(Family::Weibull),
            "lognormal" | "lnorm" | "lognorm" => Ok(Family::LogNormal),
            "uniform" | "unif" => Ok(Family::Uniform),
            "power" => Ok(Family::Power),
            other => Err(Error::InvalidParameters(format!("unknown family '{other}'"))),
        }
    }
}

/// Closed interval bounds of a support; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const POSITIVE: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn is_non_negative(&self) -> bool {
        self.lo >= 0.0
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A validated member of one of the six families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionSpec", into = "DistributionSpec")]
pub struct Distribution {
    family: Family,
    params: [f64; 2],
    // ln Γ(shape) for the gamma family, 0 otherwise.
    ln_norm: f64,
}

#[derive(Serialize, Deserialize)]
struct DistributionSpec {
    family: Family,
    params: Vec<f64>,
}

impl TryFrom<DistributionSpec> for Distribution {
    type Error = Error;

    fn try_from(s: DistributionSpec) -> Result<Self> {
        Distribution::new(s.family, &s.params)
    }
}

impl From<Distribution> for DistributionSpec {
    fn from(d: Distribution) -> Self {
        DistributionSpec {
            family: d.family,
            params: d.params().to_vec(),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("{name} must be finite and > 0, got {v}")))
    }
}

impl Distribution {
    pub fn new(family: Family, params: &[f64]) -> Result<Self> {
        if params.len() != family.param_count() {
            return Err(Error::InvalidParameters(format!(
                "{family} takes {} parameter(s), got {}",
                family.param_count(),
                params.len()
            )));
        }
        let mut p = [0.0; 2];
        p[..params.len()].copy_from_slice(params);
        let mut ln_norm = 0.0;
        match family {
            Family::Exponential => positive("rate", p[0])?,
            Family::Gamma => {
                positive("shape", p[0])?;
                positive("rate", p[1])?;
                ln_norm = ln_gamma(p[0]);
            }
            Family::Weibull => {
                positive("shape", p[0])?;
                positive("rate", p[1])?;
            }
            Family::LogNormal => {
                if !p[0].is_finite() {
                    return Err(Error::InvalidParameters(format!("mu must be finite, got {}", p[0])));
                }
                positive("sigma", p[1])?;
            }
            Family::Uniform => {
                if !(p[0].is_finite() && p[1].is_finite() && p[0] < p[1]) {
                    return Err(Error::InvalidParameters(format!(
                        "uniform needs finite lower < upper, got ({}, {})",
                        p[0], p[1]
                    )));
                }
            }
            Family::Power => positive("shape", p[0])?,
        }
        Ok(Distribution {
            family,
            params: p,
            ln_norm,
        })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::new(Family::Exponential, &[rate])
    }

    pub fn gamma(shape: f64, rate: f64) -> Result<Self> {
        Self::new(Family::Gamma, &[shape, rate])
    }

    pub fn weibull(shape: f64, rate: f64) -> Result<Self> {
        Self::new(Family::Weibull, &[shape, rate])
    }

    pub fn lognormal(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(Family::LogNormal, &[mu, sigma])
    }

    pub fn uniform(lower: f64, upper: f64) -> Result<Self> {
        Self::new(Family::Uniform, &[lower, upper])
    }

    pub fn power(shape: f64) -> Result<Self> {
        Self::new(Family::Power, &[shape])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[f64] {
        &self.params[..self.family.param_count()]
    }

    pub fn support(&self) -> Interval {
        match self.family {
            Family::Uniform => Interval::new(self.params[0], self.params[1]),
            Family::Power => Interval::new(0.0, 1.0),
            _ => Interval::POSITIVE,
        }
    }

    /// Density; exactly zero outside the support.
    pub fn pdf(&self, x: f64) -> f64 {
        let [a, b] = self.params;
        match self.family {
            Family::Exponential => {
                if x < 0.0 {
                    0.0
                } else {
                    a * (-a * x).exp()
                }
            }
            Family::Gamma => {
                if x < 0.0 {
                    0.0
                } else if x == 0.0 {
                    match a.partial_cmp(&1.0) {
                        Some(std::cmp::Ordering::Less) => f64::INFINITY,
                        Some(std::cmp::Ordering::Equal) => b,
                        _ => 0.0,
                    }
                } else {
                    self.ln_pdf(x).exp()
                }
            }
            Family::Weibull => {
                if x < 0.0 {
                    0.0
                } else if x == 0.0 {
                    match a.partial_cmp(&1.0) {
                        Some(std::cmp::Ordering::Less) => f64::INFINITY,
                        Some(std::cmp::Ordering::Equal) => b,
                        _ => 0.0,
                    }
                } else {
                    let z = b * x;
                    b * a * z.powf(a - 1.0) * (-z.powf(a)).exp()
                }
            }
            Family::LogNormal => {
                if x <= 0.0 {
                    0.0
                } else {
                    self.ln_pdf(x).exp()
                }
            }
            Family::Uniform => {
                if x < a || x > b {
                    0.0
                } else {
                    1.0 / (b - a)
                }
            }
            Family::Power => {
                if !(0.0..=1.0).contains(&x) {
                    0.0
                } else if x == 0.0 {
                    match a.partial_cmp(&1.0) {
                        Some(std::cmp::Ordering::Less) => f64::INFINITY,
                        Some(std::cmp::Ordering::Equal) => 1.0,
                        _ => 0.0,
                    }
                } else {
                    a * x.powf(a - 1.0)
                }
            }
        }
    }

    /// Log-density; `-inf` outside the support.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let [a, b] = self.params;
        match self.family {
            Family::Exponential if x >= 0.0 => a.ln() - a * x,
            Family::Gamma if x > 0.0 => a * b.ln() + (a - 1.0) * x.ln() - b * x - self.ln_norm,
            Family::Weibull if x > 0.0 => {
                let z = b * x;
                b.ln() + a.ln() + (a - 1.0) * z.ln() - z.powf(a)
            }
            Family::LogNormal if x > 0.0 => {
                let z = (x.ln() - a) / b;
                -0.5 * z * z - x.ln() - b.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
            }
            Family::Power if x > 0.0 && x <= 1.0 => a.ln() + (a - 1.0) * x.ln(),
            _ => self.pdf(x).ln(),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let [a, b] = self.params;
        match self.family {
            Family::Exponential => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-a * x).exp_m1()
                }
            }
            Family::Gamma => {
                if x <= 0.0 {
                    0.0
                } else if x.is_infinite() {
                    1.0
                } else {
                    gamma_lr(a, b * x)
                }
            }
            Family::Weibull => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-(b * x).powf(a)).exp_m1()
                }
            }
            Family::LogNormal => {
                if x <= 0.0 {
                    0.0
                } else {
                    std_normal_cdf((x.ln() - a) / b)
                }
            }
            Family::Uniform => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Family::Power => {
                if x <= 0.0 {
                    0.0
                } else if x >= 1.0 {
                    1.0
                } else {
                    x.powf(a)
                }
            }
        }
    }

    /// Survival function 1 - F(x), computed without cancellation where possible.
    pub fn sf(&self, x: f64) -> f64 {
        let [a, b] = self.params;
        match self.family {
            Family::Exponential if x > 0.0 => (-a * x).exp(),
            Family::Gamma if x > 0.0 && x.is_finite() => gamma_ur(a, b * x),
            Family::Weibull if x > 0.0 => (-(b * x).powf(a)).exp(),
            Family::LogNormal if x > 0.0 => std_normal_sf((x.ln() - a) / b),
            _ => 1.0 - self.cdf(x),
        }
    }

    /// Inverse CDF for p in (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile probability must lie in (0, 1), got {p}")));
        }
        let [a, b] = self.params;
        Ok(match self.family {
            Family::Exponential => -(-p).ln_1p() / a,
            Family::Weibull => (-(-p).ln_1p()).powf(1.0 / a) / b,
            Family::LogNormal => (a + b * std_normal_quantile(p)).exp(),
            Family::Uniform => a + p * (b - a),
            Family::Power => p.powf(1.0 / a),
            Family::Gamma => standard_gamma_quantile(a, self.ln_norm, p)? / b,
        })
    }

    pub fn mean(&self) -> f64 {
        let [a, b] = self.params;
        match self.family {
            Family::Exponential => 1.0 / a,
            Family::Gamma => a / b,
            Family::Weibull => (ln_gamma(1.0 + 1.0 / a)).exp() / b,
            Family::LogNormal => (a + 0.5 * b * b).exp(),
            Family::Uniform => 0.5 * (a + b),
            Family::Power => a / (a + 1.0),
        }
    }

    /// Supremum of the density over the support (may be infinite).
    pub fn density_sup(&self) -> f64 {
        let [a, b] = self.params;
        match self.family {
            Family::Exponential => a,
            Family::Uniform => 1.0 / (b - a),
            Family::Power => {
                if a < 1.0 {
                    f64::INFINITY
                } else {
                    a
                }
            }
            Family::Gamma | Family::Weibull if a < 1.0 => f64::INFINITY,
            Family::Gamma => {
                if a == 1.0 {
                    b
                } else {
                    self.pdf((a - 1.0) / b)
                }
            }
            Family::Weibull => {
                if a == 1.0 {
                    b
                } else {
                    self.pdf(((a - 1.0) / a).powf(1.0 / a) / b)
                }
            }
            Family::LogNormal => self.pdf((a - b * b).exp()),
        }
    }

    /// Whether the density is strictly decreasing on its support.
    pub fn is_strictly_decreasing(&self) -> bool {
        let a = self.params[0];
        match self.family {
            Family::Exponential => true,
            Family::Gamma | Family::Weibull | Family::Power => a < 1.0 || (a == 1.0 && self.family != Family::Power),
            Family::LogNormal | Family::Uniform => false,
        }
    }

    /// For a strictly decreasing density, the point where it equals `y`.
    ///
    /// `None` if the density is not strictly decreasing or `y` lies outside
    /// its range.
    pub fn density_inverse(&self, y: f64) -> Option<f64> {
        if !self.is_strictly_decreasing() || !(y > 0.0) {
            return None;
        }
        let [a, b] = self.params;
        match self.family {
            Family::Exponential => (y <= a).then(|| -(y / a).ln() / a),
            Family::Power => (y >= a).then(|| (y / a).powf(1.0 / (a - 1.0))),
            Family::Gamma if a == 1.0 => (y <= b).then(|| -(y / b).ln() / b),
            Family::Weibull if a == 1.0 => (y <= b).then(|| -(y / b).ln() / b),
            _ => {
                // Bisection on the quantile level u: pdf(Q(u)) is decreasing in u.
                let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
                for _ in 0..QUANTILE_MAX_ITER {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let x = self.quantile(mid).ok()?;
                    if self.pdf(x) > y {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                self.quantile(0.5 * (lo + hi)).ok()
            }
        }
    }

    pub fn log_likelihood(&self, sample: &Sample) -> f64 {
        sample.values().iter().map(|&x| self.ln_pdf(x)).sum()
    }

    /// A central point of the law, used to centre variance computations.
    pub fn median(&self) -> f64 {
        self.quantile(0.5).unwrap_or_else(|_| self.mean())
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (i, p) in self.params().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl rand::distr::Distribution<f64> for Distribution {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        use rand_distr::{Exp, Gamma, LogNormal, Weibull};
        let [a, b] = self.params;
        // Parameters were validated at construction, so the constructors below cannot fail.
        match self.family {
            Family::Exponential => rng.sample(Exp::new(a).unwrap()),
            Family::Gamma => rng.sample(Gamma::new(a, 1.0 / b).unwrap()),
            Family::Weibull => rng.sample(Weibull::new(1.0 / b, a).unwrap()),
            Family::LogNormal => rng.sample(LogNormal::new(a, b).unwrap()),
            Family::Uniform => a + (b - a) * rng.random::<f64>(),
            Family::Power => rng.random::<f64>().powf(1.0 / a),
        }
    }
}

/// Quantile of Gamma(shape, 1) by bracketed Newton iteration on the regularized
/// incomplete gamma function. The upper tail is solved against `Q(a, x)` to keep
/// precision for p near 1.
fn standard_gamma_quantile(shape: f64, ln_gamma_shape: f64, p: f64) -> Result<f64> {
    let upper = p > 0.5;
    let q = 1.0 - p;
    let resid = |y: f64| -> f64 {
        if upper {
            q - gamma_ur(shape, y)
        } else {
            gamma_lr(shape, y) - p
        }
    };
    let density = |y: f64| ((shape - 1.0) * y.ln() - y - ln_gamma_shape).exp();

    // Starting point: Wilson–Hilferty, or the small-y series for tiny quantiles.
    let z = std_normal_quantile(p);
    let c = 1.0 / (9.0 * shape);
    let wh = shape * (1.0 - c + z * c.sqrt()).powi(3);
    let small = ((p.ln() + ln_gamma(shape + 1.0)) / shape).exp();
    let mut y = if wh > 0.0 && wh.is_finite() && !(small < 0.1 * shape) { wh } else { small };
    if !(y > 0.0 && y.is_finite()) {
        y = shape;
    }

    let mut lo = 0.0_f64;
    let mut hi = f64::INFINITY;
    for iter in 0..QUANTILE_MAX_ITER {
        let r = resid(y);
        if r == 0.0 {
            return Ok(y);
        }
        if r < 0.0 {
            lo = lo.max(y);
        } else {
            hi = hi.min(y);
        }
        let d = density(y);
        let mut next = y - r / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * y.max(lo) + 1.0 };
        }
        if (next - y).abs() <= 4.0 * f64::EPSILON * next.abs() || (iter > 5 && hi - lo <= 4.0 * f64::EPSILON * hi) {
            return Ok(next);
        }
        y = next;
    }
    Err(Error::NoConvergence {
        what: "gamma quantile",
        iterations: QUANTILE_MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    fn all_examples() -> Vec<Distribution> {
        vec![
            Distribution::exponential(2.0).unwrap(),
            Distribution::gamma(4.0255, 0.0557).unwrap(),
            Distribution::gamma(0.7, 2.0).unwrap(),
            Distribution::weibull(2.101, 0.0122).unwrap(),
            Distribution::weibull(0.8, 1.5).unwrap(),
            Distribution::lognormal(4.422567, 0.4031749).unwrap(),
            Distribution::uniform(-1.0, 3.0).unwrap(),
            Distribution::power(2.5).unwrap(),
            Distribution::power(0.6).unwrap(),
        ]
    }

    #[test]
    fn density_examples() {
        assert_eq!(Distribution::uniform(0.0, 1.0).unwrap().pdf(0.5), 1.0);
        assert_eq!(Distribution::exponential(2.0).unwrap().pdf(0.0), 2.0);
        let (a, l, x) = (2.101_f64, 0.0122_f64, 72.0_f64);
        let direct = l * a * (x * l).powf(a - 1.0) * (-(x * l).powf(a)).exp();
        let w = Distribution::weibull(a, l).unwrap();
        assert!((w.pdf(x) - direct).abs() < 1e-17);
        assert_eq!(w.pdf(-1.0), 0.0);
    }

    #[test]
    fn log_density_survives_underflow() {
        // pdf underflows to 0 far in the tail; the log-density must not.
        let far = 5000.0;
        for d in [
            Distribution::exponential(0.3).unwrap(),
            Distribution::gamma(2.0, 0.3).unwrap(),
            Distribution::weibull(1.5, 0.3).unwrap(),
            Distribution::lognormal(0.0, 0.3).unwrap(),
        ] {
            assert!(d.ln_pdf(far).is_finite(), "{d}");
            assert!((d.ln_pdf(2.0) - d.pdf(2.0).ln()).abs() < 1e-12, "{d}");
        }
        assert_eq!(Distribution::exponential(0.3).unwrap().ln_pdf(-1.0), f64::NEG_INFINITY);
    }

    #[test]
    fn cumulative_examples() {
        let e = Distribution::exponential(1.0).unwrap();
        assert!((e.cdf(1.0) - (1.0 - (-1f64).exp())).abs() < 1e-15);
        for d in all_examples() {
            assert_eq!(d.cdf(d.support().lo), 0.0, "{d}");
        }
        assert_eq!(Distribution::uniform(0.0, 4.0).unwrap().cdf(1.0), 0.25);
    }

    #[test]
    fn quantile_examples() {
        let e = Distribution::exponential(2.0).unwrap();
        assert!((e.quantile(0.5).unwrap() - 2f64.ln() / 2.0).abs() < 1e-15);
        assert_eq!(Distribution::uniform(0.0, 1.0).unwrap().quantile(0.25).unwrap(), 0.25);
        let g = Distribution::gamma(4.0255, 0.0557).unwrap();
        let x = g.quantile(g.cdf(70.0)).unwrap();
        assert!((x - 70.0).abs() < 1e-8);
        assert!(matches!(e.quantile(0.0), Err(Error::Domain(_))));
        assert!(matches!(e.quantile(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn densities_integrate_to_one() {
        for d in all_examples() {
            let s = d.support();
            let r = integrate(|x| d.pdf(x), s.lo, s.hi, 1e-11).unwrap();
            assert!((r.value - 1.0).abs() < 1e-8, "{d}: {}", r.value);
        }
    }

    #[test]
    fn gamma_quantile_extreme_levels() {
        for &(shape, rate) in &[(0.3, 1.0), (1.0, 2.0), (4.0255, 0.0557), (80.0, 3.0)] {
            let g = Distribution::gamma(shape, rate).unwrap();
            for &p in &[1e-12, 1e-6, 0.01, 0.5, 0.99, 1.0 - 1e-10] {
                let x = g.quantile(p).unwrap();
                if p > 0.5 {
                    assert!(((g.sf(x) - (1.0 - p)) / (1.0 - p)).abs() < 1e-8, "{g} p={p}");
                } else {
                    assert!(((g.cdf(x) - p) / p).abs() < 1e-8, "{g} p={p}");
                }
            }
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Distribution::exponential(0.0).is_err());
        assert!(Distribution::gamma(-1.0, 1.0).is_err());
        assert!(Distribution::lognormal(f64::NAN, 1.0).is_err());
        assert!(Distribution::uniform(2.0, 1.0).is_err());
        assert!(Distribution::new(Family::Weibull, &[1.0]).is_err());
    }

    #[test]
    fn density_inverse_for_decreasing_laws() {
        let e = Distribution::exponential(4.0).unwrap();
        let x = e.density_inverse(1.3).unwrap();
        assert!((e.pdf(x) - 1.3).abs() < 1e-13);
        assert!(e.density_inverse(4.5).is_none());
        let g = Distribution::gamma(0.6, 1.0).unwrap();
        let x = g.density_inverse(0.2).unwrap();
        assert!((g.pdf(x) - 0.2).abs() < 1e-9);
        assert!(Distribution::lognormal(0.0, 1.0).unwrap().density_inverse(0.1).is_none());
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("exp".parse::<Family>().unwrap(), Family::Exponential);
        assert!("cauchy".parse::<Family>().is_err());
    }
}
