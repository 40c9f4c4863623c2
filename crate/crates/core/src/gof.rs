//! Goodness-of-fit statistics, information criteria, the variance-normalized
//! preference rule, and multi-candidate model comparison.

use serde::{Deserialize, Serialize};

use crate::distributions::{fit_mle, Distribution, Family, Sample};
use crate::error::{Error, Result};
use crate::estimation::{empirical_measures, find, kde_with, KdeOptions};
use crate::exec::map_slice;
use crate::measures::{Measure, MeasureReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KsMethod {
    /// Limiting Kolmogorov series in `√n·D`, no estimation correction.
    #[default]
    Asymptotic,
    /// Exact finite-n Kolmogorov distribution.
    Exact,
    /// Exact for n ≤ 100, asymptotic above.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Method actually used (never `Auto`).
    pub method: KsMethod,
}

/// One-sample two-sided Kolmogorov–Smirnov statistic.
pub fn ks_statistic(s: &Sample, d: &Distribution) -> Result<f64> {
    s.require(1)?;
    let n = s.len() as f64;
    Ok(s.values().iter().enumerate().fold(0.0, |acc: f64, (i, &x)| {
        let f = d.cdf(x);
        acc.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
    }))
}

/// KS test with the default (asymptotic) p-value.
pub fn ks_test(s: &Sample, d: &Distribution) -> Result<KsResult> {
    ks_test_with(s, d, KsMethod::default())
}

pub fn ks_test_with(s: &Sample, d: &Distribution, method: KsMethod) -> Result<KsResult> {
    let statistic = ks_statistic(s, d)?;
    let n = s.len();
    let method = match method {
        KsMethod::Auto if n <= 100 => KsMethod::Exact,
        KsMethod::Auto => KsMethod::Asymptotic,
        m => m,
    };
    let p_value = match method {
        KsMethod::Exact => 1.0 - kolmogorov_cdf_exact(n, statistic),
        _ => kolmogorov_sf_asymptotic((n as f64).sqrt() * statistic),
    };
    Ok(KsResult {
        statistic,
        p_value: p_value.clamp(0.0, 1.0),
        method,
    })
}

/// `P(√n D > λ)` in the n → ∞ limit.
pub fn kolmogorov_sf_asymptotic(lambda: f64) -> f64 {
    use std::f64::consts::PI;
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.0 {
        // Jacobi-transformed series converges fast for small λ.
        let c = PI * PI / (8.0 * lambda * lambda);
        let s: f64 = (1..=20).map(|k| (-(((2 * k - 1) as f64).powi(2)) * c).exp()).sum();
        return 1.0 - (2.0 * PI).sqrt() / lambda * s;
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-18 {
            break;
        }
    }
    2.0 * s
}

/// `P(D_n < d)` by the Marsaglia–Tsang–Wang matrix-power method.
pub fn kolmogorov_cdf_exact(n: usize, d: f64) -> f64 {
    if n == 0 || d <= 0.0 {
        return 0.0;
    }
    if d >= 1.0 {
        return 1.0;
    }
    let nf = n as f64;
    let s = d * d * nf;
    // Far tail: the published algorithm switches to this approximation.
    if s > 7.24 || (s > 3.76 && n > 99) {
        return 1.0 - 2.0 * (-(2.000071 + 0.331 / nf.sqrt() + 1.409 / nf) * s).exp();
    }
    let k = (nf * d) as usize + 1;
    let m = 2 * k - 1;
    let h = k as f64 - nf * d;
    let mut hm = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            if i + 1 >= j {
                hm[i * m + j] = 1.0;
            }
        }
    }
    for i in 0..m {
        hm[i * m] -= h.powi(i as i32 + 1);
        hm[(m - 1) * m + i] -= h.powi((m - i) as i32);
    }
    if 2.0 * h - 1.0 > 0.0 {
        hm[(m - 1) * m] += (2.0 * h - 1.0).powi(m as i32);
    }
    for i in 0..m {
        for j in 0..=(i + 1).min(m - 1) {
            let mut f = 1.0;
            for g in 1..=(i + 1 - j) {
                f *= g as f64;
            }
            hm[i * m + j] /= f;
        }
    }
    let (q, mut eq) = matrix_power(&hm, m, n);
    let mut s = q[(k - 1) * m + k - 1];
    for i in 1..=n {
        s = s * i as f64 / nf;
        if s < 1e-140 {
            s *= 1e140;
            eq -= 140;
        }
    }
    s * 10f64.powi(eq)
}

fn matmul(a: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let mut c = vec![0.0; m * m];
    for i in 0..m {
        for l in 0..m {
            let ail = a[i * m + l];
            if ail == 0.0 {
                continue;
            }
            for j in 0..m {
                c[i * m + j] += ail * b[l * m + j];
            }
        }
    }
    c
}

/// `A^n` as (mantissa matrix, decimal exponent).
fn matrix_power(a: &[f64], m: usize, n: usize) -> (Vec<f64>, i32) {
    if n == 1 {
        return (a.to_vec(), 0);
    }
    let (v, ev) = matrix_power(a, m, n / 2);
    let b = matmul(&v, &v, m);
    let (mut v, mut e) = if n & 1 == 0 { (b, 2 * ev) } else { (matmul(a, &b, m), 2 * ev) };
    if v[(m / 2) * m + m / 2] > 1e140 {
        v.iter_mut().for_each(|x| *x *= 1e-140);
        e += 140;
    }
    (v, e)
}

/// Anderson–Darling statistic `A²` of a fully specified distribution.
pub fn ad_statistic(s: &Sample, d: &Distribution) -> Result<f64> {
    s.require(1)?;
    let xs = s.values();
    let n = xs.len();
    let mut ln_cdf = Vec::with_capacity(n);
    let mut ln_sf = Vec::with_capacity(n);
    for &x in xs {
        let (f, q) = (d.cdf(x), d.sf(x));
        if f <= 0.0 || q <= 0.0 {
            return Err(Error::BoundaryProbability(x));
        }
        ln_cdf.push(f.clamp(1e-300, 1.0 - 1e-16).ln());
        ln_sf.push(q.clamp(1e-16, 1.0 - 1e-300).ln());
    }
    let total: f64 = (0..n)
        .map(|i| (2 * i + 1) as f64 * (ln_cdf[i] + ln_sf[n - 1 - i]))
        .sum();
    Ok(-(n as f64) - total / n as f64)
}

/// Upper-tail p-value of `A²` for a fully specified distribution
/// (Marsaglia & Marsaglia 2004 approximation).
pub fn ad_p_value(a2: f64, n: usize) -> f64 {
    fn adinf(z: f64) -> f64 {
        if z <= 0.0 {
            return 0.0;
        }
        if z < 2.0 {
            (-1.2337141 / z).exp() / z.sqrt()
                * (2.00012 + (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) * z)
        } else {
            (-(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z).exp()).exp()
        }
    }
    fn errfix(n: f64, x: f64) -> f64 {
        let c = 0.01265 + 0.1757 / n;
        if x < c {
            let t = x / c;
            let t = t.sqrt() * (1.0 - t) * (49.0 * t - 102.0);
            t * (0.0037 / n.powi(3) + 0.00078 / (n * n) + 0.00006 / n)
        } else if x < 0.8 {
            let t = (x - c) / (0.8 - c);
            let t = -0.00022633 + (6.54034 - (14.6538 - (14.458 - (8.259 - 1.91864 * t) * t) * t) * t) * t;
            t * (0.04213 / n + 0.01365 / (n * n))
        } else {
            (-130.2137 + (745.2337 - (1705.091 - (1950.646 - (1116.360 - 255.7844 * x) * x) * x) * x) * x) / n
        }
    }
    let x = adinf(a2);
    (1.0 - (x + errfix(n as f64, x))).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoCriteria {
    pub log_likelihood: f64,
    pub aic: f64,
    /// Small-sample corrected AIC.
    pub caic: f64,
    pub bic: f64,
    pub hqic: f64,
}

pub fn info_criteria(d: &Distribution, s: &Sample, k: usize) -> Result<InfoCriteria> {
    let n = s.len();
    if n <= k + 1 {
        return Err(Error::Domain(format!("information criteria need n > k + 1 (n = {n}, k = {k})")));
    }
    let ll = d.log_likelihood(s);
    if !ll.is_finite() {
        return Err(Error::SupportViolation(format!("log-likelihood of {d} is not finite on the sample")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let aic = -2.0 * ll + 2.0 * kf;
    Ok(InfoCriteria {
        log_likelihood: ll,
        aic,
        caic: aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0),
        bic: -2.0 * ll + kf * nf.ln(),
        hqic: -2.0 * ll + 2.0 * kf * nf.ln().ln(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preferred {
    Y1,
    Y2,
    /// The rule does not apply (negative divergence); Y1 is kept by default.
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preference {
    pub preferred: Preferred,
    pub residual: f64,
}

/// Prefer Y₂ iff `j2 < (2 − √(v2/v1))·j1`, given `j1 ≤ j2`.
pub fn preference_criterion(j1: f64, j2: f64, v1: f64, v2: f64) -> Result<Preference> {
    if [j1, j2, v1, v2].iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("preference inputs must be finite".into()));
    }
    if !(v1 > 0.0 && v2 > 0.0) {
        return Err(Error::Domain(format!("variances must be positive, got {v1} and {v2}")));
    }
    if j1 > j2 {
        return Err(Error::Domain(format!("candidates must be ordered with j1 ≤ j2, got {j1} > {j2}")));
    }
    let residual = j2 - (2.0 - (v2 / v1).sqrt()) * j1;
    let preferred = if j1 < 0.0 {
        Preferred::Undefined
    } else if residual < 0.0 {
        Preferred::Y2
    } else {
        Preferred::Y1
    };
    Ok(Preference { preferred, residual })
}

/// A model to compare: a family fitted by maximum likelihood, or a fixed
/// distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateSpec {
    Fit(Family),
    Fixed(Distribution),
}

impl CandidateSpec {
    pub fn label(&self) -> String {
        match self {
            CandidateSpec::Fit(f) => f.name().to_string(),
            CandidateSpec::Fixed(d) => d.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateFit {
    pub distribution: Distribution,
    pub log_likelihood: f64,
    pub ks: KsResult,
    /// Always the exact finite-n p-value, for reference.
    pub ks_exact: KsResult,
    /// `None` when a data point sits on the support boundary.
    pub ad_statistic: Option<f64>,
    /// `None` when n ≤ k + 1.
    pub info: Option<InfoCriteria>,
    pub measures: Vec<MeasureReport>,
}

impl CandidateFit {
    pub fn measure(&self, m: Measure) -> Option<f64> {
        find(&self.measures, m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub label: String,
    pub family: Family,
    pub fitted: bool,
    pub result: std::result::Result<CandidateFit, CandidateFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateFailure {
    pub category: String,
    pub message: String,
}

impl From<Error> for CandidateFailure {
    fn from(e: Error) -> Self {
        CandidateFailure {
            category: e.category().to_string(),
            message: e.to_string(),
        }
    }
}

/// Outcome of the preference rule on one pair of candidates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    /// Candidate indices; `y1` has the smaller divergence.
    pub y1: usize,
    pub y2: usize,
    pub preferred: Preferred,
    /// Index of the chosen candidate (`y1` when undefined).
    pub chosen: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoRanking {
    pub aic: Option<usize>,
    pub caic: Option<usize>,
    pub bic: Option<usize>,
    pub hqic: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub bandwidth: f64,
    pub candidates: Vec<CandidateReport>,
    /// Rule on (J(X|Y), VarJ(X|Y)) over the two best-by-J candidates.
    pub j_decision: Option<Decision>,
    /// Rule on (K, VarK) over the same two candidates, ordered by K.
    pub k_decision: Option<Decision>,
    /// Lowest-criterion candidate per information criterion.
    pub best_info: InfoRanking,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CompareConfig {
    pub kde: KdeOptions,
    pub ks_method: KsMethod,
}

fn evaluate_candidate(
    s: &Sample,
    spec: &CandidateSpec,
    est: &crate::estimation::DensityEstimate,
    cfg: &CompareConfig,
) -> Result<CandidateFit> {
    let d = match spec {
        CandidateSpec::Fit(f) => fit_mle(*f, s)?,
        CandidateSpec::Fixed(d) => *d,
    };
    let k = match spec {
        CandidateSpec::Fit(f) => f.param_count(),
        CandidateSpec::Fixed(_) => 0,
    };
    let log_likelihood = d.log_likelihood(s);
    Ok(CandidateFit {
        log_likelihood,
        ks: ks_test_with(s, &d, cfg.ks_method)?,
        ks_exact: ks_test_with(s, &d, KsMethod::Exact)?,
        ad_statistic: ad_statistic(s, &d).ok(),
        info: info_criteria(&d, s, k).ok(),
        measures: empirical_measures(est, &d)?,
        distribution: d,
    })
}

fn decide(fits: &[(usize, &CandidateFit)], m: Measure, v: Measure) -> Result<Option<Decision>> {
    let [a, b] = fits else { return Ok(None) };
    let value = |c: &CandidateFit, key| c.measure(key).ok_or(Error::Domain(format!("missing {}", key)));
    let (mut first, mut second) = (*a, *b);
    if value(first.1, m)? > value(second.1, m)? {
        std::mem::swap(&mut first, &mut second);
    }
    let p = preference_criterion(value(first.1, m)?, value(second.1, m)?, value(first.1, v)?, value(second.1, v)?)?;
    Ok(Some(Decision {
        y1: first.0,
        y2: second.0,
        preferred: p.preferred,
        chosen: if p.preferred == Preferred::Y2 { second.0 } else { first.0 },
        residual: p.residual,
    }))
}

/// Fit or evaluate every candidate against the sample and its KDE, then
/// apply the preference rule.
pub fn compare_models(s: &Sample, candidates: &[CandidateSpec], cfg: &CompareConfig) -> Result<ComparisonReport> {
    if candidates.len() < 2 {
        return Err(Error::InvalidParameters("compare_models needs at least two candidates".into()));
    }
    let est = kde_with(s, &cfg.kde)?;
    let reports: Vec<CandidateReport> = map_slice(candidates, |spec| CandidateReport {
        label: spec.label(),
        family: match spec {
            CandidateSpec::Fit(f) => *f,
            CandidateSpec::Fixed(d) => d.family(),
        },
        fitted: matches!(spec, CandidateSpec::Fit(_)),
        result: evaluate_candidate(s, spec, &est, cfg).map_err(CandidateFailure::from),
    });

    let mut ok: Vec<(usize, &CandidateFit)> = reports
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.result.as_ref().ok().map(|f| (i, f)))
        .collect();
    let j_of = |f: &CandidateFit| f.measure(Measure::Discrimination).unwrap_or(f64::INFINITY);
    ok.sort_by(|a, b| j_of(a.1).total_cmp(&j_of(b.1)).then(a.0.cmp(&b.0)));
    let best_two: Vec<_> = ok.iter().take(2).copied().collect();
    let j_decision = decide(&best_two, Measure::Discrimination, Measure::VarjDivergence)?;
    let k_decision = decide(&best_two, Measure::Kl, Measure::VarKl)?;

    let best = |key: fn(&InfoCriteria) -> f64| -> Option<usize> {
        ok.iter()
            .filter_map(|(i, f)| f.info.as_ref().map(|c| (*i, key(c))))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
            .map(|(i, _)| i)
    };
    let best_info = InfoRanking {
        aic: best(|c| c.aic),
        caic: best(|c| c.caic),
        bic: best(|c| c.bic),
        hqic: best(|c| c.hqic),
    };

    Ok(ComparisonReport {
        n: s.len(),
        bandwidth: est.bandwidth,
        candidates: reports,
        j_decision,
        k_decision,
        best_info,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{BEARINGS, LOCOMOTIVE};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn ks_perfect_fit() {
        let d = Distribution::gamma(2.0, 1.0).unwrap();
        let n = 50;
        let xs: Vec<f64> = (0..n).map(|i| d.quantile((i as f64 + 0.5) / n as f64).unwrap()).collect();
        let s = Sample::new(xs).unwrap();
        close(ks_statistic(&s, &d).unwrap(), 0.01, 1e-12);
    }

    #[test]
    fn kolmogorov_exact_reference_values() {
        // n = 1: P(D < d) = 2d − 1 for d ∈ [½, 1].
        close(kolmogorov_cdf_exact(1, 0.75), 0.5, 1e-14);
        // n = 2: P(D < d) = 2(2d − ½)² − ... check against direct integration of
        // the uniform order-statistic region for d = 0.6.
        let direct = {
            // P(max(|U(1) − ·|) < d) by 2-D grid integration of 2·1{u1<u2}.
            let m = 2000;
            let mut acc = 0.0;
            for a in 0..m {
                let u1 = (a as f64 + 0.5) / m as f64;
                for b in 0..m {
                    let u2 = (b as f64 + 0.5) / m as f64;
                    if u1 < u2 {
                        let dn = (0.5 - u1).max(u1).max(1.0 - u2).max(u2 - 0.5);
                        if dn < 0.6 {
                            acc += 2.0;
                        }
                    }
                }
            }
            acc / (m * m) as f64
        };
        close(kolmogorov_cdf_exact(2, 0.6), direct, 2e-3);
        // Large n approaches the asymptotic law.
        let n = 400;
        let lambda = 1.1;
        close(
            1.0 - kolmogorov_cdf_exact(n, lambda / (n as f64).sqrt()),
            kolmogorov_sf_asymptotic(lambda),
            0.01,
        );
    }

    #[test]
    fn asymptotic_series_branches_join() {
        let below = kolmogorov_sf_asymptotic(1.0 - 1e-12);
        let above = kolmogorov_sf_asymptotic(1.0);
        close(below, above, 1e-10);
        close(kolmogorov_sf_asymptotic(1.3580986), 0.05, 1e-6);
    }

    #[test]
    fn ks_methods() {
        let s = Sample::new(LOCOMOTIVE.to_vec()).unwrap();
        let d = fit_mle(Family::LogNormal, &s).unwrap();
        let a = ks_test(&s, &d).unwrap();
        assert_eq!(a.method, KsMethod::Asymptotic);
        close(a.p_value, kolmogorov_sf_asymptotic((37f64).sqrt() * a.statistic), 0.0);
        let e = ks_test_with(&s, &d, KsMethod::Auto).unwrap();
        assert_eq!(e.method, KsMethod::Exact);
        // The finite-n law has a lighter tail than its limit at this λ.
        assert!(e.p_value < a.p_value);
    }

    #[test]
    fn ad_near_perfect_fit() {
        let d = Distribution::weibull(1.5, 2.0).unwrap();
        let n = 200;
        let xs: Vec<f64> = (1..=n).map(|i| d.quantile(i as f64 / (n as f64 + 1.0)).unwrap()).collect();
        let a2 = ad_statistic(&Sample::new(xs).unwrap(), &d).unwrap();
        assert!(a2 > 0.0 && a2 < 0.3, "{a2}");
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let s = Sample::new(vec![0.0, 0.5]).unwrap();
        assert_eq!(ad_statistic(&s, &u), Err(Error::BoundaryProbability(0.0)));
    }

    #[test]
    fn ad_p_value_reference() {
        // Asymptotic 5% critical value of A² is 2.492.
        close(ad_p_value(2.492, 1_000_000), 0.05, 1e-3);
        assert!(ad_p_value(0.3, 20) > 0.9);
    }

    #[test]
    fn information_criteria() {
        let s = Sample::new(BEARINGS.to_vec()).unwrap();
        let d = fit_mle(Family::Weibull, &s).unwrap();
        let c = info_criteria(&d, &s, 2).unwrap();
        close(c.caic - c.aic, 0.6, 1e-12);
        assert!(c.aic <= c.caic);
        let tiny = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(info_criteria(&d, &tiny, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn preference_examples() {
        let p = preference_criterion(0.1, 0.2, 0.5, 0.5).unwrap();
        assert_eq!(p.preferred, Preferred::Y1);
        close(p.residual, 0.1, 1e-15);
        let p = preference_criterion(0.12333932, 0.1396457, 0.2358482, 0.1866185).unwrap();
        assert_eq!(p.preferred, Preferred::Y1);
        close(p.residual, 0.00268, 1e-5);
        let p = preference_criterion(0.3, 0.3, 1.0, 0.25).unwrap();
        assert_eq!(p.preferred, Preferred::Y2);
        close(p.residual, 0.3 * (0.5 - 1.0), 1e-15);
        assert_eq!(preference_criterion(-0.1, 0.2, 1.0, 1.0).unwrap().preferred, Preferred::Undefined);
        assert!(preference_criterion(0.1, 0.2, 0.0, 1.0).is_err());
        assert!(preference_criterion(0.3, 0.2, 1.0, 1.0).is_err());
    }

    #[test]
    fn bearings_comparison() {
        let s = Sample::new(BEARINGS.to_vec()).unwrap();
        let r = compare_models(
            &s,
            &[CandidateSpec::Fit(Family::Weibull), CandidateSpec::Fit(Family::Gamma)],
            &CompareConfig::default(),
        )
        .unwrap();
        assert_eq!(r.best_info.aic, Some(1));
        assert_eq!(r.best_info.bic, Some(1));
        assert!(r.j_decision.is_some() && r.k_decision.is_some());
    }

    #[test]
    fn failed_candidate_is_reported() {
        let s = Sample::new(LOCOMOTIVE.to_vec()).unwrap();
        let r = compare_models(
            &s,
            &[
                CandidateSpec::Fit(Family::LogNormal),
                CandidateSpec::Fit(Family::Power),
                CandidateSpec::Fit(Family::Gamma),
            ],
            &CompareConfig::default(),
        )
        .unwrap();
        assert!(r.candidates[1].result.is_err());
        let d = r.j_decision.unwrap();
        assert!(d.y1 != 1 && d.y2 != 1);
    }
}
