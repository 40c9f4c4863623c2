//! Scalar information measures of one density or a pair of densities.
//!
//! Each measure is either the mean or the variance of a pointwise functional
//! `φ(X)` with `X ~ f`:
//!
//! | measure            | φ(x)                | statistic |
//! |--------------------|---------------------|-----------|
//! | extropy J          | −½ f(x)             | mean      |
//! | varextropy         | −½ f(x)             | variance  |
//! | inaccuracy J(X,Y)  | −½ g(x)             | mean      |
//! | VarJ(X,Y)          | −½ g(x)             | variance  |
//! | J(X\|Y)            | ½ (f(x) − g(x))     | mean      |
//! | VarJ(X\|Y)         | ½ (f(x) − g(x))     | variance  |
//! | entropy H          | −ln f(x)            | mean      |
//! | varentropy V       | −ln f(x)            | variance  |
//! | K(X,Y)             | ln f(x) − ln g(x)   | mean      |
//! | VarK(X,Y)          | ln f(x) − ln g(x)   | variance  |
//!
//! Weighted variants multiply φ by `x` and need a non-negative support.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::{Distribution, Interval};
use crate::error::{Error, Result};
use crate::quadrature::{self, IntegralResult, DEFAULT_TOL};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Grid,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
            Method::Grid => "grid",
        })
    }
}

/// The measure catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    Extropy,
    Varextropy,
    Inaccuracy,
    VarjInaccuracy,
    Discrimination,
    VarjDivergence,
    Entropy,
    Varentropy,
    Kl,
    VarKl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Functional {
    NegHalfF,
    NegHalfG,
    HalfDiff,
    NegLnF,
    LogRatio,
}

impl Measure {
    pub const ALL: [Measure; 10] = [
        Measure::Extropy,
        Measure::Varextropy,
        Measure::Inaccuracy,
        Measure::VarjInaccuracy,
        Measure::Discrimination,
        Measure::VarjDivergence,
        Measure::Entropy,
        Measure::Varentropy,
        Measure::Kl,
        Measure::VarKl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Extropy => "extropy",
            Measure::Varextropy => "varextropy",
            Measure::Inaccuracy => "inaccuracy",
            Measure::VarjInaccuracy => "varj-inaccuracy",
            Measure::Discrimination => "discrimination",
            Measure::VarjDivergence => "varj-divergence",
            Measure::Entropy => "entropy",
            Measure::Varentropy => "varentropy",
            Measure::Kl => "kl",
            Measure::VarKl => "var-kl",
        }
    }

    /// Conventional mathematical symbol.
    pub fn symbol(self, weighted: bool) -> String {
        let w = if weighted { "^w" } else { "" };
        match self {
            Measure::Extropy => format!("J{w}(X)"),
            Measure::Varextropy => format!("VarJ{w}(X)"),
            Measure::Inaccuracy => format!("J{w}(X,Y)"),
            Measure::VarjInaccuracy => format!("VarJ{w}(X,Y)"),
            Measure::Discrimination => format!("J{w}(X|Y)"),
            Measure::VarjDivergence => format!("VarJ{w}(X|Y)"),
            Measure::Entropy => "H(X)".into(),
            Measure::Varentropy => "V(X)".into(),
            Measure::Kl => "K(X,Y)".into(),
            Measure::VarKl => "VarK(X,Y)".into(),
        }
    }

    /// Catalogue key, prefixed with `weighted-` for weighted variants.
    pub fn key(self, weighted: bool) -> String {
        if weighted {
            format!("weighted-{}", self.name())
        } else {
            self.name().to_string()
        }
    }

    pub fn needs_pair(self) -> bool {
        !matches!(
            self,
            Measure::Extropy | Measure::Varextropy | Measure::Entropy | Measure::Varentropy
        )
    }

    pub fn is_variance(self) -> bool {
        matches!(
            self,
            Measure::Varextropy
                | Measure::VarjInaccuracy
                | Measure::VarjDivergence
                | Measure::Varentropy
                | Measure::VarKl
        )
    }

    pub fn supports_weighting(self) -> bool {
        !matches!(
            self,
            Measure::Entropy | Measure::Varentropy | Measure::Kl | Measure::VarKl
        )
    }

    fn functional(self) -> Functional {
        match self {
            Measure::Extropy | Measure::Varextropy => Functional::NegHalfF,
            Measure::Inaccuracy | Measure::VarjInaccuracy => Functional::NegHalfG,
            Measure::Discrimination | Measure::VarjDivergence => Functional::HalfDiff,
            Measure::Entropy | Measure::Varentropy => Functional::NegLnF,
            Measure::Kl | Measure::VarKl => Functional::LogRatio,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown measure '{s}'")))
    }
}

/// A computed measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub name: Measure,
    pub value: f64,
    pub abs_error: f64,
    pub weighted: bool,
    pub method: Method,
}

impl MeasureReport {
    pub fn closed_form(name: Measure, weighted: bool, value: f64) -> Self {
        MeasureReport {
            name,
            value,
            abs_error: 0.0,
            weighted,
            method: Method::ClosedForm,
        }
    }

    pub fn key(&self) -> String {
        self.name.key(self.weighted)
    }
}

/// Anything that can play the role of a density in a measure.
pub trait DensityLike {
    fn pdf(&self, x: f64) -> f64;

    fn ln_pdf(&self, x: f64) -> f64 {
        self.pdf(x).ln()
    }

    fn cdf(&self, x: f64) -> f64;

    fn support(&self) -> Interval;

    /// `E[h(X)]` under this density.
    fn expect(&self, h: &dyn Fn(f64) -> f64, tol: f64) -> Result<IntegralResult>;

    fn method(&self) -> Method;

    /// A point well inside the support, used to centre variance integrands.
    fn centre(&self) -> f64;
}

impl DensityLike for Distribution {
    fn pdf(&self, x: f64) -> f64 {
        Distribution::pdf(self, x)
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        Distribution::ln_pdf(self, x)
    }

    fn cdf(&self, x: f64) -> f64 {
        Distribution::cdf(self, x)
    }

    fn support(&self) -> Interval {
        Distribution::support(self)
    }

    fn expect(&self, h: &dyn Fn(f64) -> f64, tol: f64) -> Result<IntegralResult> {
        quadrature::expectation(self, h, tol)
    }

    fn method(&self) -> Method {
        Method::Quadrature
    }

    fn centre(&self) -> f64 {
        self.median()
    }
}

/// Measure evaluation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluator {
    /// Absolute quadrature tolerance.
    pub tol: f64,
    /// Relative accuracy target; integrals much smaller than `tol` are
    /// re-integrated to this precision.
    pub rel_tol: f64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator {
            tol: DEFAULT_TOL,
            rel_tol: 1e-12,
        }
    }
}

impl Evaluator {
    pub fn with_tol(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Evaluator { tol, ..Self::default() })
    }

    /// `E_f[h]`, tightened to `rel_tol` relative when the value is small.
    pub fn expect(&self, d: &dyn DensityLike, h: &dyn Fn(f64) -> f64) -> Result<IntegralResult> {
        let r = d.expect(h, self.tol)?;
        if d.method() == Method::Grid {
            return Ok(r);
        }
        let target = self.rel_tol * r.value.abs();
        if target > 0.0 && target < self.tol && r.abs_error_estimate > target {
            return d.expect(h, target.max(1e-280));
        }
        Ok(r)
    }

    /// `(mean, variance, error)` of `φ(X)` for `X ~ d`.
    ///
    /// The variance is computed as `E[(φ−c)²] − (E[φ−c])²` with `c = φ(centre)`,
    /// which is exactly zero when φ is constant.
    fn moments(&self, d: &dyn DensityLike, phi: &dyn Fn(f64) -> f64, variance: bool) -> Result<(f64, f64)> {
        if !variance {
            let r = self.expect(d, phi)?;
            return Ok((r.value, r.abs_error_estimate));
        }
        let mut c = phi(d.centre());
        if !c.is_finite() {
            c = 0.0;
        }
        let d1 = self.expect(d, &|x| phi(x) - c)?;
        let d2 = self.expect(d, &|x| {
            let v = phi(x) - c;
            v * v
        })?;
        let value = d2.value - d1.value * d1.value;
        let err = d2.abs_error_estimate + 2.0 * d1.value.abs() * d1.abs_error_estimate;
        Ok((value, err))
    }

    /// Evaluate any catalogue measure. `dy` is required for pair measures.
    pub fn evaluate(
        &self,
        measure: Measure,
        dx: &dyn DensityLike,
        dy: Option<&dyn DensityLike>,
        weighted: bool,
    ) -> Result<MeasureReport> {
        if weighted {
            if !measure.supports_weighting() {
                return Err(Error::InvalidParameters(format!("{measure} has no weighted form")));
            }
            let s = dx.support();
            if !s.is_non_negative() {
                return Err(Error::SupportViolation(format!(
                    "weighted measures need a non-negative support, got {s}"
                )));
            }
        }
        let dy = if measure.needs_pair() {
            let dy = dy.ok_or_else(|| Error::InvalidParameters(format!("{measure} needs two densities")))?;
            check_common_support(dx, dy)?;
            Some(dy)
        } else {
            None
        };

        let f = |x: f64| dx.pdf(x);
        let g = |x: f64| dy.map_or(0.0, |d| d.pdf(x));
        let base: Box<dyn Fn(f64) -> f64 + '_> = match measure.functional() {
            Functional::NegHalfF => Box::new(move |x| -0.5 * f(x)),
            Functional::NegHalfG => Box::new(move |x| -0.5 * g(x)),
            Functional::HalfDiff => Box::new(move |x| 0.5 * (f(x) - g(x))),
            Functional::NegLnF => Box::new(move |x| -dx.ln_pdf(x)),
            Functional::LogRatio => {
                let dy = dy.expect("pair measure");
                Box::new(move |x| dx.ln_pdf(x) - dy.ln_pdf(x))
            }
        };
        let phi: Box<dyn Fn(f64) -> f64 + '_> = if weighted {
            Box::new(move |x| x * base(x))
        } else {
            base
        };

        let (value, abs_error) = self.moments(dx, &*phi, measure.is_variance()).map_err(|e| match (e, measure.functional()) {
            (Error::NonFiniteIntegrand { x }, Functional::LogRatio) => {
                Error::SupportViolation(format!("reference density vanishes where f > 0 (x = {x})"))
            }
            (e, _) => e,
        })?;
        Ok(MeasureReport {
            name: measure,
            value,
            abs_error,
            weighted,
            method: dx.method(),
        })
    }

    /// `Cov_f(h1(X), h2(X))`.
    pub fn density_cov(
        &self,
        d: &dyn DensityLike,
        h1: &dyn Fn(f64) -> f64,
        h2: &dyn Fn(f64) -> f64,
    ) -> Result<f64> {
        let m = d.centre();
        let (c1, c2) = (h1(m), h2(m));
        let (c1, c2) = (if c1.is_finite() { c1 } else { 0.0 }, if c2.is_finite() { c2 } else { 0.0 });
        let e1 = self.expect(d, &|x| h1(x) - c1)?.value;
        let e2 = self.expect(d, &|x| h2(x) - c2)?.value;
        let e12 = self.expect(d, &|x| (h1(x) - c1) * (h2(x) - c2))?.value;
        Ok(e12 - e1 * e2)
    }
}

fn check_common_support(dx: &dyn DensityLike, dy: &dyn DensityLike) -> Result<()> {
    let (a, b) = (dx.support(), dy.support());
    if a != b {
        return Err(Error::SupportMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// Extropy `J(X) = −½∫f²`, or `J^w(X) = −½∫x f²` when `weighted`.
pub fn extropy(d: &dyn DensityLike, weighted: bool) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::Extropy, d, None, weighted)
}

/// Varextropy `Var[−½ f(X)]`, or `Var[−½ X f(X)]` when `weighted`.
pub fn varextropy(d: &dyn DensityLike, weighted: bool) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::Varextropy, d, None, weighted)
}

/// Inaccuracy `J(X,Y) = −½∫fg`.
pub fn inaccuracy(dx: &dyn DensityLike, dy: &dyn DensityLike, weighted: bool) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::Inaccuracy, dx, Some(dy), weighted)
}

/// Discrimination `J(X|Y) = ½∫f(f−g)`.
pub fn discrimination(dx: &dyn DensityLike, dy: &dyn DensityLike, weighted: bool) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::Discrimination, dx, Some(dy), weighted)
}

/// Varjinaccuracy `VarJ(X,Y) = Var_f[−½ g(X)]` (weighted: `Var_f[−½ X g(X)]`).
pub fn varj_inaccuracy(dx: &dyn DensityLike, dy: &dyn DensityLike, weighted: bool) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::VarjInaccuracy, dx, Some(dy), weighted)
}

/// Dispersion index `VarJ(X|Y) = Var_f[½(f(X) − g(X))]`.
pub fn varj_divergence(dx: &dyn DensityLike, dy: &dyn DensityLike) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::VarjDivergence, dx, Some(dy), false)
}

/// Kullback–Leibler divergence `E_f[ln f/g]`.
pub fn kl_divergence(dx: &dyn DensityLike, dy: &dyn DensityLike) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::Kl, dx, Some(dy), false)
}

/// `Var_f[ln f(X)/g(X)]`.
pub fn var_kl(dx: &dyn DensityLike, dy: &dyn DensityLike) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::VarKl, dx, Some(dy), false)
}

/// Differential entropy `−∫ f ln f`.
pub fn entropy(d: &dyn DensityLike) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::Entropy, d, None, false)
}

/// Varentropy `Var[ln f(X)]`.
pub fn varentropy(d: &dyn DensityLike) -> Result<MeasureReport> {
    Evaluator::default().evaluate(Measure::Varentropy, d, None, false)
}

/// `E_f[h1 h2] − E_f[h1] E_f[h2]`.
pub fn density_cov(d: &dyn DensityLike, h1: &dyn Fn(f64) -> f64, h2: &dyn Fn(f64) -> f64) -> Result<f64> {
    Evaluator::default().density_cov(d, h1, h2)
}

/// Exact values for exponential laws (`f = λe^{−λx}`, `g = ηe^{−ηx}`).
pub mod closed_form {
    pub fn exp_extropy(lambda: f64) -> f64 {
        -lambda / 4.0
    }

    pub fn exp_varextropy(lambda: f64) -> f64 {
        lambda * lambda / 48.0
    }

    /// Scale-free: −1/8 for every rate.
    pub fn exp_weighted_extropy(_lambda: f64) -> f64 {
        -0.125
    }

    /// Scale-free: ¼·2/27 − 1/64.
    pub fn exp_weighted_varextropy(_lambda: f64) -> f64 {
        5.0 / 1728.0
    }

    pub fn exp_inaccuracy(lambda: f64, eta: f64) -> f64 {
        -0.5 * lambda * eta / (lambda + eta)
    }

    pub fn exp_weighted_inaccuracy(lambda: f64, eta: f64) -> f64 {
        -0.5 * eta * lambda / (eta + lambda).powi(2)
    }

    pub fn exp_varj_inaccuracy(lambda: f64, eta: f64) -> f64 {
        lambda * eta.powi(4) / (4.0 * (lambda + 2.0 * eta) * (lambda + eta).powi(2))
    }

    pub fn exp_weighted_varj_inaccuracy(lambda: f64, eta: f64) -> f64 {
        let (l, e) = (lambda, eta);
        0.25 * e * e * l * (2.0 * e.powi(4) + 2.0 * e * l.powi(3) + l.powi(4))
            / ((e + l).powi(4) * (2.0 * e + l).powi(3))
    }

    pub fn exp_discrimination(lambda: f64, eta: f64) -> f64 {
        0.5 * (lambda / 2.0 - lambda * eta / (lambda + eta))
    }

    pub fn exp_varj_divergence(lambda: f64, eta: f64) -> f64 {
        let (l, e) = (lambda, eta);
        let var_f = l * l / 12.0;
        let var_g = l * e * e / (l + 2.0 * e) - (l * e / (l + e)).powi(2);
        let cov = l * l * e / (2.0 * l + e) - 0.5 * l * (l * e / (l + e));
        0.25 * (var_f + var_g - 2.0 * cov)
    }

    pub fn exp_kl(lambda: f64, eta: f64) -> f64 {
        (lambda / eta).ln() + eta / lambda - 1.0
    }

    pub fn exp_var_kl(lambda: f64, eta: f64) -> f64 {
        ((eta - lambda) / lambda).powi(2)
    }

    pub fn exp_entropy(lambda: f64) -> f64 {
        1.0 - lambda.ln()
    }

    pub fn exp_varentropy(_lambda: f64) -> f64 {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(r: f64) -> Distribution {
        Distribution::exponential(r).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn extropy_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        close(extropy(&u, false).unwrap().value, -0.5, 1e-12);
        close(extropy(&exp(1.0), false).unwrap().value, -0.25, 1e-12);
        // −½·4∫x e^{−4x} = −½·4/16
        close(extropy(&exp(2.0), true).unwrap().value, -0.125, 1e-12);
    }

    #[test]
    fn varextropy_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert_eq!(varextropy(&u, false).unwrap().value, 0.0);
        close(varextropy(&exp(2.0), false).unwrap().value, 1.0 / 12.0, 1e-12);
        close(varextropy(&exp(1.0), true).unwrap().value, 5.0 / 1728.0, 1e-13);
    }

    #[test]
    fn inaccuracy_examples() {
        close(inaccuracy(&exp(1.0), &exp(1.0), false).unwrap().value, -0.25, 1e-12);
        close(inaccuracy(&exp(5.0), &exp(4.0), false).unwrap().value, -10.0 / 9.0, 1e-11);
        close(inaccuracy(&exp(1.0), &exp(1.0), true).unwrap().value, -0.125, 1e-12);
    }

    #[test]
    fn discrimination_examples() {
        close(discrimination(&exp(2.0), &exp(2.0), false).unwrap().value, 0.0, 1e-15);
        close(discrimination(&exp(2.0), &exp(3.0), false).unwrap().value, -0.1, 1e-12);
        let j_xy = inaccuracy(&exp(2.0), &exp(3.0), false).unwrap().value;
        let j_x = extropy(&exp(2.0), false).unwrap().value;
        close(j_xy, -0.6, 1e-12);
        close(j_x, -0.5, 1e-12);
    }

    #[test]
    fn varj_inaccuracy_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let p = Distribution::power(2.7).unwrap();
        assert_eq!(varj_inaccuracy(&p, &u, false).unwrap().value, 0.0);
        close(varj_inaccuracy(&exp(5.0), &exp(4.0), false).unwrap().value, 0.3038936372, 1e-9);
        close(varj_inaccuracy(&exp(1.0), &exp(1.0), true).unwrap().value, 5.0 / 1728.0, 1e-13);
    }

    #[test]
    fn varj_divergence_examples() {
        assert_eq!(varj_divergence(&exp(2.0), &exp(2.0)).unwrap().value, 0.0);
        close(varj_divergence(&exp(2.0), &exp(3.0)).unwrap().value, 0.028690, 1e-5);
        // ¼[Var f + Var g − 2Cov(f, g)] with exponential moments E_f[f^a g^b]:
        // rates (2, 0.03) → 0.0832234, rates (0.03, 3) → 0.0107738.
        close(varj_divergence(&exp(2.0), &exp(0.03)).unwrap().value, 0.08322336869599956, 1e-10);
        close(varj_divergence(&exp(0.03), &exp(3.0)).unwrap().value, 0.0107738090462692, 1e-10);
    }

    #[test]
    fn kl_examples() {
        close(kl_divergence(&exp(2.0), &exp(2.0)).unwrap().value, 0.0, 1e-15);
        let expect = (2.0f64 / 3.0).ln() + 1.5 - 1.0;
        close(kl_divergence(&exp(2.0), &exp(3.0)).unwrap().value, expect, 1e-11);
        close(var_kl(&exp(2.0), &exp(3.0)).unwrap().value, 0.25, 1e-11);
        assert_eq!(var_kl(&exp(2.0), &exp(2.0)).unwrap().value, 0.0);
    }

    #[test]
    fn entropy_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert_eq!(entropy(&u).unwrap().value, 0.0);
        assert_eq!(varentropy(&u).unwrap().value, 0.0);
        close(entropy(&exp(1.0)).unwrap().value, 1.0, 1e-11);
        for r in [0.3, 1.0, 7.0] {
            close(varentropy(&exp(r)).unwrap().value, 1.0, 1e-10);
        }
    }

    #[test]
    fn covariance_examples() {
        let d = exp(1.0);
        let c = density_cov(&d, &|_| 3.0, &|x| x).unwrap();
        assert_eq!(c, 0.0);
        let v = density_cov(&d, &|x| (-x).exp(), &|x| (-x).exp()).unwrap();
        close(v, 1.0 / 12.0, 1e-12);
    }

    #[test]
    fn support_checks() {
        let u = Distribution::uniform(-1.0, 1.0).unwrap();
        assert!(matches!(extropy(&u, true), Err(Error::SupportViolation(_))));
        assert!(matches!(
            inaccuracy(&exp(1.0), &Distribution::power(2.0).unwrap(), false),
            Err(Error::SupportMismatch(_))
        ));
    }

    #[test]
    fn closed_forms_match_quadrature() {
        use closed_form::*;
        for &(l, e) in &[(0.5, 2.0), (5.0, 4.0), (1.0, 0.1)] {
            let (x, y) = (exp(l), exp(e));
            close(varj_divergence(&x, &y).unwrap().value, exp_varj_divergence(l, e), 1e-10);
            close(discrimination(&x, &y, false).unwrap().value, exp_discrimination(l, e), 1e-10);
            close(kl_divergence(&x, &y).unwrap().value, exp_kl(l, e), 1e-10);
            close(var_kl(&x, &y).unwrap().value, exp_var_kl(l, e), 1e-9);
            close(entropy(&x).unwrap().value, exp_entropy(l), 1e-10);
        }
    }

    #[test]
    fn names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert_eq!(Measure::VarjInaccuracy.key(true), "weighted-varj-inaccuracy");
    }
}
