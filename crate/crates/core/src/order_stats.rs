//! Order statistics and the Beta-expectation forms of their measures.
//!
//! `X_{i:n}` has density `f F^{i−1} (1−F)^{n−i} / B(i, n−i+1)`; under the
//! quantile map `x = F⁻¹(u)` every expectation becomes a Beta integral on (0, 1).

use serde::{Deserialize, Serialize};

use crate::distributions::{Distribution, Interval};
use crate::error::{Error, Result};
use crate::measures::{self, DensityLike, Measure, MeasureReport, Method};
use crate::quadrature::{integrate, IntegralResult, DEFAULT_TOL};
use crate::special::ln_beta;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderStatSpec {
    pub parent: Distribution,
    pub i: usize,
    pub n: usize,
}

impl OrderStatSpec {
    pub fn new(parent: Distribution, i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidParameters(format!("need 1 ≤ i ≤ n, got i = {i}, n = {n}")));
        }
        Ok(OrderStatSpec { parent, i, n })
    }

    /// Shapes `(i, n − i + 1)` of the Beta law of `F(X_{i:n})`.
    pub fn beta_shapes(&self) -> (f64, f64) {
        (self.i as f64, (self.n - self.i + 1) as f64)
    }
}

/// Density of `X_{i:n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderStatDensity {
    spec: OrderStatSpec,
    ln_b: f64,
}

pub fn order_stat_density(spec: OrderStatSpec) -> OrderStatDensity {
    let (a, b) = spec.beta_shapes();
    OrderStatDensity {
        spec,
        ln_b: ln_beta(a, b),
    }
}

impl OrderStatDensity {
    pub fn spec(&self) -> &OrderStatSpec {
        &self.spec
    }
}

/// Beta(a, b) density on (0, 1), evaluated in log space.
fn beta_pdf(u: f64, a: f64, b: f64, ln_b: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    ((a - 1.0) * u.ln() + (b - 1.0) * (-u).ln_1p() - ln_b).exp()
}

impl DensityLike for OrderStatDensity {
    fn pdf(&self, x: f64) -> f64 {
        let p = &self.spec.parent;
        let f = p.pdf(x);
        if f == 0.0 {
            return 0.0;
        }
        let (a, b) = self.spec.beta_shapes();
        let lf = (a - 1.0) * p.cdf(x).ln() + (b - 1.0) * p.sf(x).ln() - self.ln_b;
        // 0·ln 0 terms (i = 1 or i = n at the support ends) contribute nothing.
        let lf = if lf.is_nan() { -self.ln_b } else { lf };
        f * lf.exp()
    }

    fn cdf(&self, x: f64) -> f64 {
        let (a, b) = self.spec.beta_shapes();
        let u = self.spec.parent.cdf(x);
        if u <= 0.0 {
            0.0
        } else if u >= 1.0 {
            1.0
        } else {
            statrs::function::beta::beta_reg(a, b, u)
        }
    }

    fn support(&self) -> Interval {
        self.spec.parent.support()
    }

    fn expect(&self, h: &dyn Fn(f64) -> f64, tol: f64) -> Result<IntegralResult> {
        let (a, b) = self.spec.beta_shapes();
        let parent = self.spec.parent;
        integrate(
            |u| {
                let w = beta_pdf(u, a, b, self.ln_b);
                if w == 0.0 {
                    return 0.0;
                }
                match parent.quantile(u) {
                    Ok(x) => h(x) * w,
                    Err(_) => f64::NAN,
                }
            },
            0.0,
            1.0,
            tol,
        )
    }

    fn method(&self) -> Method {
        Method::Quadrature
    }

    fn centre(&self) -> f64 {
        // Quantile of the parent at the Beta mean.
        let (a, b) = self.spec.beta_shapes();
        self.spec
            .parent
            .quantile(a / (a + b))
            .unwrap_or_else(|_| self.spec.parent.median())
    }
}

/// `∫₀¹ f(F⁻¹(u))^power · Beta(u; a, b) du`.
pub fn beta_expectation(parent: &Distribution, a: f64, b: f64, power: u32) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParameters(format!("Beta shapes must be positive, got ({a}, {b})")));
    }
    if !(1..=2).contains(&power) {
        return Err(Error::InvalidParameters(format!("power must be 1 or 2, got {power}")));
    }
    let ln_b = ln_beta(a, b);
    let value_at = |u: f64| -> f64 {
        let w = beta_pdf(u, a, b, ln_b);
        if w == 0.0 {
            return 0.0;
        }
        match parent.quantile(u) {
            Ok(x) => parent.pdf(x).powi(power as i32) * w,
            Err(_) => f64::NAN,
        }
    };
    let r = integrate(value_at, 0.0, 1.0, DEFAULT_TOL)?;
    // Small integrals are re-run to a relative target.
    let target = 1e-12 * r.value.abs();
    if target > 0.0 && target < DEFAULT_TOL && r.abs_error_estimate > target {
        return Ok(integrate(value_at, 0.0, 1.0, target)?.value);
    }
    Ok(r.value)
}

/// `B(a,b)/B(c,d)^k` computed in log space.
fn beta_ratio(a: f64, b: f64, c: f64, d: f64, k: f64) -> f64 {
    (ln_beta(a, b) - k * ln_beta(c, d)).exp()
}

/// `VarJ(X_{i:n}, X)` in Beta-expectation form:
/// `¼{ B(2i−1, 2n−2i+1)/B²(i, n−i+1) · E[f²(F⁻¹(U₂))] − E²[f(F⁻¹(U₁))] }`.
///
/// Algebraically this is `Var_f[−½ f_{i:n}(X)]`: the variance is taken under
/// the parent law.
pub fn varj_inaccuracy_order(spec: &OrderStatSpec) -> Result<MeasureReport> {
    let (i, n) = (spec.i as f64, spec.n as f64);
    let (a1, b1) = spec.beta_shapes();
    let (a2, b2) = (2.0 * i - 1.0, 2.0 * n - 2.0 * i + 1.0);
    let e1 = beta_expectation(&spec.parent, a1, b1, 1)?;
    let e2 = beta_expectation(&spec.parent, a2, b2, 2)?;
    let value = 0.25 * (beta_ratio(a2, b2, a1, b1, 2.0) * e2 - e1 * e1);
    Ok(MeasureReport {
        name: Measure::VarjInaccuracy,
        value,
        abs_error: 0.0,
        weighted: false,
        method: Method::Quadrature,
    })
}

/// `VarJ(X_{i:n} | X)` in Beta-expectation form, with `B = B(i, n−i+1)`:
/// `¼[ B(3i−2, 3n−3i+1)/B³·E[f²(U₃)] − 2B(2i−1, 2n−2i+1)/B²·E[f²(U₂)] + E[f²(U₁)]
///    − (B(2i−1, 2n−2i+1)/B²·E[f(U₂)] − E[f(U₁)])² ]`
/// where `f(U)` abbreviates `f(F⁻¹(U))`. Equals `Var_{f_{i:n}}[½(f_{i:n} − f)]`.
pub fn varj_divergence_order(spec: &OrderStatSpec) -> Result<MeasureReport> {
    let (i, n) = (spec.i as f64, spec.n as f64);
    let (a1, b1) = spec.beta_shapes();
    let (a2, b2) = (2.0 * i - 1.0, 2.0 * n - 2.0 * i + 1.0);
    let (a3, b3) = (3.0 * i - 2.0, 3.0 * n - 3.0 * i + 1.0);
    let p = &spec.parent;
    let r2 = beta_ratio(a2, b2, a1, b1, 2.0);
    let r3 = beta_ratio(a3, b3, a1, b1, 3.0);
    let sq = r3 * beta_expectation(p, a3, b3, 2)? - 2.0 * r2 * beta_expectation(p, a2, b2, 2)?
        + beta_expectation(p, a1, b1, 2)?;
    let mean = r2 * beta_expectation(p, a2, b2, 1)? - beta_expectation(p, a1, b1, 1)?;
    Ok(MeasureReport {
        name: Measure::VarjDivergence,
        value: 0.25 * (sq - mean * mean),
        abs_error: 0.0,
        weighted: false,
        method: Method::Quadrature,
    })
}

/// Direct-quadrature counterparts, used to cross-check the Beta forms.
pub fn varj_inaccuracy_order_direct(spec: &OrderStatSpec) -> Result<MeasureReport> {
    let os = order_stat_density(*spec);
    measures::varj_inaccuracy(&spec.parent, &os, false)
}

pub fn varj_divergence_order_direct(spec: &OrderStatSpec) -> Result<MeasureReport> {
    let os = order_stat_density(*spec);
    measures::varj_divergence(&os, &spec.parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn density_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let os = order_stat_density(OrderStatSpec::new(u, 1, 2).unwrap());
        for &x in &[0.1, 0.5, 0.9] {
            close(os.pdf(x), 2.0 * (1.0 - x), 1e-14);
        }
        let e = Distribution::exponential(1.0).unwrap();
        let same = order_stat_density(OrderStatSpec::new(e, 1, 1).unwrap());
        close(same.pdf(0.7), e.pdf(0.7), 1e-15);
        let top = order_stat_density(OrderStatSpec::new(e, 2, 2).unwrap());
        let x: f64 = 1.3;
        close(top.pdf(x), 2.0 * (-x).exp() * (1.0 - (-x).exp()), 1e-14);
        let mass = integrate(|x| top.pdf(x), 0.0, f64::INFINITY, 1e-12).unwrap().value;
        close(mass, 1.0, 1e-10);
    }

    #[test]
    fn beta_expectation_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        close(beta_expectation(&u, 2.5, 0.7, 1).unwrap(), 1.0, 1e-10);
        let e = Distribution::exponential(1.0).unwrap();
        close(beta_expectation(&e, 1.0, 1.0, 1).unwrap(), 0.5, 1e-12);
        close(beta_expectation(&e, 1.0, 1.0, 2).unwrap(), 1.0 / 3.0, 1e-12);
    }

    #[test]
    fn uniform_parent_values() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let spec = OrderStatSpec::new(u, 1, 2).unwrap();
        close(varj_inaccuracy_order(&spec).unwrap().value, 1.0 / 12.0, 1e-12);
        close(varj_divergence_order(&spec).unwrap().value, 1.0 / 18.0, 1e-12);
    }

    #[test]
    fn single_draw_reduces_to_parent() {
        let e = Distribution::exponential(1.5).unwrap();
        let spec = OrderStatSpec::new(e, 1, 1).unwrap();
        let vx = measures::varextropy(&e, false).unwrap().value;
        close(varj_inaccuracy_order(&spec).unwrap().value, vx, 1e-12);
        close(varj_divergence_order(&spec).unwrap().value, 0.0, 1e-12);
    }

    #[test]
    fn beta_forms_match_direct_quadrature() {
        let e = Distribution::exponential(1.0).unwrap();
        let spec = OrderStatSpec::new(e, 2, 3).unwrap();
        close(
            varj_inaccuracy_order(&spec).unwrap().value,
            varj_inaccuracy_order_direct(&spec).unwrap().value,
            1e-8,
        );
        let spec = OrderStatSpec::new(e, 3, 3).unwrap();
        close(
            varj_divergence_order(&spec).unwrap().value,
            varj_divergence_order_direct(&spec).unwrap().value,
            1e-8,
        );
    }

    #[test]
    fn rejects_bad_rank() {
        let e = Distribution::exponential(1.0).unwrap();
        assert!(OrderStatSpec::new(e, 0, 3).is_err());
        assert!(OrderStatSpec::new(e, 4, 3).is_err());
    }
}
