//! Lower bounds for `VarJ(X,Y) = Var_f[−½ g(X)]`.
//!
//! * Series bound, from a covariance identity `Cov(X, h(X)) = E[q(X) h'(X)]`
//!   with kernel `q` and index `δ`:
//!   `¼ Σ_{k=1}^n E²[q^k g^{(k)}] / (k! E[q^k] Π_{j=k−1}^{2k−2} (1 − jδ))`.
//!   Exact when `g` is a polynomial of degree ≤ n.
//! * Chebyshev bound: `ε² {P[g(X) ≥ 2(ε − J)] + P[g(X) ≤ 2(−ε − J)]}` with
//!   `J = J(X,Y)`.

use serde::{Deserialize, Serialize};

use crate::distributions::{Distribution, Interval};
use crate::error::{Error, Result};
use crate::genfun::richardson;
use crate::measures::{self, DensityLike, Evaluator, Method};
use crate::special::{ln_gamma, ln_reciprocal_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Series,
    Chebyshev,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub kind: BoundKind,
    pub order_n: Option<usize>,
    pub epsilon: Option<f64>,
    /// Series: every term is finite and non-negative. Chebyshev: both level
    /// thresholds fell inside the range of `g`, so no probability had to be
    /// resolved by its limiting value.
    pub valid: bool,
    pub terms: Option<Vec<f64>>,
    pub method: Method,
}

fn series_result(terms: Vec<f64>, method: Method) -> BoundResult {
    let valid = terms.iter().all(|t| t.is_finite() && *t >= 0.0);
    BoundResult {
        value: terms.iter().sum(),
        kind: BoundKind::Series,
        order_n: Some(terms.len()),
        epsilon: None,
        valid,
        terms: Some(terms),
        method,
    }
}

/// Series bound for `X ~ Exp(λ)`, `Y ~ Exp(η)` (kernel `q(x) = x/λ`, `δ = 0`).
/// Term k is `¼ λ² η^{2k+2} / (λ+η)^{2k+2}`.
pub fn series_bound_exponential(lambda: f64, eta: f64, n: usize) -> Result<BoundResult> {
    if !(lambda > 0.0 && eta > 0.0 && lambda.is_finite() && eta.is_finite()) {
        return Err(Error::Domain(format!("rates must be positive, got λ = {lambda}, η = {eta}")));
    }
    if n < 1 {
        return Err(Error::Domain("series order must be at least 1".into()));
    }
    let r = eta / (lambda + eta);
    let terms = (1..=n)
        .map(|k| 0.25 * lambda * lambda * r.powi(2 * k as i32 + 2))
        .collect();
    Ok(series_result(terms, Method::ClosedForm))
}

/// Series bound for `X` with density `a x^{a−1}` and `Y` with density
/// `b y^{b−1}` on (0, 1):
/// `(ab²/4) Σ (a+2k) (Γ(b)Γ(a+b−1) / (Γ(b−k)Γ(a+b+k)))²`, where `1/Γ` is 0
/// at the poles, so terms with `k ≥ b` integer vanish.
pub fn series_bound_power(a: f64, b: f64, n: usize) -> Result<BoundResult> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("shapes must be positive, got a = {a}, b = {b}")));
    }
    if a + b <= 1.0 {
        return Err(Error::Domain(format!(
            "a + b must exceed 1 for E[g(X)] to be finite, got {}",
            a + b
        )));
    }
    if n < 1 {
        return Err(Error::Domain("series order must be at least 1".into()));
    }
    let ln_head = ln_gamma(b) + ln_gamma(a + b - 1.0);
    let terms = (1..=n)
        .map(|k| {
            let k = k as f64;
            match ln_reciprocal_gamma(b - k) {
                None => 0.0,
                Some((_, ln_rg)) => {
                    let ln_ratio = ln_head + ln_rg - ln_gamma(a + b + k);
                    0.25 * a * b * b * (a + 2.0 * k) * (2.0 * ln_ratio).exp()
                }
            }
        })
        .collect();
    Ok(series_result(terms, Method::ClosedForm))
}

/// The closed-form Chebyshev bound for an exponential pair.
pub fn chebyshev_bound_exponential(lambda: f64, eta: f64, eps: f64) -> Result<BoundResult> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    if !(lambda > 0.0 && eta > 0.0) {
        return Err(Error::Domain(format!("rates must be positive, got λ = {lambda}, η = {eta}")));
    }
    let p = lambda / eta;
    let centre = lambda / (lambda + eta);
    let lower = centre - 2.0 * eps / eta;
    let upper = centre + 2.0 * eps / eta;
    let valid = lower > 0.0 && upper < 1.0;
    let p_low = lower.clamp(0.0, 1.0).powf(p);
    let p_high = 1.0 - upper.clamp(0.0, 1.0).powf(p);
    Ok(BoundResult {
        value: eps * eps * (p_low + p_high),
        kind: BoundKind::Chebyshev,
        order_n: None,
        epsilon: Some(eps),
        valid,
        terms: None,
        method: Method::ClosedForm,
    })
}

/// Chebyshev bound; uses the inverse of `g` when `dy`'s density is strictly
/// decreasing and the level-set search otherwise.
pub fn chebyshev_bound(dx: &dyn DensityLike, dy: &Distribution, eps: f64) -> Result<BoundResult> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    if !dy.is_strictly_decreasing() {
        return chebyshev_bound_generic(dx, dy, eps);
    }
    let j = measures::inaccuracy(dx, dy, false)?.value;
    let (t_hi, t_lo) = (2.0 * (eps - j), 2.0 * (-eps - j));
    let sup = dy.density_sup();
    let mut valid = true;
    // P[g ≥ t] = F(g⁻¹(t)) because g is decreasing.
    let p_hi = if t_hi > sup {
        valid = false;
        0.0
    } else if let Some(x) = dy.density_inverse(t_hi) {
        dx.cdf(x)
    } else {
        valid = false;
        1.0
    };
    // P[g ≤ t] = 1 − F(g⁻¹(t)).
    let p_lo = if t_lo <= 0.0 {
        valid = false;
        0.0
    } else if t_lo >= sup {
        valid = false;
        1.0
    } else if let Some(x) = dy.density_inverse(t_lo) {
        1.0 - dx.cdf(x)
    } else {
        valid = false;
        0.0
    };
    Ok(BoundResult {
        value: eps * eps * (p_hi + p_lo),
        kind: BoundKind::Chebyshev,
        order_n: None,
        epsilon: Some(eps),
        valid,
        terms: None,
        method: Method::Quadrature,
    })
}

/// Nodes used when scanning for sign changes of `g − t`.
const LEVEL_GRID: usize = 4096;

/// Chebyshev bound by locating the level sets `{g ≥ t}` and `{g ≤ t}`
/// numerically; makes no monotonicity assumption on `g`.
pub fn chebyshev_bound_generic(dx: &dyn DensityLike, dy: &dyn DensityLike, eps: f64) -> Result<BoundResult> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    let j = measures::inaccuracy(dx, dy, false)?.value;
    let (t_hi, t_lo) = (2.0 * (eps - j), 2.0 * (-eps - j));
    let support = dx.support();
    let g = |x: f64| dy.pdf(x);
    let p_hi = level_set_probability(dx, &|x| g(x) >= t_hi, support);
    let p_lo = level_set_probability(dx, &|x| g(x) <= t_lo, support);
    Ok(BoundResult {
        value: eps * eps * (p_hi + p_lo),
        kind: BoundKind::Chebyshev,
        order_n: None,
        epsilon: Some(eps),
        valid: true,
        terms: None,
        method: Method::Quadrature,
    })
}

/// Maps s ∈ (0, 1) onto the support.
fn support_map(s: f64, sup: Interval) -> f64 {
    match (sup.lo.is_finite(), sup.hi.is_finite()) {
        (true, true) => sup.lo + s * (sup.hi - sup.lo),
        (true, false) => sup.lo + s / (1.0 - s),
        (false, true) => sup.hi - (1.0 - s) / s,
        (false, false) => {
            let t = 2.0 * s - 1.0;
            t / (1.0 - t * t)
        }
    }
}

/// `P_f[X ∈ A]` for `A = {x : member(x)}`: membership is scanned on a grid,
/// every boundary is refined by bisection, and the probability is summed from
/// the CDF of `dx`.
fn level_set_probability(dx: &dyn DensityLike, member: &dyn Fn(f64) -> bool, sup: Interval) -> f64 {
    let m = LEVEL_GRID;
    let s_at = |i: usize| (i as f64 + 0.5) / m as f64;
    let inside: Vec<bool> = (0..m).map(|i| member(support_map(s_at(i), sup))).collect();
    let boundary = |mut a: f64, mut b: f64, a_in: bool| -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if member(support_map(mid, sup)) == a_in {
                a = mid;
            } else {
                b = mid;
            }
        }
        support_map(0.5 * (a + b), sup)
    };
    let cdf = |x: f64| {
        if x <= sup.lo {
            0.0
        } else if x >= sup.hi {
            1.0
        } else {
            dx.cdf(x)
        }
    };
    let mut total = 0.0;
    let mut start = if inside[0] { Some(sup.lo) } else { None };
    for i in 1..m {
        if inside[i] == inside[i - 1] {
            continue;
        }
        let x = boundary(s_at(i - 1), s_at(i), inside[i - 1]);
        match start.take() {
            Some(a) => total += cdf(x) - cdf(a),
            None => start = Some(x),
        }
    }
    if let Some(a) = start {
        total += 1.0 - cdf(a);
    }
    total
}

/// Settings for the finite-difference derivatives of `g` in the numeric series bound.
const FD_LEVELS: usize = 3;
const FD_CONSISTENCY: f64 = 1e-3;

/// Series bound for arbitrary `dx`, `dy` given the covariance kernel `q` and
/// index `δ` of `dx`. Derivatives of `g` are central differences with
/// Richardson extrapolation.
pub fn series_bound_numeric(
    dx: &Distribution,
    dy: &Distribution,
    q: &dyn Fn(f64) -> f64,
    delta: f64,
    n: usize,
) -> Result<BoundResult> {
    if n < 1 {
        return Err(Error::Domain("series order must be at least 1".into()));
    }
    for j in 1..=(2 * n).saturating_sub(2) {
        if (1.0 - j as f64 * delta).abs() < 1e-12 {
            return Err(Error::DeltaExcluded(delta));
        }
    }
    if dx.support() != dy.support() {
        return Err(Error::SupportMismatch(format!("{} vs {}", dx.support(), dy.support())));
    }
    let ev = Evaluator::default();
    let sup = dy.support();
    let scale = {
        let (a, b) = (dy.quantile(0.25)?, dy.quantile(0.75)?);
        if b > a {
            b - a
        } else {
            1.0
        }
    };
    let mut terms = Vec::with_capacity(n);
    let mut ln_fact = 0.0;
    for k in 1..=n {
        ln_fact += (k as f64).ln();
        let failure = std::cell::Cell::new(None);
        let deriv = |x: f64| match derivative(&|y| dy.pdf(y), x, k, scale, sup) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        };
        let e_qk = ev.expect(dx, &|x| q(x).powi(k as i32))?.value;
        let e_num = ev.expect(dx, &|x| {
            let qk = q(x).powi(k as i32);
            if qk == 0.0 {
                0.0
            } else {
                qk * deriv(x)
            }
        })?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        let prod: f64 = ((k - 1)..=(2 * k - 2)).map(|j| 1.0 - j as f64 * delta).product();
        terms.push(0.25 * e_num.value * e_num.value / (ln_fact.exp() * e_qk * prod));
    }
    Ok(series_result(terms, Method::Quadrature))
}

/// k-th derivative of `g` at `x` by the central difference
/// `Σ_j (−1)^j C(k,j) g(x + (k/2 − j)h) / h^k`, Richardson-extrapolated.
///
/// The stencil is kept inside the support: near an endpoint the step shrinks,
/// and the step-halving consistency check only applies where it did not.
fn derivative(g: &dyn Fn(f64) -> f64, x: f64, k: usize, scale: f64, sup: Interval) -> Result<f64> {
    let half = k as f64 / 2.0;
    let h_ideal = scale * f64::EPSILON.powf(1.0 / (k as f64 + 6.0));
    let room = (x - sup.lo).min(sup.hi - x);
    let h_max = if half > 0.0 { 0.9 * room / half } else { h_ideal };
    let limited = h_max < h_ideal;
    let h0 = h_ideal.min(h_max);
    if !(h0 > 0.0) {
        return Ok(0.0);
    }
    let binom: Vec<f64> = {
        let mut c = vec![1.0; k + 1];
        for j in 1..=k {
            c[j] = c[j - 1] * (k + 1 - j) as f64 / j as f64;
        }
        c
    };
    let stencil = |h: f64| -> Result<f64> {
        let mut acc = 0.0;
        for (j, c) in binom.iter().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * c * g(x + (half - j as f64) * h);
        }
        Ok(acc / h.powi(k as i32))
    };
    let d1 = richardson(stencil, h0, FD_LEVELS)?;
    if !limited {
        let d2 = richardson(stencil, 0.5 * h0, FD_LEVELS)?;
        let size = d1.abs().max(d2.abs());
        // Floor: derivative magnitudes far below g/scale^k are numerically zero.
        let floor = 1e-6 * g(x).abs() / scale.powi(k as i32);
        if (d1 - d2).abs() > FD_CONSISTENCY * size.max(floor) {
            return Err(Error::DerivativeInstability { order: k, x });
        }
    }
    if !d1.is_finite() {
        return Err(Error::DerivativeInstability { order: k, x });
    }
    Ok(d1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn exp(r: f64) -> Distribution {
        Distribution::exponential(r).unwrap()
    }

    #[test]
    fn exponential_series_examples() {
        close(series_bound_exponential(5.0, 4.0, 5).unwrap().value, 0.3038022477, 1e-9);
        close(series_bound_exponential(1.0, 1.0, 1).unwrap().value, 0.015625, 1e-15);
        close(series_bound_exponential(5.0, 4.0, 2000).unwrap().value, 0.3038936372, 1e-8);
        assert!(series_bound_exponential(0.0, 1.0, 1).is_err());
        assert!(series_bound_exponential(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn exponential_series_matches_closed_sum() {
        let (l, e, n) = (5.0_f64, 4.0_f64, 7);
        let closed =
            l * e.powi(4) / (4.0 * (l + 2.0 * e) * (l + e).powi(2)) * (1.0 - (e / (l + e)).powi(2 * n));
        close(series_bound_exponential(l, e, n as usize).unwrap().value, closed, 1e-14);
    }

    #[test]
    fn power_series_examples() {
        close(series_bound_power(1.0, 2.0, 1).unwrap().value, 1.0 / 12.0, 1e-15);
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let p2 = Distribution::power(2.0).unwrap();
        close(measures::varj_inaccuracy(&u, &p2, false).unwrap().value, 1.0 / 12.0, 1e-12);
        assert_eq!(series_bound_power(2.0, 1.0, 3).unwrap().value, 0.0);
        assert!(series_bound_power(-1.0, 2.0, 1).is_err());
    }

    #[test]
    fn chebyshev_example() {
        let r = chebyshev_bound(&exp(5.0), &exp(4.0), 0.02).unwrap();
        let closed = chebyshev_bound_exponential(5.0, 4.0, 0.02).unwrap();
        close(r.value, closed.value, 1e-12);
        let generic = chebyshev_bound_generic(&exp(5.0), &exp(4.0), 0.02).unwrap();
        close(generic.value, closed.value, 1e-10);
    }

    #[test]
    fn chebyshev_vanishes_for_huge_eps() {
        let d = exp(3.0);
        let r = chebyshev_bound(&d, &d, 10.0).unwrap();
        assert_eq!(r.value, 0.0);
        let r = chebyshev_bound_generic(&d, &d, 10.0).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(chebyshev_bound(&d, &d, 0.0).is_err());
    }

    #[test]
    fn numeric_series_matches_closed_forms() {
        let (l, e) = (5.0, 4.0);
        let r = series_bound_numeric(&exp(l), &exp(e), &|x| x / l, 0.0, 3).unwrap();
        close(r.value, series_bound_exponential(l, e, 3).unwrap().value, 1e-7);
        let a = 1.0;
        let u = Distribution::power(a).unwrap();
        let p2 = Distribution::power(2.0).unwrap();
        let r = series_bound_numeric(&u, &p2, &|x| x * (1.0 - x) / (a + 1.0), -1.0 / (a + 1.0), 1).unwrap();
        close(r.value, 1.0 / 12.0, 1e-7);
        let flat = Distribution::uniform(0.0, 1.0).unwrap();
        let r = series_bound_numeric(&u, &flat, &|x| x * (1.0 - x) / 2.0, -0.5, 3).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn excluded_delta() {
        let d = exp(1.0);
        assert_eq!(
            series_bound_numeric(&d, &d, &|x| x, 0.5, 2),
            Err(Error::DeltaExcluded(0.5))
        );
    }
}
