//! Generating functions of extropy and of the discrimination measure.
//!
//! `G(t) = E_f[exp(−t f(X)/2)]` generates the raw moments of `−½ f(X)`;
//! `ln G` generates its cumulants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{DensityLike, Evaluator};

/// Moments of `−½ f(X)` for `X ~ f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenFunMoments {
    pub j: f64,
    pub varj: f64,
    /// Third central moment.
    pub skewj: f64,
    /// Fourth central moment.
    pub kurtj: f64,
    /// `raw[k-1] = E[(−½ f)^k]`, k = 1..4.
    pub raw: [f64; 4],
}

/// `G(t) = E_f[exp(−t f(X)/2)]`.
pub fn extropy_genfun(d: &dyn DensityLike, t: f64) -> Result<f64> {
    extropy_genfun_with(&Evaluator::default(), d, t)
}

pub fn extropy_genfun_with(ev: &Evaluator, d: &dyn DensityLike, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    Ok(ev.expect(d, &|x| (-0.5 * t * d.pdf(x)).exp())?.value)
}

/// `E_f[exp(t (f(X) − g(X))/2)]`.
pub fn divergence_genfun(dx: &dyn DensityLike, dy: &dyn DensityLike, t: f64) -> Result<f64> {
    let (a, b) = (dx.support(), dy.support());
    if a != b {
        return Err(Error::SupportMismatch(format!("{a} vs {b}")));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    Ok(Evaluator::default()
        .expect(dx, &|x| (0.5 * t * (dx.pdf(x) - dy.pdf(x))).exp())?
        .value)
}

/// Raw and central moments of `−½ f(X)`.
pub fn extropy_moments(d: &dyn DensityLike) -> Result<GenFunMoments> {
    let ev = Evaluator::default();
    let mut raw = [0.0; 4];
    for (k, m) in raw.iter_mut().enumerate() {
        *m = ev.expect(d, &|x| (-0.5 * d.pdf(x)).powi(k as i32 + 1))?.value;
    }
    let [m1, m2, m3, m4] = raw;
    // Central moments from moments of ψ = φ − φ(centre): exact (zero) for a
    // constant density and free of the large cancellations of the raw form.
    let c = -0.5 * d.pdf(d.centre());
    let c = if c.is_finite() { c } else { 0.0 };
    let mut s = [0.0; 4];
    for (k, m) in s.iter_mut().enumerate() {
        *m = ev.expect(d, &|x| (-0.5 * d.pdf(x) - c).powi(k as i32 + 1))?.value;
    }
    let [s1, s2, s3, s4] = s;
    let varj = s2 - s1 * s1;
    let skewj = s3 - 3.0 * s1 * s2 + 2.0 * s1.powi(3);
    let kurtj = s4 - 4.0 * s1 * s3 + 6.0 * s1 * s1 * s2 - 3.0 * s1.powi(4);
    debug_assert!((varj - (m2 - m1 * m1)).abs() <= 1e-8 * (1.0 + m2.abs()));
    debug_assert!((skewj - (m3 - 3.0 * m1 * m2 + 2.0 * m1.powi(3))).abs() <= 1e-8 * (1.0 + m3.abs()));
    debug_assert!(
        (kurtj - (m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1.powi(4))).abs() <= 1e-8 * (1.0 + m4.abs())
    );
    Ok(GenFunMoments {
        j: m1,
        varj,
        skewj,
        kurtj,
        raw,
    })
}

/// Base step of the finite-difference stencil in `t`.
pub const GENFUN_STEP: f64 = 1e-2;

/// k-th derivative (k = 1..4) of `ln G` at 0 by central differences with
/// three levels of Richardson extrapolation. k = 1 gives J, k = 2 gives VarJ.
pub fn genfun_derivative_check(d: &dyn DensityLike, k: usize) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(Error::InvalidParameters(format!("derivative order must be 1..4, got {k}")));
    }
    let ev = Evaluator {
        tol: 1e-13,
        rel_tol: 1e-14,
    };
    let ln_g = |t: f64| -> Result<f64> {
        let g = extropy_genfun_with(&ev, d, t).map_err(|_| Error::StepDegeneracy { t })?;
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::StepDegeneracy { t });
        }
        Ok(g.ln())
    };
    let stencil = |h: f64| -> Result<f64> {
        Ok(match k {
            1 => (ln_g(h)? - ln_g(-h)?) / (2.0 * h),
            2 => (ln_g(h)? - 2.0 * ln_g(0.0)? + ln_g(-h)?) / (h * h),
            3 => (ln_g(2.0 * h)? - 2.0 * ln_g(h)? + 2.0 * ln_g(-h)? - ln_g(-2.0 * h)?) / (2.0 * h.powi(3)),
            _ => {
                (ln_g(2.0 * h)? - 4.0 * ln_g(h)? + 6.0 * ln_g(0.0)? - 4.0 * ln_g(-h)? + ln_g(-2.0 * h)?) / h.powi(4)
            }
        })
    };
    richardson(stencil, GENFUN_STEP, 3)
}

/// Richardson extrapolation of a central-difference estimate whose error
/// expands in even powers of the step, using `levels` halvings.
pub(crate) fn richardson<F>(estimate: F, h0: f64, levels: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut table: Vec<f64> = Vec::with_capacity(levels);
    let mut h = h0;
    for _ in 0..levels {
        table.push(estimate(h)?);
        h *= 0.5;
    }
    // Tableau: eliminate h², h⁴, … successively.
    let mut factor = 4.0;
    for col in 1..levels {
        for row in (col..levels).rev() {
            table[row] = (factor * table[row] - table[row - 1]) / (factor - 1.0);
        }
        factor *= 4.0;
    }
    Ok(table[levels - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Distribution;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn genfun_examples() {
        let e1 = Distribution::exponential(1.0).unwrap();
        assert_eq!(extropy_genfun(&e1, 0.0).unwrap(), 1.0);
        let expect = 1.0 - (-1f64).exp();
        close(extropy_genfun(&e1, 2.0).unwrap(), expect, 1e-12);
        let e2 = Distribution::exponential(2.0).unwrap();
        close(extropy_genfun(&e2, 1.0).unwrap(), expect, 1e-12);
    }

    #[test]
    fn divergence_genfun_examples() {
        let a = Distribution::exponential(2.0).unwrap();
        let b = Distribution::exponential(3.0).unwrap();
        assert_eq!(divergence_genfun(&a, &b, 0.0).unwrap(), 1.0);
        close(divergence_genfun(&a, &a, 1.7).unwrap(), 1.0, 1e-12);
        let h = 1e-4;
        let slope = (divergence_genfun(&a, &b, h).unwrap() - divergence_genfun(&a, &b, -h).unwrap()) / (2.0 * h);
        close(slope, -0.1, 1e-6);
    }

    #[test]
    fn moment_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let m = extropy_moments(&u).unwrap();
        assert_eq!(m.skewj, 0.0);
        assert_eq!(m.kurtj, 0.0);
        let e = Distribution::exponential(1.0).unwrap();
        let m = extropy_moments(&e).unwrap();
        for k in 1..=4 {
            let exact = (-1f64).powi(k) / (2f64.powi(k) * (k as f64 + 1.0));
            close(m.raw[k as usize - 1], exact, 1e-12);
        }
        close(m.skewj, 0.0, 1e-12);
        close(m.kurtj, 1.0 / 1280.0, 1e-12);
    }

    #[test]
    fn cumulants_from_log_genfun() {
        let e = Distribution::exponential(1.0).unwrap();
        close(genfun_derivative_check(&e, 1).unwrap(), -0.25, 1e-6);
        close(genfun_derivative_check(&e, 2).unwrap(), 1.0 / 48.0, 1e-6);
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        close(genfun_derivative_check(&u, 2).unwrap(), 0.0, 1e-8);
    }

    #[test]
    fn unbounded_density_degenerates() {
        // E[exp(+h f/2)] diverges when f ~ x^{-0.5} near 0.
        let g = Distribution::gamma(0.5, 1.0).unwrap();
        assert!(matches!(genfun_derivative_check(&g, 1), Err(Error::StepDegeneracy { .. })));
    }

    #[test]
    fn richardson_cancels_even_terms() {
        // f(h) = 1 + h² + h⁴ → 1 exactly after two eliminations.
        let v = richardson(|h| Ok(1.0 + h * h + h.powi(4)), 0.1, 3).unwrap();
        close(v, 1.0, 1e-14);
    }
}
