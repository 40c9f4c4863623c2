//! Special functions shared by the distribution, bound and order-statistic code.
//!
//! Gamma-family and error-function primitives come from `statrs`; the pieces it
//! does not provide (trigamma, log-gamma on the negative axis, the reciprocal
//! gamma with its zeros at the poles) live here.

use std::f64::consts::{PI, SQRT_2};

pub use statrs::function::beta::ln_beta;
pub use statrs::function::gamma::{digamma, gamma_lr, gamma_ur};

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// ln |Γ(x)| for any x that is not a non-positive integer.
pub fn ln_abs_gamma(x: f64) -> f64 {
    if x >= 0.5 {
        return ln_gamma(x);
    }
    // Γ(x)Γ(1-x) = π / sin(πx)
    let s = (PI * x).sin().abs();
    PI.ln() - s.ln() - ln_gamma(1.0 - x)
}

/// True when x is a pole of Γ (0, -1, -2, ...).
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// 1/Γ(x) as a (sign, ln magnitude) pair; `None` at the poles where 1/Γ is zero.
pub fn ln_reciprocal_gamma(x: f64) -> Option<(f64, f64)> {
    if is_gamma_pole(x) {
        return None;
    }
    let sign = if x > 0.0 {
        1.0
    } else {
        // Γ is negative on (-1, 0), (-3, -2), ...
        if (x.floor() as i64).rem_euclid(2) == 1 {
            -1.0
        } else {
            1.0
        }
    };
    Some((sign, -ln_abs_gamma(x)))
}

/// Trigamma ψ'(x) for x > 0.
pub fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 12.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    // Asymptotic expansion in 1/x with Bernoulli-number coefficients.
    let r = 1.0 / x;
    let r2 = r * r;
    let tail = r
        + 0.5 * r2
        + r * r2
            * (1.0 / 6.0
                - r2 * (1.0 / 30.0 - r2 * (1.0 / 42.0 - r2 * (1.0 / 30.0 - r2 * (5.0 / 66.0)))));
    acc + tail
}

/// Standard normal CDF.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z / SQRT_2)
}

/// Standard normal upper tail, accurate for large z.
pub fn std_normal_sf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(z / SQRT_2)
}

/// Standard normal quantile.
///
/// `erfc_inv` alone is good to ~1e-10 relative; two Halley steps against the
/// tail on the same side as `p` bring it to full precision.
pub fn std_normal_quantile(p: f64) -> f64 {
    let mut z = -SQRT_2 * statrs::function::erf::erfc_inv(2.0 * p);
    if !z.is_finite() {
        return z;
    }
    for _ in 0..2 {
        let r = if p < 0.5 {
            std_normal_cdf(z) - p
        } else {
            (1.0 - p) - std_normal_sf(z)
        };
        let d = std_normal_pdf(z);
        if d == 0.0 {
            break;
        }
        let t = r / d;
        z -= t / (1.0 + 0.5 * z * t);
    }
    z
}

pub fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}
