//! Seeded Monte Carlo estimates of moments of `φ(X)`, used as an
//! independent oracle for the quadrature-based measures.
//!
//! Draws are generated in fixed-size chunks, each from its own ChaCha stream
//! keyed by `(seed, chunk)`, so results do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::exec::{map_indexed_with, Exec};

pub const CHUNK: usize = 1 << 14;

/// Sample mean and central moments of `φ(X)` with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleMoments {
    pub n: usize,
    pub mean: f64,
    pub mean_se: f64,
    /// Central moments of order 2, 3, 4 (divisor n).
    pub central: [f64; 3],
    pub central_se: [f64; 3],
}

impl SampleMoments {
    pub fn variance(&self) -> f64 {
        self.central[0]
    }

    pub fn variance_se(&self) -> f64 {
        self.central_se[0]
    }

    /// Is `value` within `k` standard errors of the estimate of `which`
    /// (1 = mean, 2..4 = central moment)?
    pub fn agrees(&self, which: usize, value: f64, k: f64) -> bool {
        let (est, se) = match which {
            1 => (self.mean, self.mean_se),
            2..=4 => (self.central[which - 2], self.central_se[which - 2]),
            _ => return false,
        };
        (est - value).abs() <= k * se
    }
}

/// `n` draws from `d`, reproducible for a given seed.
pub fn draw(d: &Distribution, n: usize, seed: u64, exec: Exec) -> Vec<f64> {
    draw_map(d, n, seed, exec, |x| x)
}

fn draw_map<F>(d: &Distribution, n: usize, seed: u64, exec: Exec, phi: F) -> Vec<f64>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let chunks = n.div_ceil(CHUNK);
    map_indexed_with(exec, chunks, |c| {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let len = CHUNK.min(n - c * CHUNK);
        (0..len).map(|_| phi(rng.sample(d))).collect::<Vec<f64>>()
    })
    .concat()
}

/// Moments of `φ(X)`, `X ~ d`, from `n` seeded draws.
pub fn moments<F>(d: &Distribution, phi: F, n: usize, seed: u64, exec: Exec) -> Result<SampleMoments>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if n < 2 {
        return Err(Error::TooFewObservations { need: 2, got: n });
    }
    let values = draw_map(d, n, seed, exec, phi);
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample(i));
    }
    Ok(summarize(&values))
}

/// Central moments up to order 8 give the delta-method standard errors of
/// the order-2..4 sample central moments.
pub fn summarize(values: &[f64]) -> SampleMoments {
    let n = values.len();
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let mut m = [0.0f64; 9];
    for &v in values {
        let d = v - mean;
        let mut p = 1.0;
        for mk in m.iter_mut() {
            *mk += p;
            p *= d;
        }
    }
    m.iter_mut().for_each(|v| *v /= nf);
    // Var(m_k) ≈ (m_{2k} − m_k² − 2k m_{k−1} m_{k+1} + k² m_2 m_{k−1}²)/n.
    let se = |k: usize| {
        let kf = k as f64;
        let v = m[2 * k] - m[k] * m[k] - 2.0 * kf * m[k - 1] * m[k + 1] + kf * kf * m[2] * m[k - 1] * m[k - 1];
        (v.max(0.0) / nf).sqrt()
    };
    SampleMoments {
        n,
        mean,
        mean_se: (m[2] / nf).sqrt(),
        central: [m[2], m[3], m[4]],
        central_se: [se(2), se(3), se(4)],
    }
}
