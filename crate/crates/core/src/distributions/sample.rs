use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Observed data, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Sample {
    values: Vec<f64>,
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Sample::new(v)
    }
}

impl From<Sample> for Vec<f64> {
    fn from(s: Sample) -> Self {
        s.values
    }
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooFewObservations { need: 1, got: 0 });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        values.sort_by(f64::total_cmp);
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Unbiased (n − 1 divisor) variance; 0 for a single observation.
    pub fn variance(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Linear-interpolation quantile: position (n − 1)p between order statistics.
    pub fn quantile(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let h = (self.len() - 1) as f64 * p;
        let lo = h.floor() as usize;
        let hi = (lo + 1).min(self.len() - 1);
        let w = h - lo as f64;
        self.values[lo] + w * (self.values[hi] - self.values[lo])
    }

    pub fn is_degenerate(&self) -> bool {
        self.min() == self.max()
    }

    pub(crate) fn require(&self, need: usize) -> Result<()> {
        if self.len() < need {
            return Err(Error::TooFewObservations { need, got: self.len() });
        }
        if self.is_degenerate() {
            return Err(Error::DegenerateSample);
        }
        Ok(())
    }

    /// Multiply every observation by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Sample::new(self.values.iter().map(|v| v * c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_validates() {
        let s = Sample::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
        assert!(matches!(Sample::new(vec![]), Err(Error::TooFewObservations { .. })));
        assert_eq!(Sample::new(vec![1.0, f64::NAN]), Err(Error::NonFiniteSample(1)));
    }

    #[test]
    fn type7_quantiles() {
        let s = Sample::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(s.quantile(0.25), 2.0);
        assert_eq!(s.quantile(0.75), 4.0);
        let s = Sample::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((s.quantile(0.25) - 1.75).abs() < 1e-15);
    }

    #[test]
    fn moments() {
        let s = Sample::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(s.mean(), 3.0);
        assert!((s.variance() - 2.5).abs() < 1e-15);
    }
}
