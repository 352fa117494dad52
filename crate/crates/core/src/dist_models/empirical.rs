use serde::{Deserialize, Serialize};

use super::Cdf;
use crate::error::{Error, Result};

/// Right-continuous step CDF over the training samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCdfModel {
    samples: Vec<f64>,
}

impl EmpiricalCdfModel {
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.samples.is_empty() {
            return Err(Error::CorruptModel("empirical model has no samples".into()));
        }
        if self.samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::CorruptModel(
                "empirical model has a non-finite sample".into(),
            ));
        }
        if self.samples.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::CorruptModel(
                "empirical samples are not sorted".into(),
            ));
        }
        Ok(())
    }

    /// Number of samples `<= x`.
    #[inline]
    pub fn count_le(&self, x: f64) -> usize {
        self.samples.partition_point(|&s| s <= x)
    }

    /// Distance from two precomputed `count_le` values.
    #[inline]
    pub(crate) fn count_gap(&self, c1: usize, c2: usize) -> f64 {
        c1.abs_diff(c2) as f64 / self.samples.len() as f64
    }

    /// Same samples plus one more, kept sorted.
    pub fn with_sample(&self, x: f64) -> Result<Self> {
        let mut samples = self.samples.clone();
        samples.push(x);
        fit_empirical(&samples)
    }
}

impl Cdf for EmpiricalCdfModel {
    fn cdf(&self, x: f64) -> f64 {
        self.count_le(x) as f64 / self.samples.len() as f64
    }

    /// Fraction of samples in `(min(x1,x2), max(x1,x2)]`, computed from integer counts.
    fn interval_mass(&self, x1: f64, x2: f64) -> f64 {
        self.count_gap(self.count_le(x1), self.count_le(x2))
    }
}

/// Stores a sorted copy of the samples (duplicates kept).
pub fn fit_empirical(samples: &[f64]) -> Result<EmpiricalCdfModel> {
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let model = EmpiricalCdfModel { samples: sorted };
    model.check()?;
    Ok(model)
}
