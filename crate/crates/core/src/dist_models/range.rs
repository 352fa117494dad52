use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Observed min/max of a numeric column, the Gower range normalizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeModel {
    pub min: f64,
    pub max: f64,
}

impl RangeModel {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        let model = RangeModel { min, max };
        model.check()?;
        Ok(model)
    }

    pub(crate) fn check(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min <= self.max) {
            return Err(Error::CorruptModel(format!(
                "invalid range [{}, {}]",
                self.min, self.max
            )));
        }
        Ok(())
    }

    /// `|x1 − x2| / (max − min)`, clamped to 1. A zero-width range gives 0 on equality, else 1.
    #[inline]
    pub fn distance(&self, x1: f64, x2: f64) -> f64 {
        let width = self.max - self.min;
        if width == 0.0 {
            return if x1 == x2 { 0.0 } else { 1.0 };
        }
        ((x1 - x2).abs() / width).min(1.0)
    }
}

pub fn fit_range(samples: &[f64]) -> Result<RangeModel> {
    let (first, rest) = samples.split_first().ok_or(Error::NoSamples)?;
    let (min, max) = rest
        .iter()
        .fold((*first, *first), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    RangeModel::new(min, max)
}
