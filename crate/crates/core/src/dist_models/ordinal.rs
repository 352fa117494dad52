use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binned probability mass over ordered levels and its cumulative sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrdinalCdfModel {
    levels: Vec<String>,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
}

const MASS_TOLERANCE: f64 = 1e-12;

impl OrdinalCdfModel {
    /// Builds a model from explicit bin masses.
    pub fn from_pmf(levels: Vec<String>, pmf: Vec<f64>) -> Result<Self> {
        let mut acc = 0.0;
        let cdf = pmf
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        let model = OrdinalCdfModel { levels, pmf, cdf };
        model.check()?;
        Ok(model)
    }

    pub(crate) fn check(&self) -> Result<()> {
        let corrupt = |m: &str| Err(Error::CorruptModel(format!("ordinal model: {m}")));
        if self.levels.is_empty() {
            return corrupt("no levels");
        }
        if self.pmf.len() != self.levels.len() || self.cdf.len() != self.levels.len() {
            return corrupt("pmf/cdf length differs from level count");
        }
        if self.pmf.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return corrupt("negative or non-finite mass");
        }
        if self.cdf.windows(2).any(|w| w[0] > w[1]) {
            return corrupt("cdf decreases");
        }
        let mut acc = 0.0;
        for (p, f) in self.pmf.iter().zip(&self.cdf) {
            acc += p;
            if (acc - f).abs() > MASS_TOLERANCE {
                return corrupt("cdf is not the running sum of pmf");
            }
        }
        if (acc - 1.0).abs() > MASS_TOLERANCE {
            return corrupt("masses do not sum to 1");
        }
        Ok(())
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    pub fn level_index(&self, token: &str) -> Result<usize> {
        self.levels
            .iter()
            .position(|l| l == token)
            .ok_or_else(|| Error::UnknownToken(token.to_string()))
    }

    /// `|F(i) − F(j)|` by level index: mass strictly above the lower level up to
    /// and including the higher one.
    #[inline]
    pub fn distance_by_index(&self, i: usize, j: usize) -> f64 {
        (self.cdf[i] - self.cdf[j]).abs()
    }

    pub fn distance(&self, l1: &str, l2: &str) -> Result<f64> {
        Ok(self.distance_by_index(self.level_index(l1)?, self.level_index(l2)?))
    }
}

/// Relative-frequency bins, no smoothing. Unseen levels get zero mass.
pub fn fit_ordinal<'a, I>(column: I, levels: &[String]) -> Result<OrdinalCdfModel>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut counts = vec![0u64; levels.len()];
    let mut n = 0u64;
    for token in column {
        let k = levels
            .iter()
            .position(|l| l == token)
            .ok_or_else(|| Error::UnknownToken(token.to_string()))?;
        counts[k] += 1;
        n += 1;
    }
    if n == 0 {
        return Err(Error::NoSamples);
    }
    let nf = n as f64;
    let pmf = counts.iter().map(|&c| c as f64 / nf).collect();
    // cumulative counts are exact integers, so each F_k is one rounding away from truth
    let mut cum = 0u64;
    let cdf = counts
        .iter()
        .map(|&c| {
            cum += c;
            cum as f64 / nf
        })
        .collect();
    let model = OrdinalCdfModel {
        levels: levels.to_vec(),
        pmf,
        cdf,
    };
    model.check()?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vec<String> {
        ["A", "B", "C"].map(String::from).to_vec()
    }

    #[test]
    fn counts_to_bins() {
        let column = "AABBBCCCCC"
            .chars()
            .map(|c| c.to_string())
            .collect::<Vec<_>>();
        let m = fit_ordinal(column.iter().map(String::as_str), &abc()).unwrap();
        assert_eq!(m.pmf(), [0.2, 0.3, 0.5]);
        assert_eq!(m.cdf(), [0.2, 0.5, 1.0]);
        assert_eq!(m.distance("A", "C").unwrap(), 0.8);
        assert_eq!(m.distance("A", "B").unwrap(), 0.3);
        assert_eq!(m.distance("B", "B").unwrap(), 0.0);
    }

    #[test]
    fn point_mass() {
        let m = fit_ordinal(["B", "B", "B"], &abc()).unwrap();
        assert_eq!(m.pmf(), [0.0, 1.0, 0.0]);
        assert_eq!(m.cdf(), [0.0, 1.0, 1.0]);
    }

    #[test]
    fn errors() {
        assert_eq!(fit_ordinal([], &abc()).unwrap_err(), Error::NoSamples);
        assert_eq!(
            fit_ordinal(["D"], &abc()).unwrap_err(),
            Error::UnknownToken("D".into())
        );
        let m = OrdinalCdfModel::from_pmf(abc(), vec![0.2, 0.3, 0.5]).unwrap();
        assert!(m.distance("A", "Z").is_err());
        assert!(OrdinalCdfModel::from_pmf(abc(), vec![0.2, 0.3, 0.4]).is_err());
        assert!(OrdinalCdfModel::from_pmf(abc(), vec![0.2, 0.8]).is_err());
    }

    #[test]
    fn explicit_pmf_fixture() {
        let m = OrdinalCdfModel::from_pmf(abc(), vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(m.distance("A", "C").unwrap(), 0.8);
        assert_eq!(m.distance("C", "A").unwrap(), 0.8);
        assert_eq!(m.distance("A", "B").unwrap(), 0.3);
        assert_eq!(m.distance("B", "B").unwrap(), 0.0);
    }
}
