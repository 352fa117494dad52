use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::normal::{erf, std_normal_cdf};
use super::Cdf;
use crate::error::{Error, Result};

/// Normal model fitted by sample mean and (n−1) standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianModel {
    pub mu: f64,
    pub sigma: f64,
    /// Set exactly when `sigma == 0`.
    pub degenerate: bool,
}

impl GaussianModel {
    /// Builds a model from explicit parameters.
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::CorruptModel(format!(
                "invalid gaussian parameters mu={mu}, sigma={sigma}"
            )));
        }
        Ok(GaussianModel {
            mu,
            sigma,
            degenerate: sigma == 0.0,
        })
    }

    pub(crate) fn check(&self) -> Result<()> {
        let rebuilt = GaussianModel::new(self.mu, self.sigma)?;
        if rebuilt.degenerate != self.degenerate {
            return Err(Error::CorruptModel(
                "gaussian degenerate flag disagrees with sigma".into(),
            ));
        }
        Ok(())
    }

    /// `erf(z/√2)` for the z-score of `x`; the distance is half the gap between two of these.
    #[inline]
    pub fn erf_coordinate(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        erf(z * FRAC_1_SQRT_2)
    }

    /// Gaussian probabilistic distance between two raw values.
    ///
    /// `½·|erf(z1/√2) − erf(z2/√2)|`, i.e. `|Φ(z1) − Φ(z2)|`. A degenerate
    /// model yields 0 on equality and 1 otherwise.
    pub fn distance(&self, x1: f64, x2: f64) -> f64 {
        if self.degenerate {
            return if x1 == x2 { 0.0 } else { 1.0 };
        }
        Self::coordinate_gap(self.erf_coordinate(x1), self.erf_coordinate(x2))
    }

    #[inline]
    pub(crate) fn coordinate_gap(e1: f64, e2: f64) -> f64 {
        0.5 * (e1 - e2).abs()
    }
}

impl Cdf for GaussianModel {
    fn cdf(&self, x: f64) -> f64 {
        if self.degenerate {
            return if x >= self.mu { 1.0 } else { 0.0 };
        }
        std_normal_cdf((x - self.mu) / self.sigma)
    }

    fn interval_mass(&self, x1: f64, x2: f64) -> f64 {
        self.distance(x1, x2)
    }
}

/// Fits mean and unbiased standard deviation; σ is 0 for one sample or a constant column.
pub fn fit_gaussian(samples: &[f64]) -> Result<GaussianModel> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::NoSamples);
    }
    let first = samples[0];
    if samples.iter().all(|&x| x == first) {
        return Ok(GaussianModel {
            mu: first,
            sigma: 0.0,
            degenerate: true,
        });
    }
    let nf = n as f64;
    let mu = samples.iter().sum::<f64>() / nf;
    // two-pass with the compensation term for the rounding in `mu`
    let (sq, lin) = samples.iter().fold((0.0, 0.0), |(sq, lin), &x| {
        let d = x - mu;
        (sq + d * d, lin + d)
    });
    let var = (sq - lin * lin / nf) / (nf - 1.0);
    let sigma = var.max(0.0).sqrt();
    Ok(GaussianModel {
        mu,
        sigma,
        degenerate: sigma == 0.0,
    })
}
