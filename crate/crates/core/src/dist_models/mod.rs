//! Per-attribute distribution models whose CDFs drive the probabilistic distance.

mod empirical;
mod gaussian;
mod normal;
mod ordinal;
mod range;

pub use empirical::{fit_empirical, EmpiricalCdfModel};
pub use gaussian::{fit_gaussian, GaussianModel};
pub use normal::{erf, std_normal_cdf};
pub use ordinal::{fit_ordinal, OrdinalCdfModel};
pub use range::{fit_range, RangeModel};

/// A cumulative distribution function over the reals.
pub trait Cdf {
    /// `P(X <= x)`.
    fn cdf(&self, x: f64) -> f64;

    /// Probability mass between two values, `|F(x1) - F(x2)|`.
    ///
    /// Implementations may override this with a form that is more exact than
    /// differencing two `cdf` calls, but must stay symmetric in its operands.
    fn interval_mass(&self, x1: f64, x2: f64) -> f64 {
        (self.cdf(x1) - self.cdf(x2)).abs()
    }
}
