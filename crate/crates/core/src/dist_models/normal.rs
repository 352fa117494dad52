use std::f64::consts::FRAC_1_SQRT_2;

/// Gauss error function.
///
/// Backed by the `libm` port of the FreeBSD `s_erf.c` rational approximations
/// (error below one ulp across the real line).
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Standard normal CDF, `Φ(z) = (1 + erf(z/√2)) / 2`.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z * FRAC_1_SQRT_2))
}
