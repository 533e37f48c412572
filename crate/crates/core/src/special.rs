//! Thin wrappers over `statrs` special functions.

use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::function::{beta, gamma};

use crate::error::{Error, Result};

pub(crate) fn ln_gamma(x: f64) -> f64 {
    gamma::ln_gamma(x)
}

/// `ln C(n, k)` evaluated in log space.
pub fn ln_binomial_coefficient(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    if k == 0 || k == n {
        return Ok(0.0);
    }
    let n = n as f64;
    let k = k as f64;
    Ok(ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0))
}

/// Regularized incomplete beta `I_x(a, b)`.
pub(crate) fn beta_reg(a: f64, b: f64, x: f64) -> f64 {
    beta::beta_reg(a, b, x)
}

/// Upper regularized incomplete gamma `Q(a, x)`.
pub(crate) fn gamma_ur(a: f64, x: f64) -> f64 {
    gamma::gamma_ur(a, x)
}

/// Quantile of the standard Student-t distribution.
pub(crate) fn student_t_quantile(prob: f64, df: f64) -> f64 {
    StudentsT::new(0.0, 1.0, df)
        .expect("df > 0 checked by caller")
        .inverse_cdf(prob)
}
