//! Expected cost of BTPE in iterations and uniform draws, Stirling bounds on
//! `n!`, and the large-`n` limits of the expected uniform count for
//! `p = 10/n` and `p = 1/2`.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::sampler::{compute_btpe_constants, BinomialParams};

pub use crate::special::ln_binomial_coefficient;

/// Expected BTPE iterations and uniforms per variate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationPrediction {
    pub e_iterations: f64,
    pub e_uniforms: f64,
}

/// `E[V] = 2 p4 C(n, M) r^M (1 - r)^(n - M)`, evaluated in log space.
/// `E[I]` is half of it.
pub fn predict_uniforms(params: &BinomialParams) -> Result<IterationPrediction> {
    let k = compute_btpe_constants(params)?;
    let n = params.n();
    let m = k.m as f64;
    let ln_ev = 2f64.ln()
        + k.p4.ln()
        + ln_binomial_coefficient(n, k.m)?
        + m * k.r.ln()
        + (n as f64 - m) * (1.0 - k.r).ln();
    let e_uniforms = ln_ev.exp();
    Ok(IterationPrediction {
        e_iterations: e_uniforms / 2.0,
        e_uniforms,
    })
}

/// `n! = sqrt(2 pi n) (n/e)^n e^alpha` with `1/(12n+1) < alpha < 1/(12n)`.
///
/// `central`, `lower` and `upper` overflow to infinity past `n = 170`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingBounds {
    pub n: u64,
    pub central: f64,
    pub lower: f64,
    pub upper: f64,
    pub alpha_lower: f64,
    pub alpha_upper: f64,
}

impl StirlingBounds {
    /// Midpoint of the `alpha` interval, used wherever a single value of
    /// `e^alpha` is needed.
    pub fn alpha_mid(&self) -> f64 {
        0.5 * (self.alpha_lower + self.alpha_upper)
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower < value && value < self.upper
    }
}

pub fn stirling_bounds(n: u64) -> Result<StirlingBounds> {
    if n < 1 {
        return Err(Error::Domain("Stirling bounds need n >= 1".into()));
    }
    let nf = n as f64;
    let central = (2.0 * PI * nf).sqrt() * (nf / E).powf(nf);
    let alpha_lower = 1.0 / (12.0 * nf + 1.0);
    let alpha_upper = 1.0 / (12.0 * nf);
    Ok(StirlingBounds {
        n,
        central,
        lower: central * alpha_lower.exp(),
        upper: central * alpha_upper.exp(),
        alpha_lower,
        alpha_upper,
    })
}

/// Stages of the `n -> infinity` limit of `E[V]` at `p = 10/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinPLimit {
    /// `floor(2.195 sqrt(10) - 4.6) + 0.5`
    pub p1_limit: f64,
    pub lambda_l_limit: f64,
    pub lambda_r_limit: f64,
    /// `c` at `M = 10`.
    pub c: f64,
    /// `alpha_10` used in the prefactor (midpoint of its bounds).
    pub alpha_10: f64,
    /// `2 / (sqrt(20 pi) e^alpha_10)`
    pub prefactor: f64,
    pub result: f64,
}

pub fn limit_min_p() -> MinPLimit {
    // With r = 10/n: r -> 0, q -> 1, f_M -> 10, M = 10.
    let f_m = 10.0;
    let m = 10.0;
    let x_m = m + 0.5;
    let p1 = (2.195 * 10f64.sqrt() - 4.6).floor() + 0.5;
    let x_l = x_m - p1;
    let x_r = x_m + p1;
    let a_l = (f_m - x_l) / f_m;
    let lambda_l = a_l * (1.0 + a_l / 2.0);
    let a_r = (x_r - f_m) / x_r;
    let lambda_r = a_r * (1.0 + a_r / 2.0);
    let c = 0.134 + 20.5 / (15.3 + m);

    let alpha_10 = stirling_bounds(10)
        .expect("n = 10 is in domain")
        .alpha_mid();
    let prefactor = 2.0 / ((20.0 * PI).sqrt() * alpha_10.exp());
    let p4 = p1 * (1.0 + 2.0 * c) + c / lambda_l + c / lambda_r;
    MinPLimit {
        p1_limit: p1,
        lambda_l_limit: lambda_l,
        lambda_r_limit: lambda_r,
        c,
        alpha_10,
        prefactor,
        result: prefactor * p4,
    }
}

/// Stages of the `n -> infinity` limit of `E[V]` at `p = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLimit {
    /// `lim p1 / sqrt(n) = 2.195 / 2`
    pub p1_over_sqrt_n: f64,
    pub c_limit: f64,
    /// `lim 2 / (sqrt(n) lambda_R) = 1 / 2.195`
    pub two_over_sqrtn_lambda_r: f64,
    /// `2 sqrt(2 / pi)`
    pub prefactor: f64,
    pub result: f64,
}

pub fn limit_half() -> HalfLimit {
    // 2.195 sqrt(r q) with r = q = 1/2
    let p1_over_sqrt_n = 2.195 * 0.25f64.sqrt();
    let c_limit = 0.134;
    let two_over_sqrtn_lambda_r = 1.0 / (2.0 * p1_over_sqrt_n);
    let prefactor = 2.0 * (2.0 / PI).sqrt();
    let result =
        prefactor * (p1_over_sqrt_n * (1.0 + 2.0 * c_limit) + two_over_sqrtn_lambda_r * c_limit);
    HalfLimit {
        p1_over_sqrt_n,
        c_limit,
        two_over_sqrtn_lambda_r,
        prefactor,
        result,
    }
}
