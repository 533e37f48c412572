//! Binomial variate generation.
//!
//! [`sample`] uses BTPE (triangle, parallelogram and two exponential tails
//! over a step-function version of the pmf) whenever
//! `min(p, 1 - p) * n >= 10`, and walks the CDF with a single uniform
//! otherwise. Both paths work on `r = min(p, 1 - p)` and reflect the result
//! when `p > 0.5`.

use crate::error::{Error, Result};
use crate::special::ln_gamma;
use crate::uniform::UniformSource;

/// Absolute slack on `r >= 10 / n`: computing `1 - p` rounds by at most
/// half an ulp of 1.0, so `p = (n - 10) / n` must stay applicable.
const APPLICABILITY_SLACK: f64 = f64::EPSILON;

/// Parameters of `B(n, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialParams {
    n: u64,
    p: f64,
}

impl BinomialParams {
    pub fn new(n: u64, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(BinomialParams { n, p })
    }

    /// Like [`new`](Self::new) but for callers holding a signed trial count.
    pub fn from_signed(n: i64, p: f64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeTrials(n));
        }
        Self::new(n as u64, p)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `min(p, 1 - p)`.
    pub fn r(&self) -> f64 {
        self.p.min(1.0 - self.p)
    }

    fn is_degenerate(&self) -> bool {
        self.n == 0 || self.p == 0.0 || self.p == 1.0
    }

    /// Maps a variate drawn from `B(n, r)` back onto `B(n, p)`.
    #[inline]
    fn reflect(&self, y: u64) -> u64 {
        if self.p > 0.5 {
            self.n - y
        } else {
            y
        }
    }
}

/// Region constants of BTPE for one `(n, p)`.
///
/// `p1..p4` are cumulative areas of the triangle, the two parallelograms and
/// the left and right exponential tails, in units where the pmf at the mode
/// has height one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BtpeConstants {
    pub r: f64,
    pub q: f64,
    pub f_m: f64,
    pub m: u64,
    pub p1: f64,
    pub x_m: f64,
    pub x_l: f64,
    pub x_r: f64,
    pub c: f64,
    pub a_l: f64,
    pub lambda_l: f64,
    pub a_r: f64,
    pub lambda_r: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

/// Whether BTPE handles `params`: `n >= 1` and `min(p, 1 - p) * n >= 10`.
pub fn btpe_applicable(params: &BinomialParams) -> bool {
    params.n >= 1 && params.r() >= 10.0 / params.n as f64 - APPLICABILITY_SLACK
}

pub fn compute_btpe_constants(params: &BinomialParams) -> Result<BtpeConstants> {
    if !btpe_applicable(params) {
        return Err(Error::NotApplicable {
            n: params.n,
            p: params.p,
        });
    }
    let n = params.n as f64;
    let r = params.r();
    let q = 1.0 - r;
    let f_m = n * r + r;
    let m = f_m.floor();
    let p1 = (2.195 * (n * r * q).sqrt() - 4.6 * q).floor() + 0.5;
    let x_m = m + 0.5;
    let x_l = x_m - p1;
    let x_r = x_m + p1;
    let c = 0.134 + 20.5 / (15.3 + m);
    let a_l = (f_m - x_l) / (f_m - x_l * r);
    let lambda_l = a_l * (1.0 + a_l / 2.0);
    let a_r = (x_r - f_m) / (x_r * q);
    let lambda_r = a_r * (1.0 + a_r / 2.0);
    let p2 = p1 * (1.0 + 2.0 * c);
    let p3 = p2 + c / lambda_l;
    let p4 = p3 + c / lambda_r;
    Ok(BtpeConstants {
        r,
        q,
        f_m,
        m: m as u64,
        p1,
        x_m,
        x_l,
        x_r,
        c,
        a_l,
        lambda_l,
        a_r,
        lambda_r,
        p2,
        p3,
        p4,
    })
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Natural log of `C(n, y) p^y (1 - p)^(n - y)`.
///
/// The endpoints `p = 0` and `p = 1` give `0` or `-inf`.
pub fn log_pmf(n: u64, p: f64, y: u64) -> Result<f64> {
    check_probability(p)?;
    if y > n {
        return Err(Error::Domain(format!("y = {y} outside [0, {n}]")));
    }
    if p == 0.0 {
        return Ok(if y == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if p == 1.0 {
        return Ok(if y == n { 0.0 } else { f64::NEG_INFINITY });
    }
    Ok(log_pmf_interior(n, p, y))
}

#[inline]
fn log_pmf_interior(n: u64, p: f64, y: u64) -> f64 {
    let nf = n as f64;
    let yf = y as f64;
    ln_gamma(nf + 1.0) - ln_gamma(yf + 1.0) - ln_gamma(nf - yf + 1.0)
        + yf * p.ln()
        + (nf - yf) * (-p).ln_1p()
}

/// Full pmf of `B(n, p)` as a vector indexed by `0..=n`.
pub fn binomial_pmf(n: u64, p: f64) -> Result<Vec<f64>> {
    (0..=n).map(|y| log_pmf(n, p, y).map(f64::exp)).collect()
}

/// Inverse-transform (CDF walk) sampling from one uniform.
///
/// Degenerate parameters return their forced value without drawing.
pub fn sample_inverse_transform<S: UniformSource + ?Sized>(
    params: &BinomialParams,
    source: &mut S,
) -> u64 {
    if params.is_degenerate() {
        return degenerate_value(params);
    }
    let n = params.n;
    let r = params.r();
    let q = 1.0 - r;
    let s = r / q;
    let a = (n as f64 + 1.0) * s;
    let mut f = q.powf(n as f64);
    let mut u = source.next_uniform();
    let mut k = 0u64;
    // k == n stops the walk if rounding leaves u above the remaining mass
    while u > f && k < n {
        u -= f;
        k += 1;
        f *= a / k as f64 - s;
    }
    params.reflect(k)
}

fn degenerate_value(params: &BinomialParams) -> u64 {
    if params.p == 1.0 {
        params.n
    } else {
        0
    }
}

/// BTPE acceptance-rejection sampling.
///
/// Every iteration draws exactly two uniforms up front, so the number of
/// uniforms consumed is always even and at least two. `constants` must come
/// from [`compute_btpe_constants`] for the same `params`.
pub fn sample_btpe<S: UniformSource + ?Sized>(
    params: &BinomialParams,
    constants: &BtpeConstants,
    source: &mut S,
) -> u64 {
    let k = constants;
    debug_assert_eq!(k.r, params.r());
    let n = params.n;
    let nf = n as f64;
    let ln_f_mode = log_pmf_interior(n, k.r, k.m);

    loop {
        let u = source.next_uniform() * k.p4;
        let mut v = source.next_uniform();

        // triangle: accepted without evaluating the pmf
        if u <= k.p1 {
            let y = (k.x_m - k.p1 * v + u).floor() as u64;
            return params.reflect(y);
        }

        let y = if u <= k.p2 {
            // parallelogram
            let x = k.x_l + (u - k.p1) / k.c;
            v = v * k.c + 1.0 - (k.x_m - x).abs() / k.p1;
            if v > 1.0 {
                continue;
            }
            x.floor()
        } else if u <= k.p3 {
            // left exponential tail
            let y = (k.x_l + v.ln() / k.lambda_l).floor();
            if y < 0.0 {
                continue;
            }
            v *= (u - k.p2) * k.lambda_l;
            y
        } else {
            // right exponential tail
            let y = (k.x_r - v.ln() / k.lambda_r).floor();
            if y > nf {
                continue;
            }
            v *= (u - k.p3) * k.lambda_r;
            y
        };
        if !(0.0..=nf).contains(&y) {
            continue;
        }
        let y = y as u64;

        if v.ln() <= log_pmf_interior(n, k.r, y) - ln_f_mode {
            return params.reflect(y);
        }
    }
}

/// Draws one variate from `B(n, p)`, using BTPE when applicable and the
/// inverse transform otherwise.
pub fn sample<S: UniformSource + ?Sized>(params: &BinomialParams, source: &mut S) -> u64 {
    match compute_btpe_constants(params) {
        Ok(constants) => sample_btpe(params, &constants, source),
        Err(_) => sample_inverse_transform(params, source),
    }
}

/// A `B(n, p)` sampler with its BTPE constants computed once.
#[derive(Debug, Clone, Copy)]
pub struct Binomial {
    params: BinomialParams,
    constants: Option<BtpeConstants>,
}

impl Binomial {
    pub fn new(n: u64, p: f64) -> Result<Self> {
        Ok(Self::from_params(BinomialParams::new(n, p)?))
    }

    pub fn from_params(params: BinomialParams) -> Self {
        Binomial {
            params,
            constants: compute_btpe_constants(&params).ok(),
        }
    }

    pub fn params(&self) -> &BinomialParams {
        &self.params
    }

    /// BTPE constants, or `None` when the inverse transform is used.
    pub fn constants(&self) -> Option<&BtpeConstants> {
        self.constants.as_ref()
    }

    pub fn uses_btpe(&self) -> bool {
        self.constants.is_some()
    }

    pub fn sample<S: UniformSource + ?Sized>(&self, source: &mut S) -> u64 {
        match &self.constants {
            Some(k) => sample_btpe(&self.params, k, source),
            None => sample_inverse_transform(&self.params, source),
        }
    }
}
