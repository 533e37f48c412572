//! Statistics for the validation experiments: mean with a Student-t
//! confidence interval, one-sample two-sided t-test, and chi-square
//! goodness of fit with small-bin merging.

use crate::error::{Error, Result};
use crate::special::{beta_reg, gamma_ur, student_t_quantile};

/// Bins are merged until each has at least this expected count.
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub count: usize,
    pub mean: f64,
    /// Bessel-corrected.
    pub sample_std: f64,
    pub ci_half_width: f64,
    pub confidence: f64,
}

fn mean_and_std(samples: &[f64]) -> Result<(f64, f64)> {
    let count = samples.len();
    if count < 2 {
        return Err(Error::TooFewSamples(count));
    }
    let n = count as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok((mean, (ss / (n - 1.0)).sqrt()))
}

pub fn summarize(samples: &[f64], confidence: f64) -> Result<SummaryStats> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Domain(format!(
            "confidence {confidence} outside (0, 1)"
        )));
    }
    let (mean, sample_std) = mean_and_std(samples)?;
    let count = samples.len();
    let df = (count - 1) as f64;
    let t = student_t_quantile(0.5 * (1.0 + confidence), df);
    Ok(SummaryStats {
        count,
        mean,
        sample_std,
        ci_half_width: t * sample_std / (count as f64).sqrt(),
        confidence,
    })
}

/// Two-sided p-value of `|T| >= |t|` for Student's t with `df` degrees of
/// freedom, via `I_{df/(df+t^2)}(df/2, 1/2)`.
pub fn student_t_two_sided_p(t: f64, df: u64) -> Result<f64> {
    if df < 1 {
        return Err(Error::Domain("degrees of freedom must be >= 1".into()));
    }
    if t.is_nan() {
        return Err(Error::Domain("t statistic is NaN".into()));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    if t.is_infinite() {
        return Ok(0.0);
    }
    let df = df as f64;
    let x = df / (df + t * t);
    Ok(beta_reg(0.5 * df, 0.5, x).clamp(0.0, 1.0))
}

/// One-sample two-sided t-test of `mean == mu0`.
///
/// Zero-variance samples give `1.0` when the mean equals `mu0` and `0.0`
/// otherwise.
pub fn t_test_one_sample(samples: &[f64], mu0: f64) -> Result<f64> {
    let (mean, std) = mean_and_std(samples)?;
    if std == 0.0 {
        return Ok(if mean == mu0 { 1.0 } else { 0.0 });
    }
    let n = samples.len() as f64;
    let t = (mean - mu0) / (std / n.sqrt());
    student_t_two_sided_p(t, samples.len() as u64 - 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    /// Number of bins after merging, minus one.
    pub df: usize,
    pub p_value: f64,
    /// `(observed, expected)` for each merged bin.
    pub bins: Vec<(u64, f64)>,
}

/// Pearson chi-square goodness of fit of a histogram against a pmf.
///
/// Adjacent bins are merged left to right until each group expects at least
/// [`MIN_EXPECTED_COUNT`] hits; a short final group is folded into its
/// neighbour. A single remaining group yields `p = 1`.
pub fn chi_square_gof(
    observed: &[u64],
    expected_probs: &[f64],
    trials: u64,
) -> Result<ChiSquareOutcome> {
    if observed.len() != expected_probs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} observed bins vs {} probabilities",
            observed.len(),
            expected_probs.len()
        )));
    }
    let total: u64 = observed.iter().sum();
    if total != trials {
        return Err(Error::DimensionMismatch(format!(
            "observed counts sum to {total}, expected {trials} trials"
        )));
    }
    if expected_probs.iter().any(|&p| p.is_nan() || p < 0.0) {
        return Err(Error::Domain("negative or NaN probability".into()));
    }
    let mass: f64 = expected_probs.iter().sum();
    if (mass - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("probabilities sum to {mass}")));
    }

    let trials_f = trials as f64;
    let mut bins: Vec<(u64, f64)> = Vec::new();
    let mut acc = (0u64, 0.0f64);
    let mut open = false;
    for (&o, &p) in observed.iter().zip(expected_probs) {
        acc.0 += o;
        acc.1 += p * trials_f;
        open = true;
        if acc.1 >= MIN_EXPECTED_COUNT {
            bins.push(acc);
            acc = (0, 0.0);
            open = false;
        }
    }
    if open {
        match bins.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => bins.push(acc),
        }
    }

    let statistic: f64 = bins
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|&(o, e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let df = bins.len().saturating_sub(1);
    let p_value = if df == 0 || statistic == 0.0 {
        1.0
    } else {
        gamma_ur(0.5 * df as f64, 0.5 * statistic).clamp(0.0, 1.0)
    };
    Ok(ChiSquareOutcome {
        statistic,
        df,
        p_value,
        bins,
    })
}
