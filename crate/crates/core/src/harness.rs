//! Experiment commands: predicted uniform counts, the instrumented
//! validation run, limit report and sampler goodness-of-fit audit.
//!
//! Every cell derives its own generator seed from the master seed and its
//! `(n, p)`, so results do not depend on cell order or on parallelism.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::analysis::{limit_half, limit_min_p, predict_uniforms, HalfLimit, MinPLimit};
use crate::error::{Error, Result};
use crate::sampler::{binomial_pmf, compute_btpe_constants, sample, sample_btpe, BinomialParams};
use crate::stats::{chi_square_gof, summarize, t_test_one_sample};
use crate::uniform::{mix64, CountingSource, SplitMix64};

pub const DEFAULT_SEED: u64 = 0x5EED_0B7E;
pub const DEFAULT_TRIALS: usize = 10_000;
pub const DEFAULT_GOF_TRIALS: usize = 100_000;
pub const DEFAULT_CONFIDENCE: f64 = 0.95;
/// Significance level of the goodness-of-fit audit.
pub const GOF_ALPHA: f64 = 0.01;

pub const VALIDATE_HEADER: &str = "n,p,predicted_ev,mean,ci_half_width,t_p_value,trials,seed";
pub const PREDICT_HEADER: &str = "n,ev_min_p,ev_half";
pub const GOF_HEADER: &str = "n,p,chi2_p_value,pass";
pub const LIMITS_HEADER: &str = "quantity,value";

/// Cells audited by [`cmd_gof`]: both sampler paths, reflection and a
/// degenerate case.
pub const GOF_CELLS: &[(u64, f64)] = &[
    (10, 0.0),
    (19, 0.5),
    (20, 0.5),
    (50, 0.3),
    (100, 0.7),
    (1000, 0.005),
    (1000, 0.01),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PMode {
    /// `p = 10 / n`
    MinP,
    Half,
    Both,
}

impl PMode {
    fn probabilities(self, n: u64) -> Vec<f64> {
        let min_p = 10.0 / n as f64;
        match self {
            PMode::MinP => vec![min_p],
            PMode::Half => vec![0.5],
            PMode::Both => vec![min_p, 0.5],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub confidence: f64,
    pub n_list: Vec<u64>,
    pub p_mode: PMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            confidence: DEFAULT_CONFIDENCE,
            n_list: powers_of_two(5, 20),
            p_mode: PMode::Both,
        }
    }
}

/// `2^lo, ..., 2^hi`.
pub fn powers_of_two(lo: u32, hi: u32) -> Vec<u64> {
    (lo..=hi).map(|e| 1u64 << e).collect()
}

/// Rows of the predicted-cost table: the smallest BTPE-eligible `n`
/// followed by `2^5 ..= 2^20`.
pub fn predict_n_list() -> Vec<u64> {
    std::iter::once(20).chain(powers_of_two(5, 20)).collect()
}

/// Seed of one experiment cell.
pub fn derive_cell_seed(master: u64, n: u64, p: f64) -> u64 {
    mix64(master ^ mix64(n) ^ mix64(p.to_bits()))
}

/// The `(n, p)` cells of a run, sorted and deduplicated.
pub fn cells(config: &RunConfig) -> Vec<(u64, f64)> {
    let mut cells: Vec<(u64, f64)> = config
        .n_list
        .iter()
        .flat_map(|&n| {
            config
                .p_mode
                .probabilities(n)
                .into_iter()
                .map(move |p| (n, p))
        })
        .collect();
    cells.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    cells.dedup();
    cells
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictRow {
    pub n: u64,
    pub ev_min_p: f64,
    pub ev_half: f64,
}

pub fn cmd_predict(config: &RunConfig) -> Result<Vec<PredictRow>> {
    config
        .n_list
        .iter()
        .map(|&n| {
            let ev = |p: f64| -> Result<f64> {
                Ok(predict_uniforms(&BinomialParams::new(n, p)?)?.e_uniforms)
            };
            Ok(PredictRow {
                n,
                ev_min_p: ev(10.0 / n as f64)?,
                ev_half: ev(0.5)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub n: u64,
    pub p: f64,
    pub predicted_ev: f64,
    pub empirical_mean: f64,
    pub ci_half_width: f64,
    pub t_p_value: f64,
    pub trials: usize,
    pub seed: u64,
    /// Variates whose uniform count was odd (always zero for BTPE).
    pub odd_counts: usize,
    pub max_uniforms: u64,
}

/// Generates `trials` BTPE variates for one cell and records the uniforms
/// each consumed.
pub fn run_cell(n: u64, p: f64, config: &RunConfig) -> Result<ExperimentRow> {
    let params = BinomialParams::new(n, p)?;
    let constants = compute_btpe_constants(&params)?;
    let predicted_ev = predict_uniforms(&params)?.e_uniforms;
    let seed = derive_cell_seed(config.seed, n, p);

    let mut source = CountingSource::new(SplitMix64::new(seed));
    let mut counts = Vec::with_capacity(config.trials);
    for _ in 0..config.trials {
        let before = source.draws();
        sample_btpe(&params, &constants, &mut source);
        counts.push(source.draws() - before);
    }

    let odd_counts = counts.iter().filter(|&&c| c % 2 == 1).count();
    let max_uniforms = counts.iter().copied().max().unwrap_or(0);
    let samples: Vec<f64> = counts.into_iter().map(|c| c as f64).collect();
    let summary = summarize(&samples, config.confidence)?;
    let t_p_value = t_test_one_sample(&samples, predicted_ev)?;
    Ok(ExperimentRow {
        n,
        p,
        predicted_ev,
        empirical_mean: summary.mean,
        ci_half_width: summary.ci_half_width,
        t_p_value,
        trials: config.trials,
        seed,
        odd_counts,
        max_uniforms,
    })
}

pub fn cmd_validate(config: &RunConfig) -> Result<Vec<ExperimentRow>> {
    cells(config)
        .into_par_iter()
        .map(|(n, p)| run_cell(n, p, config))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitsReport {
    pub min_p: MinPLimit,
    pub half: HalfLimit,
    /// Largest `n` at which the predictor is compared with the limits.
    pub n: u64,
    pub ev_min_p_at_n: f64,
    pub ev_half_at_n: f64,
}

impl LimitsReport {
    pub fn min_p_delta(&self) -> f64 {
        (self.ev_min_p_at_n - self.min_p.result).abs()
    }

    pub fn half_delta(&self) -> f64 {
        (self.ev_half_at_n - self.half.result).abs()
    }
}

pub fn cmd_limits() -> LimitsReport {
    let n = 1u64 << 20;
    let ev = |p: f64| {
        predict_uniforms(&BinomialParams::new(n, p).expect("valid p"))
            .expect("applicable at n = 2^20")
            .e_uniforms
    };
    LimitsReport {
        min_p: limit_min_p(),
        half: limit_half(),
        n,
        ev_min_p_at_n: ev(10.0 / n as f64),
        ev_half_at_n: ev(0.5),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofRow {
    pub n: u64,
    pub p: f64,
    pub statistic: f64,
    pub df: usize,
    pub chi2_p_value: f64,
    pub pass: bool,
    pub seed: u64,
}

/// Histograms `trials` variates of `B(n, p)` drawn through [`sample`] and
/// tests them against the exact pmf.
pub fn gof_cell(n: u64, p: f64, trials: usize, master_seed: u64) -> Result<GofRow> {
    let params = BinomialParams::new(n, p)?;
    let seed = derive_cell_seed(master_seed, n, p);
    let mut source = SplitMix64::new(seed);
    let mut histogram = vec![0u64; n as usize + 1];
    for _ in 0..trials {
        histogram[sample(&params, &mut source) as usize] += 1;
    }
    let probs = binomial_pmf(n, p)?;
    let outcome = chi_square_gof(&histogram, &probs, trials as u64)?;
    Ok(GofRow {
        n,
        p,
        statistic: outcome.statistic,
        df: outcome.df,
        chi2_p_value: outcome.p_value,
        pass: outcome.p_value > GOF_ALPHA,
        seed,
    })
}

pub fn cmd_gof(cells: &[(u64, f64)], trials: usize, master_seed: u64) -> Result<Vec<GofRow>> {
    cells
        .par_iter()
        .map(|&(n, p)| gof_cell(n, p, trials, master_seed))
        .collect()
}

/// Formats like C's `%.6g`.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_predict_csv<W: Write>(mut w: W, rows: &[PredictRow]) -> io::Result<()> {
    writeln!(w, "{PREDICT_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{:.3},{:.3}", r.n, r.ev_min_p, r.ev_half)?;
    }
    Ok(())
}

pub fn write_validate_csv<W: Write>(mut w: W, rows: &[ExperimentRow]) -> io::Result<()> {
    writeln!(w, "{VALIDATE_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{:.3},{:.3},{},{},{},{}",
            r.n,
            fmt_sig6(r.p),
            r.predicted_ev,
            r.empirical_mean,
            fmt_sig6(r.ci_half_width),
            fmt_sig6(r.t_p_value),
            r.trials,
            r.seed
        )?;
    }
    Ok(())
}

pub fn write_limits_csv<W: Write>(mut w: W, report: &LimitsReport) -> io::Result<()> {
    let m = &report.min_p;
    let h = &report.half;
    let lines: [(&str, f64); 16] = [
        ("min_p.p1_limit", m.p1_limit),
        ("min_p.lambda_l_limit", m.lambda_l_limit),
        ("min_p.lambda_r_limit", m.lambda_r_limit),
        ("min_p.c", m.c),
        ("min_p.alpha_10", m.alpha_10),
        ("min_p.prefactor", m.prefactor),
        ("min_p.result", m.result),
        ("half.p1_over_sqrt_n", h.p1_over_sqrt_n),
        ("half.c_limit", h.c_limit),
        ("half.two_over_sqrtn_lambda_r", h.two_over_sqrtn_lambda_r),
        ("half.prefactor", h.prefactor),
        ("half.result", h.result),
        ("predicted.min_p_at_2^20", report.ev_min_p_at_n),
        ("predicted.half_at_2^20", report.ev_half_at_n),
        ("delta.min_p", report.min_p_delta()),
        ("delta.half", report.half_delta()),
    ];
    writeln!(w, "{LIMITS_HEADER}")?;
    for (name, value) in lines {
        writeln!(w, "{name},{}", fmt_sig6(value))?;
    }
    Ok(())
}

pub fn write_gof_csv<W: Write>(mut w: W, rows: &[GofRow]) -> io::Result<()> {
    writeln!(w, "{GOF_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            r.n,
            fmt_sig6(r.p),
            fmt_sig6(r.chi2_p_value),
            r.pass
        )?;
    }
    Ok(())
}

/// Rejects configurations that cannot produce a table.
pub fn check_config(config: &RunConfig) -> Result<()> {
    if config.trials < 2 {
        return Err(Error::TooFewSamples(config.trials));
    }
    if !(config.confidence > 0.0 && config.confidence < 1.0) {
        return Err(Error::Domain(format!(
            "confidence {} outside (0, 1)",
            config.confidence
        )));
    }
    Ok(())
}
