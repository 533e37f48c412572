//! Binomial random variate generation with the BTPE acceptance-rejection
//! algorithm, an inverse-transform fallback, and the tooling needed to
//! predict and measure how many `U(0,1)` draws each variate costs.
//!
//! The crate is split into:
//!
//! * [`uniform`]: a splitmix64 generator and a counting decorator.
//! * [`sampler`]: BTPE, inverse transform, and the dispatch between them.
//! * [`analysis`]: expected iteration counts, Stirling bounds and the
//!   large-`n` limits of the expected uniform count.
//! * [`stats`]: summaries, confidence intervals, t-tests and chi-square
//!   goodness of fit.
//! * [`harness`]: the experiment commands behind the `btpe` binary.

pub mod analysis;
mod error;
pub mod harness;
pub mod sampler;
mod special;
pub mod stats;
pub mod uniform;

pub use analysis::{
    limit_half, limit_min_p, ln_binomial_coefficient, predict_uniforms, stirling_bounds, HalfLimit,
    IterationPrediction, MinPLimit, StirlingBounds,
};
pub use error::{Error, Result};
pub use sampler::{
    btpe_applicable, compute_btpe_constants, log_pmf, sample, sample_btpe,
    sample_inverse_transform, BinomialParams, BtpeConstants,
};
pub use stats::{
    chi_square_gof, student_t_two_sided_p, summarize, t_test_one_sample, SummaryStats,
};
pub use uniform::{to_unit_interval, CountingSource, SequenceSource, SplitMix64, UniformSource};
