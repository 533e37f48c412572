use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `p` is NaN or outside `[0, 1]`.
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("number of trials must be non-negative, got {0}")]
    NegativeTrials(i64),

    #[error("BTPE requires min(p, 1-p) * n >= 10, got n = {n}, p = {p}")]
    NotApplicable { n: u64, p: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
