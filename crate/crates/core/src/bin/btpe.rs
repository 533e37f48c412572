//! `btpe`: reproduce the predicted and measured uniform-consumption tables
//! for BTPE, print the large-`n` limits, and audit the sampler.
//!
//! Every flag can also be set through a `BTPE_`-prefixed environment
//! variable. Exit codes: 0 success, 1 usage error, 2 cell failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use btpe::harness::{self, PMode, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "btpe", version, about = "BTPE binomial sampler experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expected uniforms per variate at p = 10/n and p = 0.5.
    Predict(Common),
    /// Measure uniforms per variate and t-test against the prediction.
    Validate(Common),
    /// Large-n limits of the expected uniform count.
    Limits(Common),
    /// Chi-square goodness of fit of the sampler output.
    Gof(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Master seed, decimal or 0x-prefixed hex.
    #[arg(long, env = "BTPE_SEED", value_parser = parse_seed)]
    seed: Option<u64>,

    /// Variates per cell (default 10000; 100000 for gof).
    #[arg(long, env = "BTPE_TRIALS")]
    trials: Option<usize>,

    #[arg(long, env = "BTPE_CONFIDENCE", default_value_t = harness::DEFAULT_CONFIDENCE)]
    confidence: f64,

    /// Smallest n, a power of two.
    #[arg(long, env = "BTPE_N_MIN", value_parser = parse_power_of_two)]
    n_min: Option<u64>,

    /// Largest n, a power of two.
    #[arg(long, env = "BTPE_N_MAX", value_parser = parse_power_of_two)]
    n_max: Option<u64>,

    #[arg(long, env = "BTPE_P_MODE", value_enum, default_value_t = PModeArg::Both)]
    p_mode: PModeArg,

    /// Output file; standard output when omitted.
    #[arg(long, env = "BTPE_OUT")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PModeArg {
    MinP,
    Half,
    Both,
}

impl From<PModeArg> for PMode {
    fn from(m: PModeArg) -> Self {
        match m {
            PModeArg::MinP => PMode::MinP,
            PModeArg::Half => PMode::Half,
            PModeArg::Both => PMode::Both,
        }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn parse_power_of_two(s: &str) -> Result<u64, String> {
    let n: u64 = s.parse().map_err(|e| format!("invalid n {s:?}: {e}"))?;
    if n.is_power_of_two() {
        Ok(n)
    } else {
        Err(format!("{n} is not a power of two"))
    }
}

enum Failure {
    Usage(String),
    Cell(String),
}

impl Common {
    fn config(&self, default_n: Vec<u64>, default_trials: usize) -> Result<RunConfig, Failure> {
        let n_list = match (self.n_min, self.n_max) {
            (None, None) => default_n,
            (lo, hi) => {
                let lo = lo.unwrap_or(1 << 5).trailing_zeros();
                let hi = hi.unwrap_or(1 << 20).trailing_zeros();
                if lo > hi {
                    return Err(Failure::Usage("--n-min exceeds --n-max".into()));
                }
                harness::powers_of_two(lo, hi)
            }
        };
        let config = RunConfig {
            seed: self.seed.unwrap_or(harness::DEFAULT_SEED),
            trials: self.trials.unwrap_or(default_trials),
            confidence: self.confidence,
            n_list,
            p_mode: self.p_mode.into(),
        };
        harness::check_config(&config).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(config)
    }

    fn writer(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
                Failure::Usage(format!("cannot create {}: {e}", path.display()))
            })?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Cell(format!("write failed: {e}"))
}

fn cell_failure(e: btpe::Error) -> Failure {
    Failure::Cell(e.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Predict(args) => {
            let config = args.config(harness::predict_n_list(), harness::DEFAULT_TRIALS)?;
            let rows = harness::cmd_predict(&config).map_err(cell_failure)?;
            let mut w = args.writer()?;
            harness::write_predict_csv(&mut w, &rows).map_err(io_failure)?;
            w.flush().map_err(io_failure)
        }
        Command::Validate(args) => {
            let config = args.config(harness::powers_of_two(5, 20), harness::DEFAULT_TRIALS)?;
            let rows = harness::cmd_validate(&config).map_err(cell_failure)?;
            let mut w = args.writer()?;
            harness::write_validate_csv(&mut w, &rows).map_err(io_failure)?;
            w.flush().map_err(io_failure)
        }
        Command::Limits(args) => {
            let report = harness::cmd_limits();
            let mut w = args.writer()?;
            harness::write_limits_csv(&mut w, &report).map_err(io_failure)?;
            w.flush().map_err(io_failure)
        }
        Command::Gof(args) => {
            let config = args.config(Vec::new(), harness::DEFAULT_GOF_TRIALS)?;
            let rows = harness::cmd_gof(harness::GOF_CELLS, config.trials, config.seed)
                .map_err(cell_failure)?;
            let mut w = args.writer()?;
            harness::write_gof_csv(&mut w, &rows).map_err(io_failure)?;
            w.flush().map_err(io_failure)?;
            if rows.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Failure::Cell("goodness-of-fit audit failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cell(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
