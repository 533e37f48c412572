//! Python bindings for the `btpe` crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use btpe::harness::{self, PMode, RunConfig};
use btpe::sampler::Binomial;
use btpe::{BinomialParams, CountingSource, SplitMix64, UniformSource};

fn py_err(e: btpe::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(n: i64, p: f64) -> PyResult<BinomialParams> {
    BinomialParams::from_signed(n, p).map_err(py_err)
}

fn unsigned(n: i64) -> PyResult<u64> {
    u64::try_from(n).map_err(|_| py_err(btpe::Error::NegativeTrials(n)))
}

/// splitmix64 generator that counts the uniforms drawn from it.
#[pyclass(module = "pybtpe")]
struct Generator {
    source: CountingSource<SplitMix64>,
}

#[pymethods]
impl Generator {
    #[new]
    fn new(seed: u64) -> Self {
        Generator {
            source: CountingSource::new(SplitMix64::new(seed)),
        }
    }

    /// Raw 64-bit output; not counted as a uniform draw.
    fn next_u64(&mut self) -> u64 {
        self.source.inner_mut().next_u64()
    }

    fn next_uniform(&mut self) -> f64 {
        self.source.next_uniform()
    }

    /// Uniforms drawn since construction or the last `reset_draws`.
    #[getter]
    fn draws(&self) -> u64 {
        self.source.draws()
    }

    fn reset_draws(&mut self) {
        self.source.reset();
    }

    /// One variate of B(n, p): BTPE when applicable, inverse transform otherwise.
    fn sample(&mut self, n: i64, p: f64) -> PyResult<u64> {
        Ok(btpe::sample(&params(n, p)?, &mut self.source))
    }

    fn sample_many(&mut self, n: i64, p: f64, count: usize) -> PyResult<Vec<u64>> {
        let b = Binomial::from_params(params(n, p)?);
        Ok((0..count).map(|_| b.sample(&mut self.source)).collect())
    }

    fn sample_btpe(&mut self, n: i64, p: f64) -> PyResult<u64> {
        let bp = params(n, p)?;
        let k = btpe::compute_btpe_constants(&bp).map_err(py_err)?;
        Ok(btpe::sample_btpe(&bp, &k, &mut self.source))
    }

    fn sample_inverse_transform(&mut self, n: i64, p: f64) -> PyResult<u64> {
        Ok(btpe::sample_inverse_transform(
            &params(n, p)?,
            &mut self.source,
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "Generator(state=0x{:016x}, draws={})",
            self.source.inner().state(),
            self.source.draws()
        )
    }
}

#[pyclass(module = "pybtpe", frozen, get_all)]
struct BtpeConstants {
    r: f64,
    q: f64,
    f_m: f64,
    m: u64,
    p1: f64,
    x_m: f64,
    x_l: f64,
    x_r: f64,
    c: f64,
    a_l: f64,
    lambda_l: f64,
    a_r: f64,
    lambda_r: f64,
    p2: f64,
    p3: f64,
    p4: f64,
}

impl From<btpe::BtpeConstants> for BtpeConstants {
    fn from(k: btpe::BtpeConstants) -> Self {
        BtpeConstants {
            r: k.r,
            q: k.q,
            f_m: k.f_m,
            m: k.m,
            p1: k.p1,
            x_m: k.x_m,
            x_l: k.x_l,
            x_r: k.x_r,
            c: k.c,
            a_l: k.a_l,
            lambda_l: k.lambda_l,
            a_r: k.a_r,
            lambda_r: k.lambda_r,
            p2: k.p2,
            p3: k.p3,
            p4: k.p4,
        }
    }
}

#[pyclass(module = "pybtpe", frozen, get_all)]
struct IterationPrediction {
    e_iterations: f64,
    e_uniforms: f64,
}

#[pymethods]
impl IterationPrediction {
    fn __repr__(&self) -> String {
        format!(
            "IterationPrediction(e_iterations={}, e_uniforms={})",
            self.e_iterations, self.e_uniforms
        )
    }
}

#[pyclass(module = "pybtpe", frozen, get_all)]
struct StirlingBounds {
    n: u64,
    central: f64,
    lower: f64,
    upper: f64,
    alpha_lower: f64,
    alpha_upper: f64,
}

#[pyclass(module = "pybtpe", frozen, get_all)]
struct MinPLimit {
    p1_limit: f64,
    lambda_l_limit: f64,
    lambda_r_limit: f64,
    c: f64,
    alpha_10: f64,
    prefactor: f64,
    result: f64,
}

#[pyclass(module = "pybtpe", frozen, get_all)]
struct HalfLimit {
    p1_over_sqrt_n: f64,
    c_limit: f64,
    two_over_sqrtn_lambda_r: f64,
    prefactor: f64,
    result: f64,
}

#[pyclass(module = "pybtpe", frozen, get_all)]
struct SummaryStats {
    count: usize,
    mean: f64,
    sample_std: f64,
    ci_half_width: f64,
    confidence: f64,
}

#[pyclass(module = "pybtpe", frozen, get_all)]
struct ExperimentRow {
    n: u64,
    p: f64,
    predicted_ev: f64,
    empirical_mean: f64,
    ci_half_width: f64,
    t_p_value: f64,
    trials: usize,
    seed: u64,
    odd_counts: usize,
    max_uniforms: u64,
}

#[pymethods]
impl ExperimentRow {
    fn __repr__(&self) -> String {
        format!(
            "ExperimentRow(n={}, p={}, predicted_ev={:.3}, mean={:.3}, t_p_value={:.3})",
            self.n, self.p, self.predicted_ev, self.empirical_mean, self.t_p_value
        )
    }
}

#[pyfunction]
fn btpe_applicable(n: i64, p: f64) -> PyResult<bool> {
    Ok(btpe::btpe_applicable(&params(n, p)?))
}

#[pyfunction]
fn compute_btpe_constants(n: i64, p: f64) -> PyResult<BtpeConstants> {
    btpe::compute_btpe_constants(&params(n, p)?)
        .map(Into::into)
        .map_err(py_err)
}

#[pyfunction]
fn log_pmf(n: i64, p: f64, y: i64) -> PyResult<f64> {
    btpe::log_pmf(unsigned(n)?, p, unsigned(y)?).map_err(py_err)
}

#[pyfunction]
fn ln_binomial_coefficient(n: i64, k: i64) -> PyResult<f64> {
    btpe::ln_binomial_coefficient(unsigned(n)?, unsigned(k)?).map_err(py_err)
}

#[pyfunction]
fn predict_uniforms(n: i64, p: f64) -> PyResult<IterationPrediction> {
    let pred = btpe::predict_uniforms(&params(n, p)?).map_err(py_err)?;
    Ok(IterationPrediction {
        e_iterations: pred.e_iterations,
        e_uniforms: pred.e_uniforms,
    })
}

#[pyfunction]
fn stirling_bounds(n: i64) -> PyResult<StirlingBounds> {
    let b = btpe::stirling_bounds(unsigned(n)?).map_err(py_err)?;
    Ok(StirlingBounds {
        n: b.n,
        central: b.central,
        lower: b.lower,
        upper: b.upper,
        alpha_lower: b.alpha_lower,
        alpha_upper: b.alpha_upper,
    })
}

#[pyfunction]
fn limit_min_p() -> MinPLimit {
    let l = btpe::limit_min_p();
    MinPLimit {
        p1_limit: l.p1_limit,
        lambda_l_limit: l.lambda_l_limit,
        lambda_r_limit: l.lambda_r_limit,
        c: l.c,
        alpha_10: l.alpha_10,
        prefactor: l.prefactor,
        result: l.result,
    }
}

#[pyfunction]
fn limit_half() -> HalfLimit {
    let l = btpe::limit_half();
    HalfLimit {
        p1_over_sqrt_n: l.p1_over_sqrt_n,
        c_limit: l.c_limit,
        two_over_sqrtn_lambda_r: l.two_over_sqrtn_lambda_r,
        prefactor: l.prefactor,
        result: l.result,
    }
}

#[pyfunction]
#[pyo3(signature = (samples, confidence = 0.95))]
fn summarize(samples: Vec<f64>, confidence: f64) -> PyResult<SummaryStats> {
    let s = btpe::summarize(&samples, confidence).map_err(py_err)?;
    Ok(SummaryStats {
        count: s.count,
        mean: s.mean,
        sample_std: s.sample_std,
        ci_half_width: s.ci_half_width,
        confidence: s.confidence,
    })
}

#[pyfunction]
fn t_test_one_sample(samples: Vec<f64>, mu0: f64) -> PyResult<f64> {
    btpe::t_test_one_sample(&samples, mu0).map_err(py_err)
}

#[pyfunction]
fn student_t_two_sided_p(t: f64, df: u64) -> PyResult<f64> {
    btpe::student_t_two_sided_p(t, df).map_err(py_err)
}

/// Returns `(statistic, df, p_value)`.
#[pyfunction]
fn chi_square_gof(
    observed: Vec<u64>,
    expected_probs: Vec<f64>,
    trials: u64,
) -> PyResult<(f64, usize, f64)> {
    let out = btpe::chi_square_gof(&observed, &expected_probs, trials).map_err(py_err)?;
    Ok((out.statistic, out.df, out.p_value))
}

fn parse_p_mode(mode: &str) -> PyResult<PMode> {
    match mode {
        "min-p" | "min_p" => Ok(PMode::MinP),
        "half" => Ok(PMode::Half),
        "both" => Ok(PMode::Both),
        other => Err(PyValueError::new_err(format!("unknown p_mode {other:?}"))),
    }
}

/// Rows `(n, ev_min_p, ev_half)`; defaults to n = 20 and 2^5..2^20.
#[pyfunction]
#[pyo3(signature = (n_list = None))]
fn cmd_predict(n_list: Option<Vec<u64>>) -> PyResult<Vec<(u64, f64, f64)>> {
    let config = RunConfig {
        n_list: n_list.unwrap_or_else(harness::predict_n_list),
        ..RunConfig::default()
    };
    let rows = harness::cmd_predict(&config).map_err(py_err)?;
    Ok(rows.iter().map(|r| (r.n, r.ev_min_p, r.ev_half)).collect())
}

#[pyfunction]
#[pyo3(signature = (
    seed = harness::DEFAULT_SEED,
    trials = harness::DEFAULT_TRIALS,
    confidence = harness::DEFAULT_CONFIDENCE,
    n_list = None,
    p_mode = "both",
))]
fn cmd_validate(
    py: Python<'_>,
    seed: u64,
    trials: usize,
    confidence: f64,
    n_list: Option<Vec<u64>>,
    p_mode: &str,
) -> PyResult<Vec<ExperimentRow>> {
    let config = RunConfig {
        seed,
        trials,
        confidence,
        n_list: n_list.unwrap_or_else(|| harness::powers_of_two(5, 20)),
        p_mode: parse_p_mode(p_mode)?,
    };
    harness::check_config(&config).map_err(py_err)?;
    let rows = py
        .detach(|| harness::cmd_validate(&config))
        .map_err(py_err)?;
    Ok(rows
        .into_iter()
        .map(|r| ExperimentRow {
            n: r.n,
            p: r.p,
            predicted_ev: r.predicted_ev,
            empirical_mean: r.empirical_mean,
            ci_half_width: r.ci_half_width,
            t_p_value: r.t_p_value,
            trials: r.trials,
            seed: r.seed,
            odd_counts: r.odd_counts,
            max_uniforms: r.max_uniforms,
        })
        .collect())
}

/// Validation CSV exactly as the `btpe validate` command writes it.
#[pyfunction]
#[pyo3(signature = (seed = harness::DEFAULT_SEED, trials = harness::DEFAULT_TRIALS))]
fn validate_csv(py: Python<'_>, seed: u64, trials: usize) -> PyResult<String> {
    let config = RunConfig {
        seed,
        trials,
        ..RunConfig::default()
    };
    harness::check_config(&config).map_err(py_err)?;
    let rows = py
        .detach(|| harness::cmd_validate(&config))
        .map_err(py_err)?;
    let mut buf = Vec::new();
    harness::write_validate_csv(&mut buf, &rows).expect("writing to memory");
    Ok(String::from_utf8(buf).expect("ascii csv"))
}

#[pymodule]
fn pybtpe(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Generator>()?;
    m.add_class::<BtpeConstants>()?;
    m.add_class::<IterationPrediction>()?;
    m.add_class::<StirlingBounds>()?;
    m.add_class::<MinPLimit>()?;
    m.add_class::<HalfLimit>()?;
    m.add_class::<SummaryStats>()?;
    m.add_class::<ExperimentRow>()?;
    m.add_function(wrap_pyfunction!(btpe_applicable, m)?)?;
    m.add_function(wrap_pyfunction!(compute_btpe_constants, m)?)?;
    m.add_function(wrap_pyfunction!(log_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(ln_binomial_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(predict_uniforms, m)?)?;
    m.add_function(wrap_pyfunction!(stirling_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(limit_min_p, m)?)?;
    m.add_function(wrap_pyfunction!(limit_half, m)?)?;
    m.add_function(wrap_pyfunction!(summarize, m)?)?;
    m.add_function(wrap_pyfunction!(t_test_one_sample, m)?)?;
    m.add_function(wrap_pyfunction!(student_t_two_sided_p, m)?)?;
    m.add_function(wrap_pyfunction!(chi_square_gof, m)?)?;
    m.add_function(wrap_pyfunction!(cmd_predict, m)?)?;
    m.add_function(wrap_pyfunction!(cmd_validate, m)?)?;
    m.add_function(wrap_pyfunction!(validate_csv, m)?)?;
    Ok(())
}
