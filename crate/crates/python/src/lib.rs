//! Python bindings: curves, builders, combination, the betting game and the
//! worked examples.

use abcu::elicit::{
    sf_from_bayes_posterior, sf_from_elicited_intervals, sf_from_elicited_pvalues,
    sf_from_hypothetical_data, ElicitedIntervals, ElicitedPoints, HypotheticalModel, IntervalEntry,
    TailCompletion,
};
use abcu::evidence::EvidenceFile;
use abcu::game::{play, EstimatorSpec, GameConfig, PivotKind};
use abcu::laplace::{de_l_cdf, v_polynomial};
use abcu::models::{sf_normal_direct, sf_normal_known_sigma, sf_student_t, sf_student_t_summary};
use abcu::{
    worked, Alternative, CombineTree, Error, GridSpec, IntervalUnion, NormalModelSpec, Origin,
    Provenance, SampleSummary, SignificanceCurve, TailPolicy,
};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    if e.is_numerical() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse_alternative(s: &str) -> PyResult<Alternative> {
    s.parse::<Alternative>().map_err(to_py)
}

/// A significance curve on a parameter grid.
#[pyclass(name = "Curve", frozen, module = "abcu_py")]
pub struct PyCurve {
    inner: SignificanceCurve,
}

impl From<SignificanceCurve> for PyCurve {
    fn from(inner: SignificanceCurve) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyCurve {
    fn cdf(&self, theta: f64) -> PyResult<f64> {
        self.inner.cdf(theta).map_err(to_py)
    }

    fn quantile(&self, p: f64) -> PyResult<f64> {
        self.inner.quantile(p).map_err(to_py)
    }

    #[pyo3(signature = (theta0, alternative = "greater"))]
    fn p_value(&self, theta0: f64, alternative: &str) -> PyResult<f64> {
        self.inner
            .p_value(theta0, parse_alternative(alternative)?)
            .map_err(to_py)
    }

    /// Equal-tailed interval `(lo, hi]` of the given level.
    fn central_interval(&self, level: f64) -> PyResult<(f64, f64)> {
        if !(level > 0.0 && level < 1.0) {
            return Err(PyValueError::new_err(format!(
                "level must be in (0, 1), got {level}"
            )));
        }
        let a = (1.0 - level) / 2.0;
        Ok((
            self.inner.quantile(a).map_err(to_py)?,
            self.inner.quantile(1.0 - a).map_err(to_py)?,
        ))
    }

    /// Confidence probability of a union of disjoint `(lo, hi]` intervals.
    fn set_probability(&self, intervals: Vec<(f64, f64)>) -> PyResult<f64> {
        let region = IntervalUnion::new(intervals).map_err(to_py)?;
        Ok(self.inner.set_probability(&region))
    }

    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.inner.nodes().to_vec()
    }

    #[getter]
    fn cdf_values(&self) -> Vec<f64> {
        self.inner.cdf_values().to_vec()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.provenance().label.clone()
    }

    #[getter]
    fn origin(&self) -> &'static str {
        match self.inner.provenance().origin {
            Origin::Objective => "objective",
            Origin::Subjective => "subjective",
            Origin::Combined => "combined",
        }
    }

    #[getter]
    fn approximate(&self) -> bool {
        self.inner.provenance().approximate
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv_string()
    }

    #[staticmethod]
    #[pyo3(signature = (text, label = "csv"))]
    fn from_csv(text: &str, label: &str) -> PyResult<Self> {
        SignificanceCurve::read_csv(
            text.as_bytes(),
            TailPolicy::Flat,
            Provenance::combined(label),
        )
        .map(Self::from)
        .map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.grid().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Curve(label={:?}, points={}, span=[{}, {}])",
            self.inner.provenance().label,
            self.inner.grid().len(),
            self.inner.grid().min(),
            self.inner.grid().max()
        )
    }
}

#[pyfunction]
fn normal_known_sigma(data: Vec<f64>, sigma: f64) -> PyResult<PyCurve> {
    let summary = SampleSummary::from_sample(&data).map_err(to_py)?;
    sf_normal_known_sigma(&summary, sigma, &GridSpec::Quantile)
        .map(PyCurve::from)
        .map_err(to_py)
}

#[pyfunction]
fn student_t(data: Vec<f64>) -> PyResult<PyCurve> {
    sf_student_t(&data, &GridSpec::Quantile)
        .map(PyCurve::from)
        .map_err(to_py)
}

#[pyfunction]
fn student_t_summary(n: usize, mean: f64, sd: f64) -> PyResult<PyCurve> {
    let summary = SampleSummary::new(n, mean, sd).map_err(to_py)?;
    sf_student_t_summary(&summary, &GridSpec::Quantile)
        .map(PyCurve::from)
        .map_err(to_py)
}

#[pyfunction]
fn subjective_normal(mean: f64, sd: f64) -> PyResult<PyCurve> {
    sf_normal_direct(mean, sd, &GridSpec::Quantile)
        .map(PyCurve::from)
        .map_err(to_py)
}

fn tail(extend_tails: bool) -> TailCompletion {
    if extend_tails {
        TailCompletion::Exponential
    } else {
        TailCompletion::None
    }
}

/// Curve through elicited `(theta, p)` points.
#[pyfunction]
#[pyo3(signature = (points, extend_tails = true))]
fn elicited_pvalues(points: Vec<(f64, f64)>, extend_tails: bool) -> PyResult<PyCurve> {
    let points = ElicitedPoints::new(points).map_err(to_py)?;
    sf_from_elicited_pvalues(&points, tail(extend_tails))
        .map(PyCurve::from)
        .map_err(to_py)
}

/// Curve from a median and nested `(level, lo, hi)` intervals.
#[pyfunction]
#[pyo3(signature = (median, intervals, extend_tails = true))]
fn elicited_intervals(
    median: f64,
    intervals: Vec<(f64, f64, f64)>,
    extend_tails: bool,
) -> PyResult<PyCurve> {
    let entries = intervals
        .into_iter()
        .map(|(level, lo, hi)| IntervalEntry { level, lo, hi })
        .collect();
    let entries = ElicitedIntervals::new(entries).map_err(to_py)?;
    sf_from_elicited_intervals(&entries, median, tail(extend_tails))
        .map(PyCurve::from)
        .map_err(to_py)
}

/// Subjective curve from hypothetical data; normal with `sigma` if given, else Student t.
#[pyfunction]
#[pyo3(signature = (data, sigma = None))]
fn hypothetical_data(data: Vec<f64>, sigma: Option<f64>) -> PyResult<PyCurve> {
    let model = match sigma {
        Some(sigma) => HypotheticalModel::Normal { sigma },
        None => HypotheticalModel::StudentT,
    };
    sf_from_hypothetical_data(model, &data, &GridSpec::Quantile)
        .map(PyCurve::from)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (points, matching = false))]
fn posterior(points: Vec<(f64, f64)>, matching: bool) -> PyResult<PyCurve> {
    let points = ElicitedPoints::new(points).map_err(to_py)?;
    sf_from_bayes_posterior(&points, matching)
        .map(PyCurve::from)
        .map_err(to_py)
}

/// Curves for every source in an evidence-file JSON document.
#[pyfunction]
fn from_evidence_json(text: &str) -> PyResult<Vec<PyCurve>> {
    let file = EvidenceFile::from_json(text).map_err(to_py)?;
    Ok(file
        .build_curves()
        .map_err(to_py)?
        .into_iter()
        .map(PyCurve::from)
        .collect())
}

#[pyfunction]
fn combine(curves: Vec<PyRef<'_, PyCurve>>) -> PyResult<PyCurve> {
    abcu::combine(curves.iter().map(|c| &c.inner))
        .map(|r| PyCurve::from(r.curve))
        .map_err(to_py)
}

fn to_tree(obj: &Bound<'_, PyAny>) -> PyResult<CombineTree> {
    if let Ok(curve) = obj.cast::<PyCurve>() {
        return Ok(CombineTree::Leaf(curve.get().inner.clone()));
    }
    let children = obj
        .try_iter()?
        .map(|item| to_tree(&item?))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(CombineTree::Group(children))
}

/// Combines nested lists of curves group by group.
#[pyfunction]
fn combine_tree(tree: &Bound<'_, PyAny>) -> PyResult<PyCurve> {
    abcu::combine_tree(&to_tree(tree)?)
        .map(|r| PyCurve::from(r.curve))
        .map_err(to_py)
}

/// Combined CDF for `sources` inputs at pivot sum `q`.
#[pyfunction]
fn de_cdf(sources: usize, q: f64) -> PyResult<f64> {
    de_l_cdf(sources, q).map_err(to_py)
}

/// Exact coefficients of the combination polynomial as `(numerator, denominator)` strings.
#[pyfunction]
fn polynomial(sources: usize) -> PyResult<Vec<(String, String)>> {
    Ok(v_polynomial(sources).map_err(to_py)?.exact_strings())
}

/// Plays the betting game; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (theta, gamma, n, estimator = "calibrated", reps = 10_000, seed = 0, workers = None, known_sigma = None))]
#[allow(clippy::too_many_arguments)]
fn game(
    py: Python<'_>,
    theta: f64,
    gamma: f64,
    n: usize,
    estimator: &str,
    reps: usize,
    seed: u64,
    workers: Option<usize>,
    known_sigma: Option<f64>,
) -> PyResult<String> {
    let mut est = EstimatorSpec::parse(estimator).map_err(to_py)?;
    if let Some(sigma) = known_sigma {
        est.pivot = PivotKind::KnownSigma { sigma };
    }
    let model = NormalModelSpec::new(theta, gamma, n).map_err(to_py)?;
    let mut cfg = GameConfig::new(model, reps, seed);
    if let Some(w) = workers {
        cfg = cfg.with_workers(w);
    }
    let report = py.detach(|| play(&est, &cfg)).map_err(to_py)?;
    Ok(report.to_json())
}

/// Runs a worked example (`torricelli` or `common-mean`); returns its report as JSON.
#[pyfunction]
fn example(name: &str) -> PyResult<String> {
    let value = match name {
        "torricelli" => serde_json::to_value(worked::torricelli().map_err(to_py)?),
        "common-mean" | "common_mean" => {
            serde_json::to_value(worked::common_mean().map_err(to_py)?)
        }
        other => return Err(PyValueError::new_err(format!("unknown example '{other}'"))),
    };
    Ok(serde_json::to_string_pretty(&value.expect("report serializes")).expect("json"))
}

#[pymodule]
fn abcu_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCurve>()?;
    m.add_function(wrap_pyfunction!(normal_known_sigma, m)?)?;
    m.add_function(wrap_pyfunction!(student_t, m)?)?;
    m.add_function(wrap_pyfunction!(student_t_summary, m)?)?;
    m.add_function(wrap_pyfunction!(subjective_normal, m)?)?;
    m.add_function(wrap_pyfunction!(elicited_pvalues, m)?)?;
    m.add_function(wrap_pyfunction!(elicited_intervals, m)?)?;
    m.add_function(wrap_pyfunction!(hypothetical_data, m)?)?;
    m.add_function(wrap_pyfunction!(posterior, m)?)?;
    m.add_function(wrap_pyfunction!(from_evidence_json, m)?)?;
    m.add_function(wrap_pyfunction!(combine, m)?)?;
    m.add_function(wrap_pyfunction!(combine_tree, m)?)?;
    m.add_function(wrap_pyfunction!(de_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(game, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    Ok(())
}
