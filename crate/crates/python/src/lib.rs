//! Python bindings. Complex inputs accept any sequence of numbers; reports
//! come back as plain dicts.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tailspan_core::report::{analyze_signal, to_json};
use tailspan_core::spanner::minimal_lambda_with_budget;
use tailspan_core::{Complex64, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(_) | Error::Ingest { .. } | Error::IngestRow { .. } => {
            PyIOError::new_err(e.to_string())
        }
        Error::OracleBudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = to_json(value).map_err(py_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite, non-empty complex series on Z_N.
#[pyclass(name = "Signal", module = "tailspan", frozen)]
pub struct PySignal {
    inner: tailspan_core::Signal,
}

impl PySignal {
    fn wrap(inner: tailspan_core::Signal) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PySignal {
    #[new]
    fn new(values: Vec<Complex64>) -> PyResult<Self> {
        tailspan_core::Signal::new(values)
            .map(Self::wrap)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_real(values: Vec<f64>) -> PyResult<Self> {
        tailspan_core::Signal::from_real(&values)
            .map(Self::wrap)
            .map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Signal(n={})", self.inner.len())
    }

    fn values(&self) -> Vec<Complex64> {
        self.inner.values().to_vec()
    }

    fn magnitudes(&self) -> Vec<f64> {
        self.inner.magnitudes()
    }

    fn norms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.norms())
    }

    fn dft(&self) -> Self {
        Self::wrap(tailspan_core::dft(&self.inner))
    }

    fn inverse_dft(&self) -> Self {
        Self::wrap(tailspan_core::inverse_dft(&self.inner))
    }

    fn fourier_ratio(&self) -> PyResult<f64> {
        tailspan_core::fourier_ratio(&self.inner).map_err(py_err)
    }

    fn mean_center(&self) -> Self {
        Self::wrap(tailspan_core::mean_center(&self.inner))
    }

    fn scale(&self, c: Complex64) -> PyResult<Self> {
        self.inner.scale(c).map(Self::wrap).map_err(py_err)
    }

    fn shift(&self, k: usize) -> Self {
        Self::wrap(self.inner.shift(k))
    }

    /// Indices of Γ at `eta`, in greedy processing order.
    fn large_spectrum(&self, eta: f64) -> PyResult<Vec<usize>> {
        tailspan_core::large_spectrum(&self.inner, eta)
            .map(|s| s.indices())
            .map_err(py_err)
    }

    fn analyze<'py>(&self, py: Python<'py>, dataset: &str) -> PyResult<Bound<'py, PyAny>> {
        let report = analyze_signal(dataset, &self.inner, false).map_err(py_err)?;
        to_py(py, &report)
    }
}

/// Greedy spanning set for Γ(eta) with a certificate per element.
#[pyfunction]
fn greedy_span<'py>(py: Python<'py>, signal: &PySignal, eta: f64) -> PyResult<Bound<'py, PyDict>> {
    let gamma = tailspan_core::large_spectrum(&signal.inner, eta).map_err(py_err)?;
    let span = tailspan_core::greedy_span(&gamma, signal.inner.len()).map_err(py_err)?;
    let verified = tailspan_core::verify_span(&span, &gamma).map_err(py_err)?;
    let certificates: Vec<(usize, Vec<i8>)> = span
        .certificates
        .iter()
        .map(|c| (c.gamma, c.coefficients.clone()))
        .collect();
    let d = PyDict::new(py);
    d.set_item("n", span.n)?;
    d.set_item("gamma", gamma.sorted_indices())?;
    d.set_item("lambda", span.lambda)?;
    d.set_item("reach_size", span.reach.len())?;
    d.set_item("all_spanned", span.all_spanned)?;
    d.set_item("verified", verified)?;
    d.set_item("certificates", certificates)?;
    Ok(d)
}

/// Smallest subset of Γ(eta) spanning Γ, or None past `max_size`.
#[pyfunction]
#[pyo3(signature = (signal, eta, max_size = None, budget = 1u128 << 20))]
fn minimal_lambda(
    signal: &PySignal,
    eta: f64,
    max_size: Option<usize>,
    budget: u128,
) -> PyResult<Option<Vec<usize>>> {
    let gamma = tailspan_core::large_spectrum(&signal.inner, eta).map_err(py_err)?;
    let max = max_size.unwrap_or(gamma.len());
    minimal_lambda_with_budget(&gamma, signal.inner.len(), max, budget).map_err(py_err)
}

#[pyfunction]
fn bound_report<'py>(py: Python<'py>, signal: &PySignal, eta: f64) -> PyResult<Bound<'py, PyAny>> {
    let report = tailspan_core::bound_report(&signal.inner, eta).map_err(py_err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (signal, etas, dataset = "series", mean_centered = false))]
fn sweep<'py>(
    py: Python<'py>,
    signal: &PySignal,
    etas: Vec<f64>,
    dataset: &str,
    mean_centered: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let report = tailspan_core::sweep_signal(dataset, &signal.inner, &etas, mean_centered)
        .map_err(py_err)?;
    to_py(py, &report)
}

/// Builds a synthetic signal from a spec dict such as
/// `{"kind": "delta", "position": 3, "n": 16, "seed": 0}`.
#[pyfunction]
fn synth(py: Python<'_>, spec: &Bound<'_, PyAny>) -> PyResult<PySignal> {
    let text: String = py
        .import("json")?
        .call_method1("dumps", (spec,))?
        .extract()?;
    let spec: tailspan_core::SynthSpec =
        serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    tailspan_core::generate(&spec)
        .map(PySignal::wrap)
        .map_err(py_err)
}

/// Loads one column of a delimited file.
#[pyfunction]
#[pyo3(signature = (path, column = "0", interpolate_missing = false))]
fn load_series(path: &str, column: &str, interpolate_missing: bool) -> PyResult<PySignal> {
    let mut cfg = tailspan_core::SeriesFile::new(path, tailspan_core::ColumnRef::parse(column));
    if interpolate_missing {
        cfg.missing = tailspan_core::MissingPolicy::Interpolate;
    }
    tailspan_core::load_series(&cfg)
        .map(|l| PySignal::wrap(l.signal))
        .map_err(py_err)
}

#[pyfunction]
fn regime_check(fr: f64, n: usize) -> bool {
    tailspan_core::regime_check(fr, n)
}

#[pymodule]
fn tailspan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignal>()?;
    m.add_function(wrap_pyfunction!(greedy_span, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(synth, m)?)?;
    m.add_function(wrap_pyfunction!(load_series, m)?)?;
    m.add_function(wrap_pyfunction!(regime_check, m)?)?;
    Ok(())
}
