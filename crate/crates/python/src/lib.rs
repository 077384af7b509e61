use nalgebra::DMatrix;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use switch_dmt::allocation::{self, StaticScheme};
use switch_dmt::montecarlo::{self, OutageEvent};
use switch_dmt::{ddf, ChannelMode, Error};

create_exception!(switch_dmt, RefusedError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(msg) => PyValueError::new_err(msg),
        Error::Refused(msg) => RefusedError::new_err(msg),
    }
}

/// Piecewise-linear tradeoff curve d(r).
#[pyclass(name = "Curve", module = "switch_dmt", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCurve(switch_dmt::PiecewiseLinearCurve);

#[pymethods]
impl PyCurve {
    #[new]
    fn new(vertices: Vec<(f64, f64)>) -> PyResult<Self> {
        switch_dmt::PiecewiseLinearCurve::new(vertices).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        switch_dmt::PiecewiseLinearCurve::from_json(s).map(Self).map_err(to_py)
    }

    #[getter]
    fn vertices(&self) -> Vec<(f64, f64)> {
        self.0.vertices().to_vec()
    }

    #[getter]
    fn r_max(&self) -> f64 {
        self.0.r_max()
    }

    fn eval(&self, r: f64) -> PyResult<f64> {
        self.0.eval(r).map_err(to_py)
    }

    fn zero_crossing(&self) -> f64 {
        self.0.zero_crossing()
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __call__(&self, r: f64) -> PyResult<f64> {
        self.eval(r)
    }

    fn __repr__(&self) -> String {
        format!("Curve({:?})", self.0.vertices())
    }
}

#[pyclass(name = "NetworkConfig", module = "switch_dmt", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNetworkConfig(switch_dmt::NetworkConfig);

#[pymethods]
impl PyNetworkConfig {
    #[new]
    #[pyo3(signature = (pairs, antennas, mode = "reciprocal"))]
    fn new(pairs: usize, antennas: usize, mode: &str) -> PyResult<Self> {
        let mode: ChannelMode = mode.parse().map_err(to_py)?;
        switch_dmt::NetworkConfig::new(pairs, antennas, mode).map(Self).map_err(to_py)
    }

    #[getter]
    fn pairs(&self) -> usize {
        self.0.pairs
    }

    #[getter]
    fn antennas(&self) -> usize {
        self.0.antennas
    }

    #[getter]
    fn mode(&self) -> String {
        self.0.mode.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "NetworkConfig(pairs={}, antennas={}, mode='{}')",
            self.0.pairs, self.0.antennas, self.0.mode
        )
    }
}

#[pyclass(name = "AllocationSolution", module = "switch_dmt", frozen, get_all)]
struct PyAllocation {
    a_star: f64,
    diversity: f64,
    residual: f64,
}

impl From<allocation::AllocationSolution> for PyAllocation {
    fn from(s: allocation::AllocationSolution) -> Self {
        Self { a_star: s.a_star, diversity: s.diversity, residual: s.residual }
    }
}

#[pymethods]
impl PyAllocation {
    fn __repr__(&self) -> String {
        format!(
            "AllocationSolution(a_star={}, diversity={}, residual={:e})",
            self.a_star, self.diversity, self.residual
        )
    }
}

#[pyfunction]
fn ppc_dmt(m: usize, n: usize) -> PyResult<PyCurve> {
    switch_dmt::ppc_dmt(m, n).map(PyCurve).map_err(to_py)
}

#[pyfunction]
fn mac_sym_dmt(users: usize, m: usize, n: usize) -> PyResult<PyCurve> {
    switch_dmt::mac_sym_dmt(users, m, n).map(PyCurve).map_err(to_py)
}

#[pyfunction]
fn bc_sym_dmt(users: usize, m: usize, n: usize) -> PyResult<PyCurve> {
    switch_dmt::bc_sym_dmt(users, m, n).map(PyCurve).map_err(to_py)
}

#[pyfunction]
fn solve_macbc(r: f64, cfg: &PyNetworkConfig) -> PyResult<PyAllocation> {
    allocation::solve_macbc(r, &cfg.0).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn solve_mactdma(r: f64, cfg: &PyNetworkConfig) -> PyResult<PyAllocation> {
    allocation::solve_mactdma(r, &cfg.0).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn upper_bound_reciprocal(r: f64, antennas: usize) -> f64 {
    allocation::upper_bound_reciprocal(r, antennas)
}

/// Rows `(r, d_lower, d_upper, a_star)` of the static DF-MAC-BC bound.
#[pyfunction]
fn lower_bound_reciprocal_macbc(cfg: &PyNetworkConfig, r_grid: Vec<f64>) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let rows = allocation::lower_bound_reciprocal_macbc(&cfg.0, &r_grid).map_err(to_py)?;
    Ok(rows.into_iter().map(|s| (s.r, s.d_lower, s.d_upper, s.a_star)).collect())
}

#[pyfunction]
fn max_multiplexing_gain(scheme: &str, cfg: &PyNetworkConfig) -> PyResult<f64> {
    let scheme: StaticScheme = scheme.parse().map_err(to_py)?;
    Ok(allocation::PhaseCurves::new(scheme, &cfg.0).max_multiplexing_gain())
}

#[pyfunction]
fn inner_ddf_opt(subset: usize, pairs: usize, antennas: usize, r: f64) -> PyResult<f64> {
    ddf::inner_ddf_opt(subset, pairs, antennas, r).map_err(to_py)
}

/// `(diversity, argmin_subset_size)`.
#[pyfunction]
fn ddf_dmt(r: f64, cfg: &PyNetworkConfig) -> PyResult<(f64, usize)> {
    let v = ddf::ddf_dmt(r, &cfg.0).map_err(to_py)?;
    Ok((v.diversity, v.argmin_subset))
}

#[pyfunction]
fn upper_bound_nonreciprocal(r: f64, cfg: &PyNetworkConfig) -> PyResult<f64> {
    ddf::upper_bound_nonreciprocal(r, &cfg.0).map_err(to_py)
}

#[pyfunction]
fn converse_outage_opt(r: f64, cfg: &PyNetworkConfig) -> PyResult<f64> {
    ddf::converse_outage_opt(r, &cfg.0).map_err(to_py)
}

/// `(fraction, outage)` for `(subset_size, capacity)` pairs.
#[pyfunction]
fn dynamic_listening_fraction(capacities: Vec<(usize, f64)>, rate: f64) -> PyResult<(f64, bool)> {
    let f = ddf::dynamic_listening_fraction(&capacities, rate).map_err(to_py)?;
    Ok((f.fraction, f.outage))
}

/// `log2 det(I + rho H H^H)` for a row-major nested list of complex entries.
#[pyfunction]
fn logdet_capacity(h: Vec<Vec<Complex64>>, rho: f64) -> PyResult<f64> {
    let rows = h.len();
    let cols = h.first().map_or(0, Vec::len);
    if h.iter().any(|row| row.len() != cols) {
        return Err(PyValueError::new_err("matrix rows have different lengths"));
    }
    let m = DMatrix::from_row_iterator(rows, cols, h.into_iter().flatten());
    montecarlo::logdet_capacity(&m, rho).map_err(to_py)
}

/// Uplink and downlink channel vectors of one trial.
#[pyfunction]
fn sample_channel(
    cfg: &PyNetworkConfig,
    trial_index: u64,
    seed: u64,
) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
    let d = montecarlo::sample_channel(&cfg.0, trial_index, seed);
    let flat = |v: Vec<nalgebra::DVector<Complex64>>| v.into_iter().map(|h| h.as_slice().to_vec()).collect();
    (flat(d.uplink), flat(d.downlink))
}

/// Runs an outage sweep; returns `{"csv": ..., "summary": {...}, "points": [...]}`.
#[pyfunction]
#[pyo3(signature = (event, r, cfg, snr_db, trials, seed, scheme = "mac-tdma", split = None, workers = None))]
#[allow(clippy::too_many_arguments)]
fn sweep_and_fit<'py>(
    py: Python<'py>,
    event: &str,
    r: f64,
    cfg: &PyNetworkConfig,
    snr_db: Vec<f64>,
    trials: u64,
    seed: u64,
    scheme: &str,
    split: Option<f64>,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let event = match event {
        "cutset-reciprocal" => OutageEvent::CutsetReciprocal,
        "ddf" => OutageEvent::Ddf,
        "static-phases" => {
            let scheme: StaticScheme = scheme.parse().map_err(to_py)?;
            let a = match split {
                Some(a) => a,
                None => allocation::PhaseCurves::new(scheme, &cfg.0).solve(r).map_err(to_py)?.a_star,
            };
            OutageEvent::StaticPhases { scheme, a }
        }
        other => return Err(PyValueError::new_err(format!("unknown event {other:?}"))),
    };
    let cfg = cfg.0;
    let res = py
        .detach(|| montecarlo::sweep_and_fit(&event, r, &cfg, &snr_db, trials, seed, workers))
        .map_err(to_py)?;

    let json = py.import("json")?;
    let out = PyDict::new(py);
    out.set_item("csv", res.to_csv())?;
    out.set_item("summary", json.call_method1("loads", (res.summary_json(),))?)?;
    let points: Vec<(f64, u64, u64, f64, f64)> = res
        .points
        .iter()
        .map(|p| (p.snr_db, p.trials, p.outages, p.p_hat, p.std_err))
        .collect();
    out.set_item("points", points)?;
    Ok(out)
}

/// Diversity-multiplexing tradeoff tools for the K-pair MIMO relay switch.
#[pymodule]
#[pyo3(name = "switch_dmt")]
fn switch_dmt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCurve>()?;
    m.add_class::<PyNetworkConfig>()?;
    m.add_class::<PyAllocation>()?;
    m.add("RefusedError", m.py().get_type::<RefusedError>())?;
    m.add_function(wrap_pyfunction!(ppc_dmt, m)?)?;
    m.add_function(wrap_pyfunction!(mac_sym_dmt, m)?)?;
    m.add_function(wrap_pyfunction!(bc_sym_dmt, m)?)?;
    m.add_function(wrap_pyfunction!(solve_macbc, m)?)?;
    m.add_function(wrap_pyfunction!(solve_mactdma, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_reciprocal, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_reciprocal_macbc, m)?)?;
    m.add_function(wrap_pyfunction!(max_multiplexing_gain, m)?)?;
    m.add_function(wrap_pyfunction!(inner_ddf_opt, m)?)?;
    m.add_function(wrap_pyfunction!(ddf_dmt, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_nonreciprocal, m)?)?;
    m.add_function(wrap_pyfunction!(converse_outage_opt, m)?)?;
    m.add_function(wrap_pyfunction!(dynamic_listening_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(logdet_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(sample_channel, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_and_fit, m)?)?;
    Ok(())
}
