//! Python module `antibunch`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};

use antibunch::lindblad::{self, FockPolicy, HamiltonianChoice, Liouvillian, SteadyStateOptions};
use antibunch::model::{rydberg_coupling_from_distance, RydbergPotential};
use antibunch::sweep::{self as engine, OutputFormat};
use antibunch::{weakdrive, DriveScheme, Error, HilbertSpace};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) | Error::Config(_) | Error::DimensionMismatch { .. } => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn parse_drive(drive: &str) -> PyResult<DriveScheme> {
    drive.parse().map_err(py_err)
}

fn fock_policy(fock: Option<&Bound<'_, PyAny>>) -> PyResult<FockPolicy> {
    let Some(fock) = fock else {
        return Ok(FockPolicy::default());
    };
    if let Ok(n) = fock.extract::<usize>() {
        return Ok(FockPolicy::Fixed(n));
    }
    match fock.extract::<String>() {
        Ok(s) if s == "auto" => Ok(FockPolicy::default()),
        _ => Err(PyValueError::new_err("fock must be a non-negative integer or \"auto\"")),
    }
}

/// Model parameters in units of the cavity decay rate.
#[pyclass(name = "SystemParams", module = "antibunch", skip_from_py_object)]
#[derive(Clone)]
pub struct PySystemParams {
    inner: antibunch::SystemParams,
}

#[pymethods]
impl PySystemParams {
    #[new]
    #[pyo3(signature = (drive = "atom", *, delta_a = 0.0, delta_c = 0.0, g = 0.0, x1 = 0.0, x2 = 0.0, V = 0.0, epsilon = 0.0, kappa = 1.0, gamma = 0.0))]
    #[allow(non_snake_case, clippy::too_many_arguments)]
    fn new(
        drive: &str,
        delta_a: f64,
        delta_c: f64,
        g: f64,
        x1: f64,
        x2: f64,
        V: f64,
        epsilon: f64,
        kappa: f64,
        gamma: f64,
    ) -> PyResult<Self> {
        let inner = antibunch::SystemParams {
            delta_a,
            delta_c,
            g,
            x1,
            x2,
            v: V,
            epsilon,
            kappa,
            ..antibunch::SystemParams::new(parse_drive(drive)?)
        }
        .with_gamma(gamma);
        inner.validate().map_err(py_err)?;
        Ok(PySystemParams { inner })
    }

    /// Rubidium cavity values: g = 3.12, γ = 1.6e-4, atoms one wavelength apart.
    #[staticmethod]
    #[pyo3(signature = (drive = "atom"))]
    fn experimental(drive: &str) -> PyResult<Self> {
        Ok(PySystemParams {
            inner: antibunch::SystemParams::experimental(parse_drive(drive)?),
        })
    }

    #[getter]
    fn drive(&self) -> String {
        self.inner.drive.to_string()
    }
    #[setter]
    fn set_drive(&mut self, drive: &str) -> PyResult<()> {
        self.inner.drive = parse_drive(drive)?;
        Ok(())
    }

    #[getter]
    fn delta_a(&self) -> f64 {
        self.inner.delta_a
    }
    #[setter]
    fn set_delta_a(&mut self, v: f64) {
        self.inner.delta_a = v;
    }
    #[getter]
    fn delta_c(&self) -> f64 {
        self.inner.delta_c
    }
    #[setter]
    fn set_delta_c(&mut self, v: f64) {
        self.inner.delta_c = v;
    }
    #[getter]
    fn g(&self) -> f64 {
        self.inner.g
    }
    #[setter]
    fn set_g(&mut self, v: f64) {
        self.inner.g = v;
    }
    #[getter]
    fn x1(&self) -> f64 {
        self.inner.x1
    }
    #[setter]
    fn set_x1(&mut self, v: f64) {
        self.inner.x1 = v;
    }
    #[getter]
    fn x2(&self) -> f64 {
        self.inner.x2
    }
    #[setter]
    fn set_x2(&mut self, v: f64) {
        self.inner.x2 = v;
    }
    #[getter(V)]
    fn v(&self) -> f64 {
        self.inner.v
    }
    #[setter(V)]
    fn set_v(&mut self, v: f64) {
        self.inner.v = v;
    }
    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon
    }
    #[setter]
    fn set_epsilon(&mut self, v: f64) {
        self.inner.epsilon = v;
    }
    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa
    }
    #[setter]
    fn set_kappa(&mut self, v: f64) {
        self.inner.kappa = v;
    }
    /// Sets both atomic decay rates.
    #[getter]
    fn gamma(&self) -> PyResult<f64> {
        self.inner.gamma().map_err(py_err)
    }
    #[setter]
    fn set_gamma(&mut self, v: f64) {
        self.inner = self.inner.with_gamma(v);
    }
    #[getter]
    fn gamma1(&self) -> f64 {
        self.inner.gamma1
    }
    #[setter]
    fn set_gamma1(&mut self, v: f64) {
        self.inner.gamma1 = v;
    }
    #[getter]
    fn gamma2(&self) -> f64 {
        self.inner.gamma2
    }
    #[setter]
    fn set_gamma2(&mut self, v: f64) {
        self.inner.gamma2 = v;
    }

    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(py_err)
    }

    fn copy(&self) -> Self {
        self.clone()
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "SystemParams(drive='{}', delta_a={}, delta_c={}, g={}, x1={}, x2={}, V={}, epsilon={}, kappa={}, gamma1={}, gamma2={})",
            p.drive, p.delta_a, p.delta_c, p.g, p.x1, p.x2, p.v, p.epsilon, p.kappa, p.gamma1, p.gamma2
        )
    }
}

/// Steady-state `{"cutoff", "mean_photon", "g2"}`; `g2` is None for an empty cavity.
#[pyfunction]
#[pyo3(signature = (params, fock = None, hamiltonian = "full"))]
fn steady_observables<'py>(
    py: Python<'py>,
    params: &PySystemParams,
    fock: Option<&Bound<'py, PyAny>>,
    hamiltonian: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let choice = match hamiltonian {
        "full" => HamiltonianChoice::Full,
        "reduced" => HamiltonianChoice::Reduced,
        other => return Err(PyValueError::new_err(format!("unknown hamiltonian '{other}'"))),
    };
    let policy = fock_policy(fock)?;
    let p = params.inner;
    let obs = py
        .detach(|| lindblad::steady_observables(&p, policy, choice, &SteadyStateOptions::default()))
        .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("cutoff", obs.cutoff)?;
    d.set_item("mean_photon", obs.mean_photon)?;
    d.set_item("g2", obs.g2_zero)?;
    Ok(d)
}

/// Master-equation g²(0).
#[pyfunction]
#[pyo3(signature = (params, fock = None))]
fn g2_numeric(py: Python<'_>, params: &PySystemParams, fock: Option<&Bound<'_, PyAny>>) -> PyResult<Option<f64>> {
    let policy = fock_policy(fock)?;
    let p = params.inner;
    py.detach(|| lindblad::steady_observables(&p, policy, HamiltonianChoice::Full, &SteadyStateOptions::default()))
        .map(|o| o.g2_zero)
        .map_err(py_err)
}

/// Weak-drive closed-form g²(0).
#[pyfunction]
fn g2_analytic(params: &PySystemParams) -> PyResult<f64> {
    weakdrive::g2_analytic(&params.inner).map_err(py_err)
}

/// Weak-drive steady amplitudes keyed by basis label.
#[pyfunction]
fn amplitudes<'py>(py: Python<'py>, params: &PySystemParams) -> PyResult<Bound<'py, PyDict>> {
    let a = match params.inner.drive {
        DriveScheme::AtomDriven => weakdrive::steady_amplitudes_atom_driven(&params.inner),
        DriveScheme::CavityDriven => weakdrive::steady_amplitudes_cavity_driven(&params.inner),
    }
    .map_err(py_err)?;
    let d = PyDict::new(py);
    for (k, c) in [
        ("gg0", a.c_gg0),
        ("gg1", a.c_gg1),
        ("gg2", a.c_gg2),
        ("plus0", a.c_p0),
        ("plus1", a.c_p1),
        ("rr0", a.c_rr0),
    ] {
        d.set_item(k, PyComplex::from_doubles(py, c.re, c.im))?;
    }
    Ok(d)
}

/// `(upb, pb)` atom detunings that null the two-photon amplitude.
#[pyfunction]
#[allow(non_snake_case)]
fn optimal_detunings(delta_c: f64, V: f64, g: f64) -> PyResult<(f64, f64)> {
    let o = weakdrive::optimal_detunings_atom_driven(delta_c, V, g).map_err(py_err)?;
    Ok((o.upb, o.pb))
}

/// Interaction strength where both optimal conditions hold at once.
#[pyfunction]
fn intersection_coupling(delta_c: f64, g: f64) -> PyResult<f64> {
    weakdrive::upb_pb_intersection_curve(delta_c, g).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (epsilon, kappa = 1.0, gamma = 1.0))]
fn optimal_g_cavity_driven(epsilon: f64, kappa: f64, gamma: f64) -> PyResult<f64> {
    weakdrive::optimal_g_cavity_driven(epsilon, kappa, gamma).map_err(py_err)
}

/// ν in MHz with `V = 2π × ν`; `c6` in GHz·μm⁶.
#[pyfunction]
#[pyo3(signature = (distance_um, c6 = None))]
fn rydberg_coupling(distance_um: f64, c6: Option<f64>) -> PyResult<f64> {
    let pot = match c6 {
        Some(c) => RydbergPotential::van_der_waals(c).map_err(py_err)?,
        None => RydbergPotential::rubidium_62d(),
    };
    rydberg_coupling_from_distance(distance_um, &pot).map_err(py_err)
}

/// g²(τ) on a sorted grid of delays, Full Hamiltonian at a fixed cutoff.
#[pyfunction]
#[pyo3(signature = (params, taus, cutoff = 5))]
fn g2_tau(py: Python<'_>, params: &PySystemParams, taus: Vec<f64>, cutoff: usize) -> PyResult<Vec<f64>> {
    let p = params.inner;
    py.detach(|| -> antibunch::Result<Vec<f64>> {
        let space = HilbertSpace::new(cutoff)?;
        Ok(lindblad::g2_tau(space, &p, &taus)?.values)
    })
    .map_err(py_err)
}

/// Liouvillian eigenvalues as complex numbers.
#[pyfunction]
#[pyo3(signature = (params, cutoff = 2))]
fn liouvillian_spectrum<'py>(py: Python<'py>, params: &PySystemParams, cutoff: usize) -> PyResult<Vec<Bound<'py, PyComplex>>> {
    let p = params.inner;
    let spectrum = py
        .detach(|| Liouvillian::build(HilbertSpace::new(cutoff)?, &p, HamiltonianChoice::Full)?.spectrum())
        .map_err(py_err)?;
    Ok(spectrum.iter().map(|z| PyComplex::from_doubles(py, z.re, z.im)).collect())
}

#[pyfunction]
fn presets() -> Vec<&'static str> {
    engine::PRESET_NAMES.to_vec()
}

/// Evaluated parameter grid.
#[pyclass(name = "GridResult", module = "antibunch", frozen, skip_from_py_object)]
pub struct PyGridResult {
    inner: engine::GridResult,
}

#[pymethods]
impl PyGridResult {
    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    /// Axis name to sampled values.
    #[getter]
    fn axes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for a in &self.inner.axes {
            d.set_item(&a.name, a.values.clone())?;
        }
        Ok(d)
    }

    #[getter]
    fn observables(&self) -> Vec<String> {
        self.inner.observables.iter().map(|o| o.name.clone()).collect()
    }

    /// `values[i][j]` over axis 1 then axis 2; None where the cell is flagged.
    fn observable(&self, name: &str) -> PyResult<Vec<Vec<Option<f64>>>> {
        self.inner
            .observable(name)
            .map(|o| o.values.clone())
            .ok_or_else(|| PyValueError::new_err(format!("no observable '{name}'")))
    }

    #[getter]
    fn flags(&self) -> Vec<Vec<Vec<&'static str>>> {
        self.inner
            .flags
            .iter()
            .map(|row| row.iter().map(|cell| cell.iter().map(|f| f.name()).collect()).collect())
            .collect()
    }

    #[getter]
    fn cutoffs(&self) -> Vec<Vec<Option<usize>>> {
        self.inner.cutoffs.clone()
    }

    #[getter]
    fn flagged_fraction(&self) -> f64 {
        self.inner.flagged_fraction()
    }

    fn to_csv(&self) -> String {
        engine::to_csv(&self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        engine::to_json(&self.inner).map_err(py_err)
    }

    fn save(&self, path: std::path::PathBuf, format: &str) -> PyResult<()> {
        let format: OutputFormat = format.parse().map_err(py_err)?;
        engine::export(&self.inner, format, &path).map_err(|e| match e {
            Error::Io(io) => PyErr::from(io),
            other => py_err(other),
        })
    }

    fn __repr__(&self) -> String {
        let (n1, n2) = self.inner.shape();
        format!("GridResult(shape=({n1}, {n2}), observables={:?})", self.observables())
    }
}

/// Runs a sweep described by TOML text, optionally on top of a preset.
#[pyfunction]
#[pyo3(signature = (config = "", preset = None, jobs = None))]
fn run_sweep(py: Python<'_>, config: &str, preset: Option<&str>, jobs: Option<usize>) -> PyResult<PyGridResult> {
    let spec = engine::load_config(config, preset).map_err(py_err)?;
    let inner = py.detach(|| engine::run_sweep_with_jobs(&spec, jobs)).map_err(py_err)?;
    Ok(PyGridResult { inner })
}

pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystemParams>()?;
    m.add_class::<PyGridResult>()?;
    m.add_function(wrap_pyfunction!(steady_observables, m)?)?;
    m.add_function(wrap_pyfunction!(g2_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(g2_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_detunings, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_g_cavity_driven, m)?)?;
    m.add_function(wrap_pyfunction!(rydberg_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(g2_tau, m)?)?;
    m.add_function(wrap_pyfunction!(liouvillian_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

#[pymodule]
#[pyo3(name = "antibunch")]
fn antibunch_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
