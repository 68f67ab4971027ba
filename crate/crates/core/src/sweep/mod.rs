//! Parameter sweeps over one- and two-dimensional grids.

mod config;
mod export;
mod expr;
mod presets;

pub use config::{load_config, load_config_file, SCHEMA_VERSION};
pub use export::{export, to_csv, to_json, OutputFormat};
pub use expr::{Constraint, Param};
pub use presets::{figure_preset, preset_description, PRESET_NAMES};

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lindblad::{
    g2_tau_from, steady_observables, steady_state_with, FockPolicy, HamiltonianChoice, Liouvillian,
    SteadyStateOptions,
};
use crate::model::SystemParams;
use crate::quantum::HilbertSpace;
use crate::weakdrive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    /// Equal-time g²(0) from whichever engine the spec selects.
    #[serde(rename = "g2_0")]
    G2Zero,
    #[serde(rename = "g2_0_numeric")]
    G2ZeroNumeric,
    #[serde(rename = "g2_0_analytic")]
    G2ZeroAnalytic,
    #[serde(rename = "mean_photon")]
    MeanPhoton,
    /// Delayed correlation; needs a `tau` axis.
    #[serde(rename = "g2_tau")]
    G2Tau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Master-equation steady state.
    #[default]
    Lindblad,
    /// Closed-form weak-drive amplitudes.
    #[serde(alias = "weak_drive")]
    WeakDrive,
    /// Both, plus the natural log of their ratio.
    Both,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lindblad" => Ok(Engine::Lindblad),
            "weakdrive" | "weak_drive" => Ok(Engine::WeakDrive),
            "both" => Ok(Engine::Both),
            other => Err(Error::config(format!("unknown engine '{other}'"))),
        }
    }
}

/// One output column of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    G2Numeric,
    G2Analytic,
    /// `ln(analytic / numeric)`.
    G2LogRatio,
    MeanPhoton,
    G2Tau,
}

impl Column {
    pub fn name(self) -> &'static str {
        match self {
            Column::G2Numeric => "g2_0_numeric",
            Column::G2Analytic => "g2_0_analytic",
            Column::G2LogRatio => "g2_log_ratio",
            Column::MeanPhoton => "mean_photon",
            Column::G2Tau => "g2_tau",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisValues {
    Linspace { min: f64, max: f64, steps: usize },
    List { values: Vec<f64> },
}

impl AxisValues {
    pub fn values(&self) -> Vec<f64> {
        match self {
            AxisValues::Linspace { min, max, steps } => {
                let n = *steps;
                (0..n)
                    .map(|k| {
                        if k + 1 == n {
                            *max
                        } else {
                            min + (max - min) * k as f64 / (n - 1) as f64
                        }
                    })
                    .collect()
            }
            AxisValues::List { values } => values.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AxisValues::Linspace { steps, .. } => *steps,
            AxisValues::List { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: Param,
    #[serde(flatten)]
    pub values: AxisValues,
}

impl Axis {
    pub fn linspace(param: Param, min: f64, max: f64, steps: usize) -> Self {
        Axis {
            param,
            values: AxisValues::Linspace { min, max, steps },
        }
    }

    pub fn list(param: Param, values: Vec<f64>) -> Self {
        Axis {
            param,
            values: AxisValues::List { values },
        }
    }
}

/// Everything needed to compute a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub base: SystemParams,
    /// One or two axes; the first is the outer (row) index.
    pub axes: Vec<Axis>,
    /// Applied in order after the axis values are set.
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    pub observables: Vec<Observable>,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default)]
    pub fock: FockPolicy,
    #[serde(default)]
    pub hamiltonian: HamiltonianChoice,
}

impl SweepSpec {
    pub fn new(base: SystemParams, axes: Vec<Axis>, observables: Vec<Observable>) -> Self {
        SweepSpec {
            name: None,
            base,
            axes,
            constraints: Vec::new(),
            observables,
            engine: Engine::default(),
            fock: FockPolicy::default(),
            hamiltonian: HamiltonianChoice::default(),
        }
    }

    /// Same spec with every generic or engine-specific g²(0) observable
    /// resolved by `engine` instead.
    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        let mut obs = Vec::new();
        for o in self.observables {
            let o = match o {
                Observable::G2ZeroNumeric | Observable::G2ZeroAnalytic => Observable::G2Zero,
                other => other,
            };
            if !obs.contains(&o) {
                obs.push(o);
            }
        }
        self.observables = obs;
        self
    }

    pub fn tau_axis(&self) -> Option<usize> {
        self.axes.iter().position(|a| a.param == Param::Tau)
    }

    pub fn shape(&self) -> (usize, usize) {
        let n = |k: usize| self.axes.get(k).map_or(1, |a| a.values.len());
        (n(0), n(1))
    }

    /// Output columns in order.
    pub fn columns(&self) -> Vec<Column> {
        let mut cols = Vec::new();
        let mut push = |c: Column| {
            if !cols.contains(&c) {
                cols.push(c);
            }
        };
        for o in &self.observables {
            match o {
                Observable::G2Zero => match self.engine {
                    Engine::Lindblad => push(Column::G2Numeric),
                    Engine::WeakDrive => push(Column::G2Analytic),
                    Engine::Both => {
                        push(Column::G2Numeric);
                        push(Column::G2Analytic);
                    }
                },
                Observable::G2ZeroNumeric => push(Column::G2Numeric),
                Observable::G2ZeroAnalytic => push(Column::G2Analytic),
                Observable::MeanPhoton => push(Column::MeanPhoton),
                Observable::G2Tau => push(Column::G2Tau),
            }
        }
        if cols.contains(&Column::G2Numeric) && cols.contains(&Column::G2Analytic) {
            cols.push(Column::G2LogRatio);
        }
        cols
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate().map_err(|e| Error::config(format!("base parameters: {e}")))?;
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::config(format!("a sweep needs one or two axes, got {}", self.axes.len())));
        }
        for axis in &self.axes {
            if axis.values.len() < 2 {
                return Err(Error::config(format!("axis '{}' needs at least 2 points", axis.param)));
            }
            if axis.values.values().iter().any(|v| !v.is_finite()) {
                return Err(Error::config(format!("axis '{}' has non-finite values", axis.param)));
            }
        }
        if let [a, b] = self.axes.as_slice() {
            if a.param.overlaps(b.param) {
                return Err(Error::config(format!("axes '{}' and '{}' overlap", a.param, b.param)));
            }
        }
        for c in &self.constraints {
            if self.axes.iter().any(|a| a.param.overlaps(c.target())) {
                return Err(Error::config(format!("constraint '{c}' overwrites an axis parameter")));
            }
        }
        if self.observables.is_empty() {
            return Err(Error::config("no observables requested"));
        }
        match self.tau_axis() {
            Some(k) => {
                if self.observables.iter().any(|o| *o != Observable::G2Tau) {
                    return Err(Error::config("a tau axis only supports the g2_tau observable"));
                }
                let tau = self.axes[k].values.values();
                if tau[0] < 0.0 || tau.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::config("tau axis must be non-negative and increasing"));
                }
            }
            None => {
                if self.observables.contains(&Observable::G2Tau) {
                    return Err(Error::config("g2_tau needs a tau axis"));
                }
            }
        }
        match self.fock {
            FockPolicy::Fixed(n) if n < HilbertSpace::MIN_CUTOFF => {
                return Err(Error::config(format!("Fock cutoff must be at least {}", HilbertSpace::MIN_CUTOFF)))
            }
            FockPolicy::Auto { start, max } if start < HilbertSpace::MIN_CUTOFF || start + 2 > max => {
                return Err(Error::config(format!("automatic cutoff range {start}..{max} is empty")))
            }
            _ => {}
        }
        Ok(())
    }

    /// Parameters at grid index `(i, j)`; tau coordinates are skipped.
    pub fn point_params(&self, i: usize, j: usize) -> Result<SystemParams> {
        let mut p = self.base;
        for (axis, idx) in self.axes.iter().zip([i, j]) {
            if axis.param != Param::Tau {
                axis.param.set(&mut p, axis.values.values()[idx]);
            }
        }
        for c in &self.constraints {
            c.apply(&mut p)?;
        }
        p.validate()?;
        Ok(p)
    }
}

/// Why a grid cell has no value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointFlag {
    /// Resonance pole of a closed form or constraint.
    Singular,
    /// Mean photon number too small for a correlation.
    Undefined,
    /// Amplitudes or Fock truncation did not converge.
    NotConverged,
    /// Parameters outside the validity of the requested formula.
    OutOfRegime,
    /// Linear-algebra or physicality failure.
    Numerical,
}

impl PointFlag {
    pub fn name(self) -> &'static str {
        match self {
            PointFlag::Singular => "singular",
            PointFlag::Undefined => "undefined",
            PointFlag::NotConverged => "not_converged",
            PointFlag::OutOfRegime => "out_of_regime",
            PointFlag::Numerical => "numerical",
        }
    }

    pub fn from_error(e: &Error) -> Self {
        match e {
            Error::Singular { .. } => PointFlag::Singular,
            Error::UndefinedCorrelation { .. } => PointFlag::Undefined,
            Error::NotConverged { .. } | Error::TruncationNotConverged { .. } => PointFlag::NotConverged,
            Error::InvalidArgument(_) => PointFlag::OutOfRegime,
            _ => PointFlag::Numerical,
        }
    }
}

impl fmt::Display for PointFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisData {
    pub name: String,
    pub values: Vec<f64>,
}

/// One column as `[axis1][axis2]`; 1-D sweeps have inner length 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableGrid {
    pub name: String,
    pub values: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub schema_version: u32,
    pub artifact_version: String,
    pub spec: SweepSpec,
    /// Only set on request; never part of the data sections.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub metadata: Metadata,
    pub axes: Vec<AxisData>,
    pub observables: Vec<ObservableGrid>,
    /// Fock cutoff used per cell, `None` where no master equation was solved.
    pub cutoffs: Vec<Vec<Option<usize>>>,
    pub flags: Vec<Vec<Vec<PointFlag>>>,
}

impl GridResult {
    pub fn shape(&self) -> (usize, usize) {
        (self.cutoffs.len(), self.cutoffs.first().map_or(0, |r| r.len()))
    }

    pub fn observable(&self, name: &str) -> Option<&ObservableGrid> {
        self.observables.iter().find(|o| o.name == name)
    }

    pub fn flagged_count(&self) -> usize {
        self.flags.iter().flatten().filter(|f| !f.is_empty()).count()
    }

    pub fn flagged_fraction(&self) -> f64 {
        let (n1, n2) = self.shape();
        if n1 * n2 == 0 {
            0.0
        } else {
            self.flagged_count() as f64 / (n1 * n2) as f64
        }
    }

    pub fn with_timestamp(mut self, stamp: impl Into<String>) -> Self {
        self.metadata.timestamp = Some(stamp.into());
        self
    }
}

#[derive(Debug, Clone, Default)]
struct Cell {
    values: Vec<Option<f64>>,
    cutoff: Option<usize>,
    flags: Vec<PointFlag>,
}

impl Cell {
    fn flag(&mut self, e: &Error) {
        let f = PointFlag::from_error(e);
        if !self.flags.contains(&f) {
            self.flags.push(f);
            self.flags.sort();
        }
    }
}

fn evaluate_point(spec: &SweepSpec, cols: &[Column], i: usize, j: usize) -> Cell {
    let mut cell = Cell {
        values: vec![None; cols.len()],
        ..Cell::default()
    };
    let params = match spec.point_params(i, j) {
        Ok(p) => p,
        Err(e) => {
            cell.flag(&e);
            return cell;
        }
    };
    let col = |c: Column| cols.iter().position(|&x| x == c);

    if col(Column::G2Numeric).is_some() || col(Column::MeanPhoton).is_some() {
        match steady_observables(&params, spec.fock, spec.hamiltonian, &SteadyStateOptions::fast()) {
            Ok(obs) => {
                cell.cutoff = Some(obs.cutoff);
                if let Some(k) = col(Column::MeanPhoton) {
                    cell.values[k] = Some(obs.mean_photon);
                }
                if let Some(k) = col(Column::G2Numeric) {
                    match obs.g2_zero {
                        Some(v) => cell.values[k] = Some(v),
                        None => cell.flag(&Error::UndefinedCorrelation { mean_photon: obs.mean_photon }),
                    }
                }
            }
            Err(e) => cell.flag(&e),
        }
    }
    if let Some(k) = col(Column::G2Analytic) {
        match weakdrive::g2_analytic(&params) {
            Ok(v) => cell.values[k] = Some(v),
            Err(e) => cell.flag(&e),
        }
    }
    if let Some(k) = col(Column::G2LogRatio) {
        let num = col(Column::G2Numeric).and_then(|c| cell.values[c]);
        let ana = col(Column::G2Analytic).and_then(|c| cell.values[c]);
        if let (Some(n), Some(a)) = (num, ana) {
            if n > 0.0 && a > 0.0 {
                cell.values[k] = Some((a / n).ln());
            } else {
                cell.flag(&Error::UndefinedCorrelation { mean_photon: 0.0 });
            }
        }
    }
    cell
}

/// All τ samples of one row of the grid at once.
fn evaluate_tau_line(spec: &SweepSpec, tau: &[f64], i: usize, j: usize) -> Vec<Cell> {
    let fail = |e: &Error| {
        let mut c = Cell {
            values: vec![None],
            ..Cell::default()
        };
        c.flag(e);
        vec![c; tau.len()]
    };
    let run = || -> Result<(usize, Vec<f64>)> {
        let params = spec.point_params(i, j)?;
        let cutoff = match spec.fock {
            FockPolicy::Fixed(n) => n,
            auto => steady_observables(&params, auto, spec.hamiltonian, &SteadyStateOptions::fast())?.cutoff,
        };
        let l = Liouvillian::build(HilbertSpace::new(cutoff)?, &params, spec.hamiltonian)?;
        let rho = steady_state_with(&l, &SteadyStateOptions::fast())?;
        Ok((cutoff, g2_tau_from(&l, &rho, tau)?.values))
    };
    match run() {
        Ok((cutoff, values)) => values
            .into_iter()
            .map(|v| Cell {
                values: vec![Some(v)],
                cutoff: Some(cutoff),
                flags: Vec::new(),
            })
            .collect(),
        Err(e) => fail(&e),
    }
}

/// Runs on the global rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<GridResult> {
    run_sweep_with_jobs(spec, None)
}

/// Evaluates every grid point independently; point failures become flags.
/// Output is identical for any `jobs`.
pub fn run_sweep_with_jobs(spec: &SweepSpec, jobs: Option<usize>) -> Result<GridResult> {
    spec.validate()?;
    let cols = spec.columns();
    let (n1, n2) = spec.shape();

    let compute = || -> Vec<Cell> {
        match spec.tau_axis() {
            Some(t) => {
                let tau = spec.axes[t].values.values();
                let lines = if t == 0 { n2 } else { n1 };
                let per_line: Vec<Vec<Cell>> = (0..lines)
                    .into_par_iter()
                    .map(|other| {
                        let (i, j) = if t == 0 { (0, other) } else { (other, 0) };
                        evaluate_tau_line(spec, &tau, i, j)
                    })
                    .collect();
                let mut cells = Vec::with_capacity(n1 * n2);
                for i in 0..n1 {
                    for j in 0..n2 {
                        let (line, k) = if t == 0 { (j, i) } else { (i, j) };
                        cells.push(per_line[line][k].clone());
                    }
                }
                cells
            }
            None => (0..n1 * n2)
                .into_par_iter()
                .map(|idx| evaluate_point(spec, &cols, idx / n2, idx % n2))
                .collect(),
        }
    };
    let cells = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::config(format!("thread pool: {e}")))?
            .install(compute),
        None => compute(),
    };

    let grid = |f: &dyn Fn(&Cell) -> Option<f64>| -> Vec<Vec<Option<f64>>> {
        (0..n1).map(|i| (0..n2).map(|j| f(&cells[i * n2 + j])).collect()).collect()
    };
    let observables = cols
        .iter()
        .enumerate()
        .map(|(k, c)| ObservableGrid {
            name: c.name().to_string(),
            values: grid(&|cell| cell.values[k]),
        })
        .collect();
    Ok(GridResult {
        metadata: Metadata {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            spec: spec.clone(),
            timestamp: None,
        },
        axes: spec
            .axes
            .iter()
            .map(|a| AxisData {
                name: a.param.name().to_string(),
                values: a.values.values(),
            })
            .collect(),
        observables,
        cutoffs: (0..n1).map(|i| (0..n2).map(|j| cells[i * n2 + j].cutoff).collect()).collect(),
        flags: (0..n1).map(|i| (0..n2).map(|j| cells[i * n2 + j].flags.clone()).collect()).collect(),
    })
}
