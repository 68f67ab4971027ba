use faer::{c64, MatRef};
use serde::{Deserialize, Serialize};

use super::{steady_state, unvectorize, vectorize, HamiltonianChoice, Liouvillian};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::model::SystemParams;
use crate::quantum::{annihilation, expect, DensityMatrix, HilbertSpace};

/// Values below this are treated as a failed correlation, not rounding noise.
pub const NEGATIVE_FLOOR: f64 = -1e-8;

/// `exp(L dt)` for repeated steps of the same length.
#[derive(Debug, Clone)]
pub struct Propagator {
    space: HilbertSpace,
    dt: f64,
    step: CMat,
}

impl Propagator {
    pub fn new(l: &Liouvillian, dt: f64) -> Result<Self> {
        if !(dt >= 0.0 && dt.is_finite()) {
            return Err(Error::Propagation(format!("time step must be finite and non-negative, got {dt}")));
        }
        let step = linalg::expm(linalg::scale(l.matrix(), c64::new(dt, 0.0)).as_ref())?;
        Ok(Propagator { space: l.space(), dt, step })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn apply_vec(&self, v: MatRef<'_, c64>) -> CMat {
        &self.step * v
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: rho.space().dim(),
            });
        }
        let v = self.apply_vec(vectorize(rho.matrix()).as_ref());
        DensityMatrix::from_matrix(self.space, unvectorize(v.as_ref(), self.space.dim()))
    }
}

/// `exp(L t) ρ0`; `t = 0` returns `ρ0` unchanged.
pub fn propagate(l: &Liouvillian, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    if t == 0.0 {
        if rho0.space() != l.space() {
            return Err(Error::DimensionMismatch {
                expected: l.space().dim(),
                found: rho0.space().dim(),
            });
        }
        return Ok(rho0.clone());
    }
    Propagator::new(l, t)?.apply(rho0)
}

/// Sampled `g²(τ)`; delays in units of 1/κ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTrace {
    pub tau_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub cutoff: usize,
    pub params: SystemParams,
}

impl CorrelationTrace {
    /// Mean spacing of upward crossings of 1, if at least two occur.
    pub fn oscillation_period(&self) -> Option<f64> {
        let mut crossings = Vec::new();
        for k in 1..self.values.len() {
            let (y0, y1) = (self.values[k - 1] - 1.0, self.values[k] - 1.0);
            if y0 < 0.0 && y1 >= 0.0 {
                let (t0, t1) = (self.tau_grid[k - 1], self.tau_grid[k]);
                crossings.push(t0 + (t1 - t0) * (-y0) / (y1 - y0));
            }
        }
        if crossings.len() < 2 {
            return None;
        }
        Some((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
    }
}

/// Quantum-regression `g²(τ) = Tr[a†a e^{Lτ}(a ρ a†)] / ⟨a†a⟩²` from a known steady state.
pub fn g2_tau_from(l: &Liouvillian, rho_ss: &DensityMatrix, tau_grid: &[f64]) -> Result<CorrelationTrace> {
    if tau_grid.is_empty() {
        return Err(Error::invalid("tau grid is empty"));
    }
    if tau_grid[0] < 0.0 || tau_grid.windows(2).any(|w| !(w[1] >= w[0])) || tau_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::invalid("tau grid must be finite, non-negative and sorted"));
    }
    let space = l.space();
    let a = annihilation(space);
    let ad = a.adjoint();
    let number = &ad * &a;
    let mean = expect(&number, rho_ss)?.re;
    if !(mean > super::steady::MIN_MEAN_PHOTON) {
        return Err(Error::UndefinedCorrelation { mean_photon: mean });
    }

    let seeded = a.matrix() * rho_ss.matrix() * ad.matrix();
    let mut v = vectorize(seeded.as_ref());
    let d = space.dim();
    let observe = |v: &CMat| -> Result<f64> {
        let rho = DensityMatrix::from_matrix(space, unvectorize(v.as_ref(), d))?;
        Ok(expect(&number, &rho)?.re / (mean * mean))
    };

    // Steps equal to 1e-12 relative share one exponential; a uniform grid needs one.
    let mut propagators: Vec<Propagator> = Vec::new();
    let mut values = Vec::with_capacity(tau_grid.len());
    let mut t = 0.0;
    for &tau in tau_grid {
        let dt = tau - t;
        if dt > 0.0 {
            let idx = match propagators.iter().position(|p| (p.dt() - dt).abs() <= 1e-12 * dt) {
                Some(i) => i,
                None => {
                    propagators.push(Propagator::new(l, dt)?);
                    propagators.len() - 1
                }
            };
            v = propagators[idx].apply_vec(v.as_ref());
            t = tau;
        }
        let value = observe(&v)?;
        if value < NEGATIVE_FLOOR {
            return Err(Error::NonPhysical(format!("g2({tau}) = {value:e} is negative")));
        }
        values.push(value);
    }
    Ok(CorrelationTrace {
        tau_grid: tau_grid.to_vec(),
        values,
        cutoff: space.cutoff(),
        params: *l.params(),
    })
}

/// Steady state and `g²(τ)` on the full Hamiltonian.
pub fn g2_tau(space: HilbertSpace, params: &SystemParams, tau_grid: &[f64]) -> Result<CorrelationTrace> {
    let l = Liouvillian::build(space, params, HamiltonianChoice::Full)?;
    let rho = steady_state(&l)?;
    g2_tau_from(&l, &rho, tau_grid)
}
