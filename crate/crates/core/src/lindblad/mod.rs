//! Master-equation numerics on the full density matrix.
//!
//! Density matrices are column-stacked: element `(i, j)` of a `D × D` matrix
//! sits at `j * D + i`, so `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.

mod correlation;
mod steady;

pub use correlation::{g2_tau, g2_tau_from, propagate, CorrelationTrace, Propagator};
pub use steady::{
    g2_zero, mean_photon, steady_observables, steady_state, steady_state_with, FockPolicy, SteadyObservables,
    SteadyStateOptions,
};

use faer::{c64, Mat, MatRef};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ZERO};
use crate::model::{self, SystemParams};
use crate::quantum::{annihilation, atomic_sigma, AtomLevel, DensityMatrix, HilbertSpace, Operator};

/// Which Hamiltonian enters the commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HamiltonianChoice {
    /// Position-dependent couplings `g cos(2π x_j)`.
    #[default]
    Full,
    /// Uniform coupling `g` on both atoms.
    Reduced,
}

/// `√κ a`, `√γ1 σ_1`, `√γ2 σ_2` with `σ_j = |g><r|`; zero-rate channels are dropped.
pub fn collapse_operators(space: HilbertSpace, params: &SystemParams) -> Vec<Operator> {
    let mut ops = vec![annihilation(space).scaled(params.kappa.sqrt())];
    for (atom, gamma) in [(1, params.gamma1), (2, params.gamma2)] {
        if gamma > 0.0 {
            let sigma = atomic_sigma(space, atom, AtomLevel::Ground, AtomLevel::Rydberg).expect("atom 1 or 2");
            ops.push(sigma.scaled(gamma.sqrt()));
        }
    }
    ops
}

/// Generator `L` of `dρ/dt = −i[H, ρ] + Σ_c (c ρ c† − ½{c†c, ρ})`.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    space: HilbertSpace,
    params: SystemParams,
    choice: HamiltonianChoice,
    data: CMat,
}

fn nonzeros(m: MatRef<'_, c64>) -> Vec<(usize, usize, c64)> {
    let mut out = Vec::new();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if z != ZERO {
                out.push((i, j, z));
            }
        }
    }
    out
}

impl Liouvillian {
    pub fn build(space: HilbertSpace, params: &SystemParams, choice: HamiltonianChoice) -> Result<Self> {
        let h = match choice {
            HamiltonianChoice::Full => model::hamiltonian_full(space, params)?,
            HamiltonianChoice::Reduced => model::hamiltonian_reduced(space, params)?,
        };
        let jumps = collapse_operators(space, params);
        let mut h_eff = h.into_matrix();
        for c in &jumps {
            let cdc = c.adjoint().matrix() * c.matrix();
            for j in 0..h_eff.ncols() {
                for i in 0..h_eff.nrows() {
                    h_eff[(i, j)] += cdc[(i, j)] * c64::new(0.0, -0.5);
                }
            }
        }

        // −i H_eff ρ + i ρ H_eff† + Σ c ρ c†
        let d = space.dim();
        let mut l = Mat::<c64>::zeros(d * d, d * d);
        let minus_i = c64::new(0.0, -1.0);
        for (i, k, z) in nonzeros(h_eff.as_ref()) {
            for j in 0..d {
                l[(j * d + i, j * d + k)] += minus_i * z;
            }
        }
        // vec(ρ H_eff†) = (conj(H_eff) ⊗ I) vec ρ
        for (j, l_col, z) in nonzeros(h_eff.as_ref()) {
            for i in 0..d {
                l[(j * d + i, l_col * d + i)] += c64::new(0.0, 1.0) * z.conj();
            }
        }
        for c in &jumps {
            let entries = nonzeros(c.matrix());
            for &(j, lc, b) in &entries {
                for &(i, k, a) in &entries {
                    l[(j * d + i, lc * d + k)] += b.conj() * a;
                }
            }
        }
        Ok(Liouvillian {
            space,
            params: *params,
            choice,
            data: l,
        })
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn choice(&self) -> HamiltonianChoice {
        self.choice
    }

    pub fn matrix(&self) -> MatRef<'_, c64> {
        self.data.as_ref()
    }

    /// `D²`.
    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    /// `L(ρ)` as a `D × D` matrix.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<CMat> {
        if rho.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: rho.space().dim(),
            });
        }
        let out = &self.data * vectorize(rho.matrix());
        Ok(unvectorize(out.as_ref(), self.space.dim()))
    }

    /// `max_col |Σ_i L[(i, i), col]|`, zero for a trace-preserving generator.
    pub fn trace_defect(&self) -> f64 {
        let d = self.space.dim();
        (0..self.dim())
            .map(|col| (0..d).map(|i| self.data[(i * d + i, col)]).sum::<c64>().norm())
            .fold(0.0, f64::max)
    }

    pub fn spectrum(&self) -> Result<Vec<c64>> {
        linalg::eigenvalues(self.data.as_ref())
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(self.data.as_ref())
    }
}

pub fn build_liouvillian(space: HilbertSpace, params: &SystemParams, choice: HamiltonianChoice) -> Result<Liouvillian> {
    Liouvillian::build(space, params, choice)
}

/// Column-stacked `D² × 1` vector.
pub fn vectorize(m: MatRef<'_, c64>) -> CMat {
    let d = m.nrows();
    Mat::from_fn(d * m.ncols(), 1, |idx, _| m[(idx % d, idx / d)])
}

pub fn unvectorize(v: MatRef<'_, c64>, d: usize) -> CMat {
    Mat::from_fn(d, d, |i, j| v[(j * d + i, 0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DriveScheme;
    use crate::quantum::{Ket, AtomLevel::Ground};

    #[test]
    fn cavity_decay_at_rate_kappa() {
        let s = HilbertSpace::new(2).unwrap();
        let p = SystemParams { kappa: 1.3, ..SystemParams::new(DriveScheme::CavityDriven) };
        let l = Liouvillian::build(s, &p, HamiltonianChoice::Full).unwrap();
        let rho = DensityMatrix::from_ket(&Ket::basis(s, Ground, Ground, 1));
        let out = l.apply(&rho).unwrap();
        let (i0, i1) = (s.index(Ground, Ground, 0), s.index(Ground, Ground, 1));
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let want = if i == j && i == i0 {
                    1.3
                } else if i == j && i == i1 {
                    -1.3
                } else {
                    0.0
                };
                assert!((out[(i, j)] - c64::new(want, 0.0)).norm() < 1e-14, "({i},{j})");
            }
        }
    }

    #[test]
    fn vectorization_roundtrip() {
        let m = Mat::from_fn(3, 3, |i, j| c64::new(i as f64, j as f64));
        let v = vectorize(m.as_ref());
        assert_eq!(v[(5, 0)], m[(2, 1)]);
        assert_eq!(unvectorize(v.as_ref(), 3), m);
    }
}
