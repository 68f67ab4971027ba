use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use super::{unvectorize, HamiltonianChoice, Liouvillian};
use crate::error::{Error, Result};
use crate::linalg::{self, ONE};
use crate::model::SystemParams;
use crate::quantum::{annihilation, expect, DensityMatrix, HilbertSpace, Operator};

/// Mean photon number below which g²(0) is reported as undefined.
pub const MIN_MEAN_PHOTON: f64 = 1e-14;
/// Relative change of g²(0) and ⟨n⟩ between cutoffs `N` and `N + 2` accepted as converged.
pub const TRUNCATION_RTOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateOptions {
    /// Require `σ_{2} > kernel_ratio · σ_{1}` for the two smallest singular values of L.
    pub check_kernel: bool,
    pub kernel_ratio: f64,
    /// `‖L ρ‖_max` must stay below `residual_rtol · max(1, ‖L‖_max)`.
    pub residual_rtol: f64,
    /// Reject states failing the density-matrix tolerances.
    pub validate: bool,
}

impl Default for SteadyStateOptions {
    fn default() -> Self {
        SteadyStateOptions {
            check_kernel: true,
            kernel_ratio: 1e3,
            residual_rtol: 1e-10,
            validate: true,
        }
    }
}

impl SteadyStateOptions {
    /// No singular-value check; used on dense sweeps where L is known to be regular.
    pub fn fast() -> Self {
        SteadyStateOptions {
            check_kernel: false,
            ..Self::default()
        }
    }
}

pub fn steady_state(l: &Liouvillian) -> Result<DensityMatrix> {
    steady_state_with(l, &SteadyStateOptions::default())
}

/// Solves `L ρ = 0` with the first row replaced by the trace functional.
pub fn steady_state_with(l: &Liouvillian, opts: &SteadyStateOptions) -> Result<DensityMatrix> {
    let d = l.space().dim();
    let n = l.dim();
    if opts.check_kernel {
        let sv = linalg::singular_values(l.matrix())?;
        let (s1, s2) = (sv[n - 1], sv[n - 2]);
        let ratio = if s1 > 0.0 { s2 / s1 } else { f64::INFINITY };
        if !(ratio > opts.kernel_ratio) {
            return Err(Error::MultipleSteadyStates { ratio });
        }
    }

    let mut bordered = l.matrix().to_owned();
    for col in 0..n {
        bordered[(0, col)] = c64::new(0.0, 0.0);
    }
    for i in 0..d {
        bordered[(0, i * d + i)] = ONE;
    }
    let mut rhs = Mat::<c64>::zeros(n, 1);
    rhs[(0, 0)] = ONE;
    let x = linalg::solve(bordered.as_ref(), rhs.as_ref()).map_err(|_| Error::IllConditioned {
        residual: f64::INFINITY,
        tolerance: opts.residual_rtol,
    })?;

    let tolerance = opts.residual_rtol * l.max_abs().max(1.0);
    let residual = linalg::max_abs((l.matrix() * &x).as_ref());
    if !(residual < tolerance) {
        return Err(Error::IllConditioned { residual, tolerance });
    }

    let raw = unvectorize(x.as_ref(), d);
    let herm = Mat::from_fn(d, d, |i, j| (raw[(i, j)] + raw[(j, i)].conj()) * 0.5);
    let tr = linalg::trace(herm.as_ref()).re;
    let rho = DensityMatrix::from_matrix(l.space(), linalg::scale(herm.as_ref(), c64::new(1.0 / tr, 0.0)))?;
    if opts.validate {
        rho.validate()?;
    }
    Ok(rho)
}

fn photon_moments(rho: &DensityMatrix) -> Result<(f64, f64)> {
    let a = annihilation(rho.space());
    let ad = a.adjoint();
    let n = &ad * &a;
    let pairs: Operator = &(&ad * &ad) * &(&a * &a);
    Ok((expect(&n, rho)?.re, expect(&pairs, rho)?.re))
}

/// `Tr[ρ a†a]`.
pub fn mean_photon(rho: &DensityMatrix) -> Result<f64> {
    Ok(photon_moments(rho)?.0)
}

/// `Tr[ρ a†a†aa] / Tr[ρ a†a]²`.
pub fn g2_zero(rho: &DensityMatrix) -> Result<f64> {
    let (n, pairs) = photon_moments(rho)?;
    if !(n > MIN_MEAN_PHOTON) {
        return Err(Error::UndefinedCorrelation { mean_photon: n });
    }
    Ok(pairs / (n * n))
}

/// Fock cutoff selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FockPolicy {
    Fixed(usize),
    /// Raise the cutoff by 2 from `start` until results at `N` and `N + 2`
    /// agree to [`TRUNCATION_RTOL`], with `N + 2 ≤ max`.
    Auto { start: usize, max: usize },
}

impl Default for FockPolicy {
    fn default() -> Self {
        FockPolicy::Auto { start: 5, max: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyObservables {
    /// Cutoff the reported values were computed at.
    pub cutoff: usize,
    pub mean_photon: f64,
    /// `None` when the mean photon number is below [`MIN_MEAN_PHOTON`].
    pub g2_zero: Option<f64>,
}

fn observe(cutoff: usize, params: &SystemParams, choice: HamiltonianChoice, opts: &SteadyStateOptions) -> Result<SteadyObservables> {
    let space = HilbertSpace::new(cutoff)?;
    let l = Liouvillian::build(space, params, choice)?;
    let rho = super::steady_state_with(&l, opts)?;
    let mean = mean_photon(&rho)?;
    let g2 = match g2_zero(&rho) {
        Ok(v) => Some(v),
        Err(Error::UndefinedCorrelation { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SteadyObservables {
        cutoff,
        mean_photon: mean,
        g2_zero: g2,
    })
}

fn relative_change(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Steady-state ⟨n⟩ and g²(0) under a cutoff policy.
pub fn steady_observables(
    params: &SystemParams,
    policy: FockPolicy,
    choice: HamiltonianChoice,
    opts: &SteadyStateOptions,
) -> Result<SteadyObservables> {
    match policy {
        FockPolicy::Fixed(n) => observe(n, params, choice, opts),
        FockPolicy::Auto { start, max } => {
            if start + 2 > max {
                return Err(Error::invalid(format!("automatic cutoff needs start + 2 <= max, got {start} and {max}")));
            }
            let mut low = observe(start, params, choice, opts)?;
            let mut change = f64::INFINITY;
            while low.cutoff + 2 <= max {
                let high = observe(low.cutoff + 2, params, choice, opts)?;
                change = relative_change(low.mean_photon, high.mean_photon);
                if let (Some(a), Some(b)) = (low.g2_zero, high.g2_zero) {
                    change = change.max(relative_change(a, b));
                }
                if change < TRUNCATION_RTOL {
                    return Ok(high);
                }
                low = high;
            }
            Err(Error::TruncationNotConverged {
                cutoff: low.cutoff,
                relative_change: change,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DriveScheme;
    use crate::quantum::{AtomLevel::Ground, Ket};

    fn fock(s: HilbertSpace, n: usize) -> DensityMatrix {
        DensityMatrix::from_ket(&Ket::basis(s, Ground, Ground, n))
    }

    #[test]
    fn fock_state_statistics() {
        let s = HilbertSpace::new(3).unwrap();
        assert_eq!(g2_zero(&fock(s, 1)).unwrap(), 0.0);
        assert!((g2_zero(&fock(s, 2)).unwrap() - 0.5).abs() < 1e-14);
        assert!((mean_photon(&fock(s, 2)).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(mean_photon(&fock(s, 0)).unwrap(), 0.0);
        assert!(matches!(g2_zero(&fock(s, 0)), Err(Error::UndefinedCorrelation { .. })));
    }

    #[test]
    fn undriven_steady_state_is_vacuum() {
        let s = HilbertSpace::new(3).unwrap();
        let p = SystemParams { g: 1.0, delta_a: 0.3, v: 2.0, ..SystemParams::new(DriveScheme::AtomDriven) }.with_gamma(0.5);
        let l = Liouvillian::build(s, &p, HamiltonianChoice::Full).unwrap();
        let rho = steady_state(&l).unwrap();
        assert!(rho.trace_distance(&fock(s, 0)).unwrap() < 1e-12);
    }

    #[test]
    fn dark_state_without_atomic_decay_is_detected() {
        // |−> decouples from the cavity when the atoms sit a wavelength apart.
        let s = HilbertSpace::new(2).unwrap();
        let p = SystemParams { g: 1.0, x2: 1.0, ..SystemParams::new(DriveScheme::CavityDriven) };
        let l = Liouvillian::build(s, &p, HamiltonianChoice::Full).unwrap();
        assert!(matches!(steady_state(&l), Err(Error::MultipleSteadyStates { .. })));
    }

    #[test]
    fn auto_policy_rejects_empty_range() {
        let p = SystemParams { epsilon: 0.1, ..SystemParams::new(DriveScheme::CavityDriven) };
        let r = steady_observables(&p, FockPolicy::Auto { start: 5, max: 6 }, HamiltonianChoice::Full, &SteadyStateOptions::fast());
        assert!(r.is_err());
        let ok = steady_observables(&p, FockPolicy::default(), HamiltonianChoice::Full, &SteadyStateOptions::fast()).unwrap();
        assert_eq!(ok.cutoff, 7);
    }
}
