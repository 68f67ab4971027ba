use faer::{c64, Mat, MatRef};

use super::space::{AtomLevel, HilbertSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ONE, ZERO};

/// Tolerances a density matrix must satisfy to count as physical.
pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Ket {
    space: HilbertSpace,
    data: Vec<c64>,
}

impl Ket {
    pub fn from_amplitudes(space: HilbertSpace, data: Vec<c64>) -> Result<Self> {
        if data.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("ket amplitudes must be finite"));
        }
        Ok(Ket { space, data })
    }

    pub fn basis(space: HilbertSpace, atom1: AtomLevel, atom2: AtomLevel, photons: usize) -> Self {
        let mut data = vec![ZERO; space.dim()];
        data[space.index(atom1, atom2, photons)] = ONE;
        Ket { space, data }
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[c64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: impl Into<c64>) -> Ket {
        let s = s.into();
        Ket {
            space: self.space,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn normalized(&self) -> Result<Ket> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::invalid("cannot normalize the zero vector"));
        }
        Ok(self.scaled(1.0 / n))
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Ket) -> c64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn plus(&self, other: &Ket) -> Ket {
        assert_eq!(self.space, other.space);
        Ket {
            space: self.space,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DensityMatrix {
    space: HilbertSpace,
    data: CMat,
}

impl DensityMatrix {
    /// Wraps a matrix without checking physicality; see [`DensityMatrix::validate`].
    pub fn from_matrix(space: HilbertSpace, data: CMat) -> Result<Self> {
        let d = space.dim();
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: data.nrows().max(data.ncols()),
            });
        }
        Ok(DensityMatrix { space, data })
    }

    /// `|ψ><ψ|` for the normalized ket.
    pub fn from_ket(ket: &Ket) -> Self {
        let psi = ket.normalized().expect("nonzero ket");
        let v = psi.amplitudes();
        let d = v.len();
        DensityMatrix {
            space: ket.space(),
            data: Mat::from_fn(d, d, |i, j| v[i] * v[j].conj()),
        }
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn matrix(&self) -> MatRef<'_, c64> {
        self.data.as_ref()
    }

    pub fn into_matrix(self) -> CMat {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> c64 {
        self.data[(row, col)]
    }

    pub fn trace(&self) -> c64 {
        linalg::trace(self.data.as_ref())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.space.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.data[(i, j)] - self.data[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::hermitian_eigenvalues(self.hermitian_part().as_ref())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// `½ Σ |λ_k(ρ - σ)|`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: other.space.dim(),
            });
        }
        let diff = linalg::lincomb(&[(1.0, &self.data), (-1.0, &other.data)], 0.0);
        let diff = hermitian_part(diff.as_ref());
        let eig = linalg::hermitian_eigenvalues(diff.as_ref())?;
        Ok(0.5 * eig.iter().map(|x| x.abs()).sum::<f64>())
    }

    /// Checks Hermiticity, unit trace and positivity at the crate tolerances.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_defect();
        if herm > HERMITICITY_TOL {
            return Err(Error::NonPhysical(format!("hermiticity defect {herm:e}")));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > TRACE_TOL {
            return Err(Error::NonPhysical(format!("trace {tr}")));
        }
        let min = self.min_eigenvalue()?;
        if min < -POSITIVITY_TOL {
            return Err(Error::NonPhysical(format!("minimum eigenvalue {min:e}")));
        }
        Ok(())
    }

    fn hermitian_part(&self) -> CMat {
        hermitian_part(self.data.as_ref())
    }
}

fn hermitian_part(m: MatRef<'_, c64>) -> CMat {
    let d = m.nrows();
    Mat::from_fn(d, d, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)
}
