use std::ops::{Add, Mul, Neg, Sub};

use faer::{c64, Mat, MatRef};

use super::space::{AtomLevel, HilbertSpace, Slot};
use super::state::{DensityMatrix, Ket};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ONE, ZERO};

/// Dense operator on a [`HilbertSpace`].
#[derive(Debug, Clone)]
pub struct Operator {
    space: HilbertSpace,
    data: CMat,
}

impl Operator {
    pub fn from_matrix(space: HilbertSpace, data: CMat) -> Result<Self> {
        let d = space.dim();
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: data.nrows().max(data.ncols()),
            });
        }
        Ok(Operator { space, data })
    }

    pub fn zero(space: HilbertSpace) -> Self {
        Operator {
            space,
            data: linalg::zeros(space.dim()),
        }
    }

    pub fn identity(space: HilbertSpace) -> Self {
        Operator {
            space,
            data: linalg::identity(space.dim()),
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

    pub fn adjoint(&self) -> Operator {
        Operator {
            space: self.space,
            data: linalg::adjoint(self.data.as_ref()),
        }
    }

    pub fn scaled(&self, s: impl Into<c64>) -> Operator {
        Operator {
            space: self.space,
            data: linalg::scale(self.data.as_ref(), s.into()),
        }
    }

    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        check_space(self.space, ket.space())?;
        let d = self.space.dim();
        let v = ket.amplitudes();
        let out = (0..d)
            .map(|i| (0..d).map(|j| self.data[(i, j)] * v[j]).sum())
            .collect();
        Ok(Ket::from_amplitudes(self.space, out).expect("dimension preserved"))
    }

    /// Largest elementwise |A - A†|.
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

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(self.data.as_ref())
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.space, other.space, "operators live on different spaces");
        linalg::max_abs_diff(self.data.as_ref(), other.data.as_ref())
    }

    pub fn frobenius_norm(&self) -> f64 {
        linalg::frobenius(self.data.as_ref())
    }
}

fn check_space(a: HilbertSpace, b: HilbertSpace) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operators live on different spaces");
        Operator {
            space: self.space,
            data: linalg::lincomb(&[(1.0, &self.data), (1.0, &rhs.data)], 0.0),
        }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operators live on different spaces");
        Operator {
            space: self.space,
            data: linalg::lincomb(&[(1.0, &self.data), (-1.0, &rhs.data)], 0.0),
        }
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.space, rhs.space, "operators live on different spaces");
        Operator {
            space: self.space,
            data: &self.data * &rhs.data,
        }
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl Mul<&Operator> for f64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scaled(self)
    }
}

impl Mul<Operator> for f64 {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        rhs.scaled(self)
    }
}

impl Mul<&Operator> for c64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scaled(self)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scaled(-1.0)
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scaled(-1.0)
    }
}

/// Truncated single-mode annihilator, `<n-1|a|n> = sqrt(n)`.
pub fn local_annihilation(fock_dim: usize) -> CMat {
    Mat::from_fn(fock_dim, fock_dim, |i, j| {
        if j == i + 1 {
            c64::new((j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

/// `|m><n|` on a single atom.
pub fn local_sigma(m: AtomLevel, n: AtomLevel) -> CMat {
    Mat::from_fn(2, 2, |i, j| {
        if i == m.index() && j == n.index() {
            ONE
        } else {
            ZERO
        }
    })
}

/// `1 ⊗ … ⊗ local ⊗ … ⊗ 1` with `local` placed in `slot`.
pub fn embed(space: HilbertSpace, local: MatRef<'_, c64>, slot: Slot) -> Result<Operator> {
    let ld = space.slot_dim(slot);
    if local.nrows() != ld || local.ncols() != ld {
        return Err(Error::DimensionMismatch {
            expected: ld,
            found: local.nrows().max(local.ncols()),
        });
    }
    let d = space.dim();
    let mut data = linalg::zeros(d);
    for col in 0..d {
        let (c1, c2, cn) = space.decompose(col);
        for row in 0..d {
            let (r1, r2, rn) = space.decompose(row);
            let (same, lr, lc) = match slot {
                Slot::Atom1 => (r2 == c2 && rn == cn, r1.index(), c1.index()),
                Slot::Atom2 => (r1 == c1 && rn == cn, r2.index(), c2.index()),
                Slot::Cavity => (r1 == c1 && r2 == c2, rn, cn),
            };
            if same {
                data[(row, col)] = local[(lr, lc)];
            }
        }
    }
    Ok(Operator { space, data })
}

/// Cavity annihilation operator `a` on the composite space.
pub fn annihilation(space: HilbertSpace) -> Operator {
    embed(space, local_annihilation(space.fock_dim()).as_ref(), Slot::Cavity)
        .expect("local dimension matches cavity slot")
}

pub fn creation(space: HilbertSpace) -> Operator {
    annihilation(space).adjoint()
}

/// `a†a`.
pub fn number(space: HilbertSpace) -> Operator {
    let a = annihilation(space);
    &a.adjoint() * &a
}

/// `σ^j_{mn} = |m>_j <n|` for atom `j ∈ {1, 2}`.
pub fn atomic_sigma(space: HilbertSpace, atom: usize, m: AtomLevel, n: AtomLevel) -> Result<Operator> {
    let slot = match atom {
        1 => Slot::Atom1,
        2 => Slot::Atom2,
        _ => return Err(Error::invalid(format!("atom index must be 1 or 2, got {atom}"))),
    };
    embed(space, local_sigma(m, n).as_ref(), slot)
}

/// `Tr[ρ · op]`.
pub fn expect(op: &Operator, rho: &DensityMatrix) -> Result<c64> {
    check_space(op.space(), rho.space())?;
    let d = op.space().dim();
    let a = op.matrix();
    let r = rho.matrix();
    let mut acc = ZERO;
    for i in 0..d {
        for k in 0..d {
            acc += r[(i, k)] * a[(k, i)];
        }
    }
    Ok(acc)
}
