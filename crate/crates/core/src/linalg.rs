//! Thin dense complex linear-algebra layer over `faer`.
//!
//! Everything above this module speaks in terms of `Mat<c64>`; the handful of
//! decompositions the simulator needs are wrapped here so the rest of the
//! crate never touches `faer` solver types directly.

use faer::linalg::solvers::Solve;
use faer::{c64, Mat, MatRef, Side};

use crate::error::{Error, Result};

pub type CMat = Mat<c64>;

pub const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
pub const ONE: c64 = c64 { re: 1.0, im: 0.0 };
pub const I: c64 = c64 { re: 0.0, im: 1.0 };

pub fn zeros(n: usize) -> CMat {
    Mat::zeros(n, n)
}

pub fn identity(n: usize) -> CMat {
    Mat::identity(n, n)
}

pub fn adjoint(m: MatRef<'_, c64>) -> CMat {
    Mat::from_fn(m.ncols(), m.nrows(), |i, j| m[(j, i)].conj())
}

pub fn scale(m: MatRef<'_, c64>, s: c64) -> CMat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * s)
}

/// `sum_k coeff_k * m_k + diag * I` for square matrices of equal size.
pub fn lincomb(terms: &[(f64, &CMat)], diag: f64) -> CMat {
    let n = terms[0].1.nrows();
    let mut out = zeros(n);
    for &(c, m) in terms {
        if c == 0.0 {
            continue;
        }
        for j in 0..n {
            for i in 0..n {
                out[(i, j)] += m[(i, j)] * c;
            }
        }
    }
    for i in 0..n {
        out[(i, i)] += c64::new(diag, 0.0);
    }
    out
}

/// Largest elementwise modulus.
pub fn max_abs(m: MatRef<'_, c64>) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            best = best.max(m[(i, j)].norm());
        }
    }
    best
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut best = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            best = best.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    best
}

pub fn frobenius(m: MatRef<'_, c64>) -> f64 {
    m.norm_l2()
}

/// Maximum absolute column sum.
pub fn one_norm(m: MatRef<'_, c64>) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn trace(m: MatRef<'_, c64>) -> c64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

/// Solves `a x = b` with partially pivoted LU.
pub fn solve(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Result<CMat> {
    if a.nrows() != a.ncols() || a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    let x = a.partial_piv_lu().solve(b);
    if x.col_iter().any(|c| c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())) {
        return Err(Error::Linalg("LU solve produced non-finite values".into()));
    }
    Ok(x)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: MatRef<'_, c64>) -> Result<Vec<f64>> {
    m.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Linalg(format!("hermitian eigensolver: {e:?}")))
}

/// Eigenvalues of a general complex matrix, unordered.
pub fn eigenvalues(m: MatRef<'_, c64>) -> Result<Vec<c64>> {
    m.eigenvalues()
        .map_err(|e| Error::Linalg(format!("eigensolver: {e:?}")))
}

/// Singular values, descending.
pub fn singular_values(m: MatRef<'_, c64>) -> Result<Vec<f64>> {
    m.singular_values()
        .map_err(|e| Error::Linalg(format!("svd: {e:?}")))
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with a degree-13 Padé approximant.
pub fn expm(m: MatRef<'_, c64>) -> Result<CMat> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    let norm = one_norm(m);
    if !norm.is_finite() {
        return Err(Error::Propagation("generator has non-finite entries".into()));
    }
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = scale(m, c64::new(0.5f64.powi(squarings), 0.0));
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = &PADE13;

    let inner_u = lincomb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], 0.0);
    let u_poly = &a6 * &inner_u;
    let u_poly = lincomb(
        &[(1.0, &u_poly), (b[7], &a6), (b[5], &a4), (b[3], &a2)],
        b[1],
    );
    let u = &a * &u_poly;

    let inner_v = lincomb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], 0.0);
    let v = &a6 * &inner_v;
    let v = lincomb(&[(1.0, &v), (b[6], &a6), (b[4], &a4), (b[2], &a2)], b[0]);

    let num = lincomb(&[(1.0, &v), (1.0, &u)], 0.0);
    let den = lincomb(&[(1.0, &v), (-1.0, &u)], 0.0);
    let mut r = solve(den.as_ref(), num.as_ref())?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}
