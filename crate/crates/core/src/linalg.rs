//! Dense complex linear algebra with explicit tolerances.
//!
//! Storage is `nalgebra`'s column-major `DMatrix`. Factorizations that carry a
//! contract of their own (pivoted elimination with a relative pivot floor,
//! minors) are written here; the Hermitian eigensolver and the SVD come from
//! `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{FrameError, Result};

pub type Scalar = Complex64;
pub type Matrix = DMatrix<Scalar>;
pub type Vector = DVector<Scalar>;

/// Numerical thresholds shared by every operation in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative cutoff for singular values and pivots.
    pub rank_rel: f64,
    /// Absolute entrywise equality slack.
    pub eq_abs: f64,
    /// Floor below which an eigenvalue is not considered positive.
    pub psd_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rel: 1e-10,
            eq_abs: 1e-9,
            psd_floor: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn new(rank_rel: f64, eq_abs: f64, psd_floor: f64) -> Result<Self> {
        let tol = Tolerances {
            rank_rel,
            eq_abs,
            psd_floor,
        };
        tol.validate()?;
        Ok(tol)
    }

    /// Default tolerances with a different entrywise equality slack.
    pub fn with_eq_abs(eq_abs: f64) -> Result<Self> {
        let d = Tolerances::default();
        Tolerances::new(d.rank_rel, eq_abs, d.psd_floor)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.rank_rel) && ok(self.eq_abs) && ok(self.psd_floor)) {
            return Err(FrameError::InvalidArgument(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.rank_rel >= 1.0 {
            return Err(FrameError::InvalidArgument("rank_rel must be below 1".into()));
        }
        Ok(())
    }
}

/// `<x, y> = sum_i x_i conj(y_i)`.
pub fn inner(x: &Vector, y: &Vector) -> Scalar {
    y.dotc(x)
}

/// Matrix of the rank-one operator `v -> <v, x> y`.
pub fn theta(y: &Vector, x: &Vector) -> Matrix {
    y * x.adjoint()
}

pub fn max_abs(a: &Matrix) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

/// Largest entrywise modulus of `a - I`.
pub fn distance_from_identity(a: &Matrix) -> f64 {
    let mut worst = 0.0_f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let target = if i == j { Scalar::new(1.0, 0.0) } else { Scalar::new(0.0, 0.0) };
            worst = worst.max((a[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn is_finite_matrix(a: &Matrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn check_finite(a: &Matrix) -> Result<()> {
    if is_finite_matrix(a) {
        Ok(())
    } else {
        Err(FrameError::NonFinite)
    }
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    packed: Matrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    /// Factors `a`, rejecting it when a pivot falls below
    /// `rank_rel * max|a_ij|`.
    pub fn factor(a: &Matrix, tol: &Tolerances) -> Result<Lu> {
        if !a.is_square() {
            return Err(FrameError::DimensionMismatch {
                expected: a.nrows(),
                found: a.ncols(),
            });
        }
        check_finite(a)?;
        let threshold = tol.rank_rel * max_abs(a);
        let lu = Lu::factor_raw(a.clone());
        for k in 0..lu.packed.nrows() {
            let pivot = lu.packed[(k, k)].norm();
            if pivot < threshold || pivot == 0.0 {
                return Err(FrameError::SingularMatrix { pivot, threshold });
            }
        }
        Ok(lu)
    }

    fn factor_raw(mut m: Matrix) -> Lu {
        let n = m.nrows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, m[(i, k)].norm()))
                .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            if p != k {
                m.swap_rows(p, k);
                perm.swap(p, k);
                swaps += 1;
            }
            if best == 0.0 {
                continue;
            }
            let pivot = m[(k, k)];
            for i in (k + 1)..n {
                let factor = m[(i, k)] / pivot;
                m[(i, k)] = factor;
                for j in (k + 1)..n {
                    let u = m[(k, j)];
                    m[(i, j)] -= factor * u;
                }
            }
        }
        Lu {
            packed: m,
            perm,
            swaps,
        }
    }

    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        let n = self.packed.nrows();
        if b.nrows() != n {
            return Err(FrameError::DimensionMismatch {
                expected: n,
                found: b.nrows(),
            });
        }
        check_finite(b)?;
        let mut x = Matrix::zeros(n, b.ncols());
        for (dst, &src) in self.perm.iter().enumerate() {
            x.set_row(dst, &b.row(src));
        }
        for c in 0..x.ncols() {
            for i in 0..n {
                let mut s = x[(i, c)];
                for j in 0..i {
                    s -= self.packed[(i, j)] * x[(j, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for j in (i + 1)..n {
                    s -= self.packed[(i, j)] * x[(j, c)];
                }
                x[(i, c)] = s / self.packed[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn determinant(&self) -> Scalar {
        let d = self.packed.diagonal().iter().product::<Scalar>();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

/// Solves `A X = B` by pivoted elimination.
pub fn solve_linear(a: &Matrix, b: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    Lu::factor(a, tol)?.solve(b)
}

/// Determinant by pivoted elimination; exact zero pivots give zero.
pub fn determinant(a: &Matrix) -> Scalar {
    assert!(a.is_square(), "determinant of a non-square matrix");
    if a.nrows() == 0 {
        return Scalar::new(1.0, 0.0);
    }
    Lu::factor_raw(a.clone()).determinant()
}

/// Checks that `idx` is strictly increasing, 1-based and within `1..=bound`.
pub(crate) fn check_index_set(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    for (pos, &i) in idx.iter().enumerate() {
        if i == 0 || i > bound {
            return Err(FrameError::BadIndexSet(format!(
                "{what} index {i} outside 1..={bound}"
            )));
        }
        if pos > 0 && idx[pos - 1] >= i {
            return Err(FrameError::BadIndexSet(format!(
                "{what} indices must be strictly increasing"
            )));
        }
    }
    Ok(())
}

/// Submatrix on 1-based row and column index lists (no validation).
pub(crate) fn select(a: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| a[(rows[i] - 1, cols[j] - 1)])
}

/// The minor `det A[I, J]` for 1-based, strictly increasing `I` and `J`.
pub fn minor_det(a: &Matrix, rows: &[usize], cols: &[usize]) -> Result<Scalar> {
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(FrameError::BadIndexSet(format!(
            "minor needs equal, non-empty index sets (got {} and {})",
            rows.len(),
            cols.len()
        )));
    }
    check_index_set(rows, a.nrows(), "row")?;
    check_index_set(cols, a.ncols(), "column")?;
    Ok(determinant(&select(a, rows, cols)))
}

pub fn singular_values(a: &Matrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Number of singular values above `rank_rel` times the largest one.
pub fn numeric_rank(a: &Matrix, tol: &Tolerances) -> usize {
    let s = singular_values(a);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > tol.rank_rel * top).count()
}

/// Invertibility of a square matrix by its singular-value ratio; also
/// returns the smallest singular value.
pub fn invertibility(a: &Matrix, tol: &Tolerances) -> (bool, f64) {
    let s = singular_values(a);
    let top = s.first().copied().unwrap_or(0.0);
    let bottom = s.last().copied().unwrap_or(0.0);
    let full = s.len() == a.nrows().min(a.ncols()) && a.is_square();
    (full && top > 0.0 && bottom > tol.rank_rel * top, bottom)
}

/// Invertibility of an identity shift `I - K` (or `K - I`): the smallest
/// singular value is compared with `rank_rel * max(sigma_max, 1)`, so a
/// shift that is zero up to roundoff counts as singular.
pub fn shifted_invertibility(a: &Matrix, tol: &Tolerances) -> (bool, f64) {
    let s = singular_values(a);
    let top = s.first().copied().unwrap_or(0.0).max(1.0);
    let bottom = s.last().copied().unwrap_or(0.0);
    let full = s.len() == a.nrows() && a.is_square();
    (full && bottom > tol.rank_rel * top, bottom)
}

fn hermitian_part(a: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    if !a.is_square() {
        return Err(FrameError::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    check_finite(a)?;
    let deviation = max_abs(&(a - a.adjoint()));
    if deviation > tol.eq_abs {
        return Err(FrameError::NotHermitian { deviation });
    }
    Ok((a + a.adjoint()).scale(0.5))
}

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of `a`.
pub fn hermitian_eigen(a: &Matrix, tol: &Tolerances) -> Result<(Vec<f64>, Matrix)> {
    let sym = hermitian_part(a, tol)?;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(a.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Positive inverse square root of a Hermitian positive definite matrix.
pub fn hermitian_inv_sqrt(a: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let (values, q) = hermitian_eigen(a, tol)?;
    if let Some(&min) = values.first() {
        if min < tol.psd_floor {
            return Err(FrameError::NotPositiveDefinite { min_eigenvalue: min });
        }
    }
    let scale = DVector::from_iterator(
        values.len(),
        values.iter().map(|&l| Scalar::new(1.0 / l.sqrt(), 0.0)),
    );
    let scaled = Matrix::from_fn(q.nrows(), q.ncols(), |r, c| q[(r, c)] * scale[c]);
    let s = &scaled * q.adjoint();
    Ok((&s + s.adjoint()).scale(0.5))
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

/// Builds a complex matrix from real row-major data.
pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> Matrix {
    assert_eq!(data.len(), rows * cols, "row-major data has the wrong length");
    Matrix::from_fn(rows, cols, |i, j| Scalar::new(data[i * cols + j], 0.0))
}

pub fn real_vector(data: &[f64]) -> Vector {
    Vector::from_iterator(data.len(), data.iter().map(|&v| Scalar::new(v, 0.0)))
}
