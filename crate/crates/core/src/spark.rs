//! Spark, m-robustness and generator matrices of full spark frames.
//!
//! A frame of `M` vectors in `C^N` is full spark when every `N` of its vectors
//! form a basis. Writing the first `N` vectors as a basis `B` and the rest as
//! `B T`, the frame is full spark exactly when every square submatrix of the
//! `N x (M - N)` generator `T` is invertible.

use itertools::Itertools;

use crate::error::{FrameError, Result};
use crate::frame::{frame_bounds, frame_operator, Frame, VectorFamily};
use crate::linalg::{
    binomial, distance_from_identity, invertibility, numeric_rank, solve_linear, Matrix,
    Tolerances,
};
use crate::total_positivity::first_singular_submatrix;
use crate::ENUMERATION_CAP;

/// Result of a brute-force spark computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparkReport {
    /// Size of the smallest dependent subset, or `min(N, M) + 1` if none.
    pub spark: usize,
    pub is_full_spark: bool,
    /// Lexicographically first dependent subset of minimal size (1-based).
    pub witness: Option<Vec<usize>>,
}

/// The `N x K` matrix `T` with `x_{N+j} = sum_i t_ij x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    t: Matrix,
}

impl GeneratorMatrix {
    pub fn new(t: Matrix) -> Result<Self> {
        if t.nrows() == 0 || t.ncols() == 0 {
            return Err(FrameError::InvalidArgument("generator must be non-empty".into()));
        }
        if !crate::linalg::is_finite_matrix(&t) {
            return Err(FrameError::NonFinite);
        }
        Ok(GeneratorMatrix { t })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    pub fn into_matrix(self) -> Matrix {
        self.t
    }

    /// Errors with the first singular square submatrix, if any.
    pub fn certify(&self, tol: &Tolerances) -> Result<()> {
        match first_singular_submatrix(&self.t, tol)? {
            None => Ok(()),
            Some((rows, cols)) => Err(FrameError::GeneratorNotTotallyNonsingular { rows, cols }),
        }
    }
}

/// Whether [`full_spark_from_generator`] checks every square submatrix of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeneratorCheck {
    #[default]
    Verify,
    Unchecked,
}

fn check_cap(count: u128) -> Result<()> {
    if count > ENUMERATION_CAP {
        Err(FrameError::TooManySubsets { count, cap: ENUMERATION_CAP })
    } else {
        Ok(())
    }
}

/// Smallest linearly dependent column subset by exhaustive search.
pub fn spark(f: &VectorFamily, tol: &Tolerances) -> Result<SparkReport> {
    let (n, m) = (f.dim(), f.len());
    let top = n.min(m);
    let count = (1..=top).fold(0u128, |acc, s| acc.saturating_add(binomial(m, s)));
    check_cap(count)?;
    for size in 1..=top {
        for subset in (1..=m).combinations(size) {
            if numeric_rank(&f.columns(&subset), tol) < size {
                return Ok(SparkReport {
                    spark: size,
                    is_full_spark: false,
                    witness: Some(subset),
                });
            }
        }
    }
    Ok(SparkReport {
        spark: top + 1,
        is_full_spark: m >= n,
        witness: None,
    })
}

/// Every erasure set of size `m` leaves a spanning family.
pub fn is_m_robust(f: &Frame, m: usize, tol: &Tolerances) -> Result<bool> {
    let total = f.len();
    if m == 0 || m > total {
        return Err(FrameError::InvalidArgument(format!(
            "robustness order must lie in 1..={total}, got {m}"
        )));
    }
    check_cap(binomial(total, m))?;
    let dim = f.dim();
    for erased in (1..=total).combinations(m) {
        let survivors: Vec<usize> = (1..=total).filter(|n| !erased.contains(n)).collect();
        if survivors.len() < dim || numeric_rank(&f.columns(&survivors), tol) < dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `||x_m|| < sqrt(A)` with `A` the optimal lower frame bound; sufficient for
/// erasing `{m}`.
pub fn norm_criterion_single(f: &Frame, m: usize) -> Result<bool> {
    if m == 0 || m > f.len() {
        return Err(FrameError::BadIndexSet(format!(
            "index {m} outside 1..={}",
            f.len()
        )));
    }
    let (lower, _) = frame_bounds(f);
    Ok(f.vector(m).norm() < lower.max(0.0).sqrt())
}

/// The frame `(b_1, ..., b_N, B t_1, ..., B t_K)`.
pub fn full_spark_from_generator(
    basis: &Frame,
    t: &GeneratorMatrix,
    check: GeneratorCheck,
    tol: &Tolerances,
) -> Result<Frame> {
    let b = basis.synthesis_matrix();
    if !b.is_square() {
        return Err(FrameError::DimensionMismatch {
            expected: basis.dim(),
            found: basis.len(),
        });
    }
    if t.matrix().nrows() != b.nrows() {
        return Err(FrameError::DimensionMismatch {
            expected: b.nrows(),
            found: t.matrix().nrows(),
        });
    }
    if check == GeneratorCheck::Verify {
        t.certify(tol)?;
    }
    let tail = b * t.matrix();
    let mut x = Matrix::zeros(b.nrows(), b.ncols() + tail.ncols());
    x.columns_mut(0, b.ncols()).copy_from(b);
    x.columns_mut(b.ncols(), tail.ncols()).copy_from(&tail);
    Frame::from_matrix(x, tol)
}

/// Recovers `T = B^{-1} (x_{N+1}, ..., x_M)` from a full spark frame whose
/// first `N` vectors are the basis.
pub fn generator_from_full_spark(f: &Frame, tol: &Tolerances) -> Result<GeneratorMatrix> {
    let (n, m) = (f.dim(), f.len());
    if m <= n {
        return Err(FrameError::InvalidArgument(format!(
            "a generator needs more vectors than the dimension (N = {n}, M = {m})"
        )));
    }
    let head: Vec<usize> = (1..=n).collect();
    let b = f.columns(&head);
    if !invertibility(&b, tol).0 {
        return Err(FrameError::NotCanonicalOrder);
    }
    let report = spark(f, tol)?;
    if !report.is_full_spark {
        return Err(FrameError::NotFullSpark {
            witness: report.witness.unwrap_or_default(),
        });
    }
    let tail: Vec<usize> = (n + 1..=m).collect();
    GeneratorMatrix::new(solve_linear(&b, &f.columns(&tail), tol)?)
}

/// For a Parseval frame, 1-robustness is equivalent to `||x_n|| < 1` for all `n`.
pub fn parseval_1robust(f: &Frame, tol: &Tolerances) -> Result<bool> {
    let deviation = distance_from_identity(&frame_operator(f));
    if deviation > tol.eq_abs {
        return Err(FrameError::NotParseval { deviation });
    }
    Ok(f.norms().into_iter().all(|v| v < 1.0 - tol.rank_rel))
}
