//! Inverses of `I - sum_j theta_{y_j, x_j}` for finitely many rank-one terms.
//!
//! `rank_one_inverse` is the closed form for a single term. `chain_inverse`
//! writes the inverse of a `k`-term sum as a product of `k` single-term
//! inverses with progressively corrected left vectors. `closed_form_inverse`
//! uses the `k x k` coefficient matrix `C = -(G - I)^{-1}` with
//! `G_ij = <y_j, x_i>`; it does not need the `y_j` to be linearly independent.

use crate::error::{FrameError, Result};
use crate::linalg::{
    identity, inner, shifted_invertibility, solve_linear, theta, Matrix, Scalar, Tolerances,
    Vector,
};

fn check_pairs(xs: &[Vector], ys: &[Vector]) -> Result<usize> {
    if xs.len() != ys.len() {
        return Err(FrameError::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    let first = xs.first().ok_or_else(|| {
        FrameError::InvalidArgument("at least one rank-one term is required".into())
    })?;
    let n = first.len();
    for v in xs.iter().chain(ys) {
        if v.len() != n {
            return Err(FrameError::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    Ok(n)
}

/// `(I - theta_{y,x})^{-1} = I + theta_{y,x} / (1 - <y,x>)`.
pub fn rank_one_inverse(y: &Vector, x: &Vector, tol: &Tolerances) -> Result<Matrix> {
    if y.len() != x.len() {
        return Err(FrameError::DimensionMismatch {
            expected: y.len(),
            found: x.len(),
        });
    }
    let gap = Scalar::new(1.0, 0.0) - inner(y, x);
    if gap.norm() <= tol.rank_rel {
        return Err(FrameError::NotInvertible { gap: gap.norm() });
    }
    Ok(identity(y.len()) + theta(y, x) / gap)
}

/// Product of `k` rank-one inverses equal to `(I - sum_{i<=k} theta_{y_i,x_i})^{-1}`.
///
/// The left vectors are corrected as the product grows:
/// `ybar_1 = y_1`, `ybar_n = P_{n-1} y_n` where `P_{n-1}` is the partial
/// product. Fails with the first prefix whose sum is not invertible.
pub fn chain_inverse(xs: &[Vector], ys: &[Vector], tol: &Tolerances) -> Result<Matrix> {
    let n = check_pairs(xs, ys)?;
    let mut product = identity(n);
    for (step, (x, y)) in xs.iter().zip(ys).enumerate() {
        let ybar = &product * y;
        let factor = rank_one_inverse(&ybar, x, tol)
            .map_err(|_| FrameError::PrefixNotInvertible { prefix: step + 1 })?;
        product = factor * product;
    }
    Ok(product)
}

/// `I + sum_{i,j} c_ij theta_{y_i, x_j}` with `C = -(G - I)^{-1}`, `G_ij = <y_j, x_i>`.
pub fn closed_form_inverse(xs: &[Vector], ys: &[Vector], tol: &Tolerances) -> Result<Matrix> {
    let n = check_pairs(xs, ys)?;
    let k = xs.len();
    let x = Matrix::from_columns(xs);
    let y = Matrix::from_columns(ys);
    let g_minus_i = x.adjoint() * &y - identity(k);
    let (invertible, sigma_min) = shifted_invertibility(&g_minus_i, tol);
    if !invertible {
        return Err(FrameError::NotInvertible { gap: sigma_min });
    }
    let c = -solve_linear(&g_minus_i, &identity(k), tol)
        .map_err(|_| FrameError::NotInvertible { gap: 0.0 })?;
    // sum_{i,j} c_ij y_i x_j^* = Y C X^*
    Ok(identity(n) + y * c * x.adjoint())
}
