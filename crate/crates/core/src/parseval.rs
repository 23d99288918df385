//! Turning frames into Parseval frames.
//!
//! Two routes: the associated Parseval frame `S^{-1/2} x_n` with `S` the
//! frame operator, and a product `R` of closed-form rank-one inverse square
//! roots for operators of the form `I + sum_k theta_{f_k, f_k}`. When the
//! first `N` vectors of a frame are orthonormal its frame operator has that
//! form, and `R x_n` is a Parseval frame with the same spark.
//!
//! Parseval frames with unit-norm vectors are made 1-robust by rotating each
//! unit vector against a shorter partner.

use crate::error::{FrameError, Result};
use crate::frame::{frame_operator, Frame, VectorFamily};
use crate::linalg::{
    distance_from_identity, hermitian_inv_sqrt, identity, theta, Matrix, Scalar, Tolerances,
    Vector,
};

/// `R = R_M ... R_1` with `R_k = (I + theta_{g_k, g_k})^{-1/2}`, where `g_k` is
/// the `k`-th vector after the first `k - 1` factors have been applied.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionOperator {
    operator: Matrix,
    factors: Vec<Matrix>,
}

impl CorrectionOperator {
    pub fn operator(&self) -> &Matrix {
        &self.operator
    }

    /// Factors in application order (`R_1` first).
    pub fn factors(&self) -> &[Matrix] {
        &self.factors
    }

    pub fn into_operator(self) -> Matrix {
        self.operator
    }
}

/// The frame `(S^{-1/2} x_n)`.
pub fn associated_parseval(f: &Frame, tol: &Tolerances) -> Result<Frame> {
    let s = hermitian_inv_sqrt(&frame_operator(f), tol)?;
    Ok(f.mapped(&s))
}

/// `(I + theta_{x,x})^{-1/2} = I + (1/||x||^2)(1/sqrt(1 + ||x||^2) - 1) theta_{x,x}`.
pub fn inv_sqrt_rank_one(x: &Vector) -> Matrix {
    let n2 = x.norm_squared();
    if n2 == 0.0 {
        return identity(x.len());
    }
    let c = (1.0 / (1.0 + n2).sqrt() - 1.0) / n2;
    identity(x.len()) + theta(x, x).scale(c)
}

/// Builds `R` with `R (I + sum_k theta_{f_k, f_k}) R* = I`, processing the
/// vectors in the given order.
pub fn correction_operator(fs: &VectorFamily) -> CorrectionOperator {
    let n = fs.dim();
    let mut pending: Matrix = fs.synthesis_matrix().clone();
    let mut operator = identity(n);
    let mut factors = Vec::with_capacity(fs.len());
    for k in 0..fs.len() {
        let factor = inv_sqrt_rank_one(&pending.column(k).into_owned());
        let rest = pending.columns(k + 1, fs.len() - k - 1).into_owned();
        let updated = &factor * rest;
        pending.columns_mut(k + 1, fs.len() - k - 1).copy_from(&updated);
        operator = &factor * operator;
        factors.push(factor);
    }
    CorrectionOperator { operator, factors }
}

/// Parseval frame `(R x_n)` for a frame whose first `N` vectors are
/// orthonormal; `R` is the correction operator of the remaining vectors.
pub fn orthobasis_extension_parseval(f: &Frame, tol: &Tolerances) -> Result<Frame> {
    let n = f.dim();
    let head: Vec<usize> = (1..=n).collect();
    let b = f.columns(&head);
    if distance_from_identity(&(b.adjoint() * &b)) > tol.eq_abs {
        return Err(FrameError::FirstBlockNotOrthonormal);
    }
    if f.len() == n {
        return Ok(f.clone());
    }
    let tail: Vec<usize> = (n + 1..=f.len()).collect();
    let tail = VectorFamily::from_matrix(f.columns(&tail))?;
    let r = correction_operator(&tail);
    Ok(f.mapped(r.operator()))
}

fn require_parseval(f: &Frame, tol: &Tolerances) -> Result<()> {
    let deviation = distance_from_identity(&frame_operator(f));
    if deviation > tol.eq_abs {
        return Err(FrameError::NotParseval { deviation });
    }
    Ok(())
}

/// Rotates the unit vector `x_i` against the first shorter vector `x_j`:
/// `x_i' = cos(phi) x_i + sin(phi) x_j`, `x_j' = -sin(phi) x_i + cos(phi) x_j`.
pub fn paulsen_rotation(f: &Frame, i: usize, phi: f64, tol: &Tolerances) -> Result<Frame> {
    if !(phi > 0.0 && phi < std::f64::consts::FRAC_PI_2) {
        return Err(FrameError::InvalidArgument(format!(
            "rotation angle {phi} outside the open interval (0, pi/2)"
        )));
    }
    if i == 0 || i > f.len() {
        return Err(FrameError::BadIndexSet(format!("index {i} outside 1..={}", f.len())));
    }
    require_parseval(f, tol)?;
    let norms = f.norms();
    if (norms[i - 1] - 1.0).abs() > tol.eq_abs {
        return Err(FrameError::NotUnitNorm { index: i, norm: norms[i - 1] });
    }
    let j = (1..=f.len())
        .find(|&j| j != i && norms[j - 1] < 1.0 - tol.rank_rel)
        .ok_or(FrameError::NoPartner)?;
    let (s, c) = phi.sin_cos();
    let (xi, xj) = (f.vector(i), f.vector(j));
    let mut x = f.synthesis_matrix().clone();
    x.set_column(i - 1, &(&xi * Scalar::new(c, 0.0) + &xj * Scalar::new(s, 0.0)));
    x.set_column(j - 1, &(&xj * Scalar::new(c, 0.0) - &xi * Scalar::new(s, 0.0)));
    Frame::from_matrix(x, tol)
}

/// Output of [`make_1_robust`].
#[derive(Debug, Clone, PartialEq)]
pub struct RobustOutcome {
    pub frame: Frame,
    pub rotations: usize,
}

/// Applies quarter-pi rotations to the first unit-norm vector until every
/// vector is strictly shorter than 1.
pub fn make_1_robust(f: &Frame, tol: &Tolerances) -> Result<RobustOutcome> {
    require_parseval(f, tol)?;
    if f.norms().iter().all(|&v| v >= 1.0 - tol.rank_rel) {
        return Err(FrameError::IsOrthonormalBasis);
    }
    let mut frame = f.clone();
    let mut rotations = 0;
    loop {
        let Some(i) = frame.norms().iter().position(|&v| v >= 1.0 - tol.rank_rel) else {
            return Ok(RobustOutcome { frame, rotations });
        };
        if rotations == f.len() {
            return Err(FrameError::RotationStalled { steps: rotations });
        }
        frame = paulsen_rotation(&frame, i + 1, std::f64::consts::FRAC_PI_4, tol)?;
        rotations += 1;
    }
}
