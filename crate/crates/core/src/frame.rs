//! Frames, their analysis/synthesis/frame operators and dual frames.

use std::ops::Deref;

use crate::erasure::ErasureSet;
use crate::error::{FrameError, Result};
use crate::linalg::{
    distance_from_identity, hermitian_eigen, is_finite_matrix, numeric_rank, solve_linear,
    Matrix, Tolerances, Vector,
};

/// An ordered family of `M >= 1` vectors in `C^N`, stored as the `N x M`
/// synthesis matrix (vector `n` is column `n`).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    synthesis: Matrix,
}

impl VectorFamily {
    pub fn from_matrix(synthesis: Matrix) -> Result<Self> {
        if synthesis.nrows() == 0 || synthesis.ncols() == 0 {
            return Err(FrameError::InvalidArgument(
                "a vector family needs N >= 1 and M >= 1".into(),
            ));
        }
        if !is_finite_matrix(&synthesis) {
            return Err(FrameError::NonFinite);
        }
        Ok(VectorFamily { synthesis })
    }

    pub fn from_vectors(vectors: &[Vector]) -> Result<Self> {
        let first = vectors.first().ok_or_else(|| {
            FrameError::InvalidArgument("a vector family needs at least one vector".into())
        })?;
        let dim = first.len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(FrameError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::from_matrix(Matrix::from_columns(vectors))
    }

    /// Convenience constructor from real vectors.
    pub fn from_real(vectors: &[&[f64]]) -> Result<Self> {
        let vs: Vec<Vector> = vectors.iter().map(|v| crate::linalg::real_vector(v)).collect();
        Self::from_vectors(&vs)
    }

    /// Dimension `N` of the ambient space.
    pub fn dim(&self) -> usize {
        self.synthesis.nrows()
    }

    /// Number of vectors `M`.
    pub fn len(&self) -> usize {
        self.synthesis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn synthesis_matrix(&self) -> &Matrix {
        &self.synthesis
    }

    /// Vector `n` (1-based).
    pub fn vector(&self, n: usize) -> Vector {
        assert!(n >= 1 && n <= self.len(), "vector index {n} out of range");
        self.synthesis.column(n - 1).into_owned()
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        self.synthesis.column_iter().map(|c| c.into_owned())
    }

    /// Columns at the given 1-based indices, in order.
    pub fn columns(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(self.dim(), indices.len(), |i, j| {
            self.synthesis[(i, indices[j] - 1)]
        })
    }

    pub fn norms(&self) -> Vec<f64> {
        self.synthesis.column_iter().map(|c| c.norm()).collect()
    }

    pub fn into_matrix(self) -> Matrix {
        self.synthesis
    }
}

/// A spanning family of `M >= N` vectors in `C^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    family: VectorFamily,
}

impl Frame {
    pub fn new(family: VectorFamily, tol: &Tolerances) -> Result<Self> {
        let rank = numeric_rank(family.synthesis_matrix(), tol);
        if rank < family.dim() {
            return Err(FrameError::NotAFrame {
                dim: family.dim(),
                rank,
            });
        }
        Ok(Frame { family })
    }

    pub fn from_matrix(synthesis: Matrix, tol: &Tolerances) -> Result<Self> {
        Frame::new(VectorFamily::from_matrix(synthesis)?, tol)
    }

    pub fn from_real(vectors: &[&[f64]], tol: &Tolerances) -> Result<Self> {
        Frame::new(VectorFamily::from_real(vectors)?, tol)
    }

    /// Wraps a family already known to span, e.g. the image of a frame under
    /// an invertible operator.
    pub(crate) fn new_unchecked(family: VectorFamily) -> Self {
        Frame { family }
    }

    pub fn family(&self) -> &VectorFamily {
        &self.family
    }

    pub fn into_family(self) -> VectorFamily {
        self.family
    }

    /// Excess `M - N`.
    pub fn excess(&self) -> usize {
        self.len() - self.dim()
    }

    /// The frame `(T x_n)` for a square operator `T` assumed invertible.
    pub(crate) fn mapped(&self, t: &Matrix) -> Frame {
        Frame::new_unchecked(VectorFamily {
            synthesis: t * self.synthesis_matrix(),
        })
    }
}

impl Deref for Frame {
    type Target = VectorFamily;

    fn deref(&self) -> &VectorFamily {
        &self.family
    }
}

impl AsRef<VectorFamily> for Frame {
    fn as_ref(&self) -> &VectorFamily {
        &self.family
    }
}

/// A frame together with the frame it reconstructs for:
/// `sum_n theta_{v_n, x_n} = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFrame {
    dual: Frame,
    primal: Frame,
}

impl DualFrame {
    /// Pairs `dual` with `primal`, checking the reconstruction identity.
    pub fn new(primal: Frame, dual: VectorFamily, tol: &Tolerances) -> Result<Self> {
        if !is_dual_pair(&primal, &dual, tol)? {
            let residual = dual_residual(&primal, &dual);
            return Err(FrameError::NotADual { residual });
        }
        Ok(DualFrame {
            dual: Frame::new_unchecked(dual),
            primal,
        })
    }

    pub(crate) fn new_unchecked(primal: Frame, dual: VectorFamily) -> Self {
        DualFrame {
            dual: Frame::new_unchecked(dual),
            primal,
        }
    }

    /// The dual vectors `(v_n)`.
    pub fn frame(&self) -> &Frame {
        &self.dual
    }

    pub fn primal(&self) -> &Frame {
        &self.primal
    }

    /// `max |sum_n theta_{v_n, x_n} - I|`.
    pub fn residual(&self) -> f64 {
        dual_residual(&self.primal, &self.dual)
    }
}

impl Deref for DualFrame {
    type Target = VectorFamily;

    fn deref(&self) -> &VectorFamily {
        &self.dual
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(FrameError::DimensionMismatch { expected, found })
    }
}

/// Frame coefficients `(<x, x_n>)_n`.
pub fn analysis(f: &VectorFamily, x: &Vector) -> Result<Vector> {
    check_len(f.dim(), x.len())?;
    Ok(f.synthesis_matrix().adjoint() * x)
}

/// `sum_n c_n x_n`.
pub fn synthesis(f: &VectorFamily, c: &Vector) -> Result<Vector> {
    check_len(f.len(), c.len())?;
    Ok(f.synthesis_matrix() * c)
}

/// `U*U = sum_n theta_{x_n, x_n}`.
pub fn frame_operator(f: &VectorFamily) -> Matrix {
    let x = f.synthesis_matrix();
    let s = x * x.adjoint();
    (&s + s.adjoint()).scale(0.5)
}

/// Optimal frame bounds: extreme eigenvalues of the frame operator.
pub fn frame_bounds(f: &Frame) -> (f64, f64) {
    let (values, _) = hermitian_eigen(&frame_operator(f), &Tolerances::default())
        .expect("frame operator is Hermitian by construction");
    (values[0], values[values.len() - 1])
}

/// `y_n = (U*U)^{-1} x_n`.
pub fn canonical_dual(f: &Frame) -> Result<DualFrame> {
    let tol = Tolerances::default();
    let y = solve_linear(&frame_operator(f), f.synthesis_matrix(), &tol)?;
    Ok(DualFrame::new_unchecked(
        f.clone(),
        VectorFamily { synthesis: y },
    ))
}

pub fn is_parseval(f: &VectorFamily, tol: &Tolerances) -> bool {
    distance_from_identity(&frame_operator(f)) <= tol.eq_abs
}

/// `k x k` matrix with entry `(i, j) = <z_{n_j}, x_{n_i}>` over `E = {n_1 < ... < n_k}`.
pub fn cross_gramian(f: &VectorFamily, z: &VectorFamily, e: &ErasureSet) -> Result<Matrix> {
    check_len(f.dim(), z.dim())?;
    check_len(f.len(), z.len())?;
    e.check_bound(f.len())?;
    let xe = f.columns(e.indices());
    let ze = z.columns(e.indices());
    Ok(xe.adjoint() * ze)
}

fn dual_residual(f: &VectorFamily, g: &VectorFamily) -> f64 {
    distance_from_identity(&(g.synthesis_matrix() * f.synthesis_matrix().adjoint()))
}

/// Whether `sum_n theta_{g_n, f_n} = I` within `eq_abs`.
pub fn is_dual_pair(f: &VectorFamily, g: &VectorFamily, tol: &Tolerances) -> Result<bool> {
    check_len(f.dim(), g.dim())?;
    check_len(f.len(), g.len())?;
    Ok(dual_residual(f, g) <= tol.eq_abs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs, real_vector, Scalar};

    fn c(re: f64) -> Scalar {
        Scalar::new(re, 0.0)
    }

    pub(crate) fn tight_example() -> Frame {
        Frame::from_real(
            &[&[0.5, 0.0], &[0.0, 0.5], &[0.5, -0.5], &[0.5, 0.5]],
            &Tolerances::default(),
        )
        .unwrap()
    }

    pub(crate) fn parseval_example() -> Frame {
        let s = 0.5f64.sqrt();
        Frame::from_real(
            &[
                &[1.0 / 3.0, 0.0, 0.0],
                &[2.0 / 3.0, -s, 0.0],
                &[2.0 / 3.0, s, 0.0],
                &[0.0, 0.0, 1.0],
            ],
            &Tolerances::default(),
        )
        .unwrap()
    }

    fn close(a: &Vector, b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, &y)| (x - c(y)).norm() < eps)
    }

    #[test]
    fn analysis_examples() {
        let tol = Tolerances::default();
        let basis = Frame::from_matrix(identity(3), &tol).unwrap();
        let x = real_vector(&[1.0, 2.0, 3.0]);
        assert!(close(&analysis(&basis, &x).unwrap(), &[1.0, 2.0, 3.0], 1e-15));
        let coeffs = analysis(&tight_example(), &real_vector(&[1.0, 0.0])).unwrap();
        assert!(close(&coeffs, &[0.5, 0.0, 0.5, 0.5], 1e-15));
        assert!(analysis(&basis, &real_vector(&[1.0])).is_err());
    }

    #[test]
    fn analysis_respects_complex_inner_product() {
        // <x, x_n> is conjugate-linear in the frame vector.
        let tol = Tolerances::default();
        let v = Vector::from_vec(vec![Scalar::new(0.0, 1.0), c(0.0)]);
        let f = Frame::new(
            VectorFamily::from_vectors(&[v, real_vector(&[0.0, 1.0])]).unwrap(),
            &tol,
        )
        .unwrap();
        let coeffs = analysis(&f, &real_vector(&[1.0, 0.0])).unwrap();
        assert_eq!(coeffs[0], Scalar::new(0.0, -1.0));
    }

    #[test]
    fn synthesis_examples() {
        let f = tight_example();
        let e3 = real_vector(&[0.0, 0.0, 1.0, 0.0]);
        assert!(close(&synthesis(&f, &e3).unwrap(), &[0.5, -0.5], 1e-15));
        let ones = real_vector(&[1.0; 4]);
        assert!(close(&synthesis(&f, &ones).unwrap(), &[1.5, 0.5], 1e-15));
        let x = real_vector(&[0.3, -1.7]);
        let lhs = synthesis(&f, &analysis(&f, &x).unwrap()).unwrap();
        let rhs = frame_operator(&f) * &x;
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn frame_operator_examples() {
        let s = frame_operator(&tight_example());
        assert!(max_abs(&(s - identity(2).scale(0.75))) < 1e-15);
        let tol = Tolerances::default();
        let basis = Frame::from_matrix(identity(3), &tol).unwrap();
        assert!(max_abs(&(frame_operator(&basis) - identity(3))) < 1e-15);
        // [I | T] has frame operator I + T T*.
        let t = crate::linalg::real_matrix(3, 2, &[1.0, 1.0, 1.0, 2.0, 1.0, 3.0]);
        let mut full = Matrix::zeros(3, 5);
        full.view_mut((0, 0), (3, 3)).copy_from(&identity(3));
        full.view_mut((0, 3), (3, 2)).copy_from(&t);
        let f = Frame::from_matrix(full, &tol).unwrap();
        let expected = identity(3) + &t * t.adjoint();
        assert!(max_abs(&(frame_operator(&f) - expected)) < 1e-14);
    }

    #[test]
    fn bounds_examples() {
        let (a, b) = frame_bounds(&tight_example());
        assert!((a - 0.75).abs() < 1e-14 && (b - 0.75).abs() < 1e-14);
        let (a, b) = frame_bounds(&parseval_example());
        assert!((a - 1.0).abs() < 1e-14 && (b - 1.0).abs() < 1e-14);
        let tol = Tolerances::default();
        let mut doubled = Matrix::zeros(2, 4);
        doubled.view_mut((0, 0), (2, 2)).copy_from(&identity(2));
        doubled.view_mut((0, 2), (2, 2)).copy_from(&identity(2));
        let (a, b) = frame_bounds(&Frame::from_matrix(doubled, &tol).unwrap());
        assert!((a - 2.0).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);
    }

    #[test]
    fn canonical_dual_of_tight_example() {
        let d = canonical_dual(&tight_example()).unwrap();
        assert!(close(&d.vector(1), &[2.0 / 3.0, 0.0], 1e-14));
        assert!(close(&d.vector(3), &[2.0 / 3.0, -2.0 / 3.0], 1e-14));
        assert!(d.residual() < 1e-14);
    }

    #[test]
    fn canonical_dual_of_parseval_is_itself() {
        let f = parseval_example();
        let d = canonical_dual(&f).unwrap();
        assert!(max_abs(&(d.synthesis_matrix() - f.synthesis_matrix())) < 1e-14);
    }

    #[test]
    fn parseval_checks() {
        let tol = Tolerances::default();
        assert!(is_parseval(&parseval_example(), &tol));
        assert!(!is_parseval(&tight_example(), &tol));
        assert!(is_parseval(&Frame::from_matrix(identity(3), &tol).unwrap(), &tol));
    }

    #[test]
    fn cross_gramian_examples() {
        let f = tight_example();
        let d = canonical_dual(&f).unwrap();
        let g = cross_gramian(&f, &d, &ErasureSet::new(vec![1, 2]).unwrap()).unwrap();
        let expected = identity(2).scale(1.0 / 3.0);
        assert!(max_abs(&(g - expected)) < 1e-14);

        let f = VectorFamily::from_real(&[&[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let z = VectorFamily::from_real(&[&[1.0, 0.0], &[0.0, 0.0], &[0.0, 1.0]]).unwrap();
        let g = cross_gramian(&f, &z, &ErasureSet::new(vec![1]).unwrap()).unwrap();
        assert_eq!(g[(0, 0)], c(1.0));

        let bad = ErasureSet::new(vec![4]).unwrap();
        assert!(matches!(cross_gramian(&f, &z, &bad), Err(FrameError::BadIndexSet(_))));
    }

    #[test]
    fn dual_pair_examples() {
        let tol = Tolerances::default();
        let f = tight_example();
        let d = canonical_dual(&f).unwrap();
        assert!(is_dual_pair(&f, &d, &tol).unwrap());
        let v = VectorFamily::from_real(&[&[0.0, 0.0], &[0.0, 0.0], &[1.0, -1.0], &[1.0, 1.0]])
            .unwrap();
        assert!(is_dual_pair(&f, &v, &tol).unwrap());
        assert!(!is_dual_pair(&f, &f, &tol).unwrap());
        assert!(DualFrame::new(f.clone(), f.family().clone(), &tol).is_err());
        let short = VectorFamily::from_real(&[&[1.0, 0.0]]).unwrap();
        assert!(is_dual_pair(&f, &short, &tol).is_err());
    }

    #[test]
    fn frame_rejects_non_spanning() {
        let tol = Tolerances::default();
        let err = Frame::from_real(&[&[1.0, 0.0], &[2.0, 0.0]], &tol).unwrap_err();
        assert_eq!(err, FrameError::NotAFrame { dim: 2, rank: 1 });
        assert!(VectorFamily::from_real(&[&[1.0, 0.0], &[1.0]]).is_err());
        assert!(VectorFamily::from_real(&[&[f64::INFINITY]]).is_err());
    }
}
