//! Dual frames that vanish on a set of erased coefficient indices.
//!
//! An erasure set `E` satisfies the minimal redundancy condition (MRC) when the
//! surviving vectors `{x_n : n not in E}` still span. Three equivalent tests are
//! provided (span, cross-Gramian, operator) plus a sufficient test through an
//! arbitrary dual. When the MRC holds, a dual `(v_n)` with `v_n = 0` on `E`
//! is built from the canonical dual `(y_n)` by any of five algorithms:
//!
//! * `System`: solve `(G - I) alpha_n = (<y_n, x_{n_i}>)_i` once per survivor
//!   with a single factorization of `G - I`, `G_ij = <y_{n_j}, x_{n_i}>`, then
//!   `v_n = y_n - sum_i alpha_ni y_{n_i}`;
//! * `Operator`: `v_n = (I - sum_i theta_{y_{n_i}, x_{n_i}})^{-1} y_n`;
//! * `Single`: the closed form for one erasure;
//! * `Chain` / `Closed`: the operator route with the inverse computed by
//!   [`chain_inverse`] or [`closed_form_inverse`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use crate::error::MrcCriterionKind as MrcCriterion;
use crate::error::{FrameError, Result};
use crate::frame::{canonical_dual, cross_gramian, is_dual_pair, DualFrame, Frame, VectorFamily};
use crate::inverse::{chain_inverse, closed_form_inverse};
use crate::linalg::{
    check_index_set, identity, inner, numeric_rank, shifted_invertibility, Lu, Matrix, Scalar,
    Tolerances, Vector,
};

/// Strictly increasing 1-based positions of lost coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ErasureSet {
    indices: Vec<usize>,
}

impl ErasureSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        check_index_set(&indices, usize::MAX, "erasure")?;
        Ok(ErasureSet { indices })
    }

    /// Sorts the indices first; duplicates are still rejected.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        Self::new(indices)
    }

    pub fn empty() -> Self {
        ErasureSet::default()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.indices.binary_search(&n).is_ok()
    }

    /// Position `i` (1-based) of `n` within the set.
    pub fn position(&self, n: usize) -> Option<usize> {
        self.indices.binary_search(&n).ok().map(|p| p + 1)
    }

    /// Surviving indices `1..=m` not in the set.
    pub fn complement(&self, m: usize) -> Vec<usize> {
        (1..=m).filter(|n| !self.contains(*n)).collect()
    }

    /// Errors unless every index is at most `m`.
    pub fn check_bound(&self, m: usize) -> Result<()> {
        match self.indices.last() {
            Some(&last) if last > m => Err(FrameError::BadIndexSet(format!(
                "erasure index {last} exceeds frame length {m}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ErasureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, n) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "}}")
    }
}

/// The coefficients `alpha_n = (alpha_n1, ..., alpha_nk)` for surviving `n`.
/// Rows for erased `n` are the Kronecker pattern and are not stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CorrectionCoefficients {
    rows: BTreeMap<usize, Vector>,
    erased: ErasureSet,
}

impl CorrectionCoefficients {
    /// `alpha_n` for a surviving index `n`.
    pub fn get(&self, n: usize) -> Option<&Vector> {
        self.rows.get(&n)
    }

    /// `alpha_ni`, including `delta_ni` for erased `n` (`i` is 1-based).
    pub fn coefficient(&self, n: usize, i: usize) -> Option<Scalar> {
        if i == 0 || i > self.erased.len() {
            return None;
        }
        if let Some(p) = self.erased.position(n) {
            let one = if p == i { 1.0 } else { 0.0 };
            return Some(Scalar::new(one, 0.0));
        }
        self.rows.get(&n).map(|row| row[i - 1])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.rows.iter().map(|(n, v)| (*n, v))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// A dual frame vanishing (bit-exactly) on the erased indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CompensatingDual {
    dual: DualFrame,
    erased: ErasureSet,
    alphas: CorrectionCoefficients,
}

impl CompensatingDual {
    pub fn dual(&self) -> &DualFrame {
        &self.dual
    }

    pub fn erased(&self) -> &ErasureSet {
        &self.erased
    }

    pub fn alphas(&self) -> &CorrectionCoefficients {
        &self.alphas
    }

    /// Dual vector `v_n` (1-based).
    pub fn vector(&self, n: usize) -> Vector {
        self.dual.vector(n)
    }

    pub fn synthesis_matrix(&self) -> &Matrix {
        self.dual.synthesis_matrix()
    }
}

/// Algorithm used to build a [`CompensatingDual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DualAlgorithm {
    System,
    #[default]
    Operator,
    Single,
    Chain,
    Closed,
}

impl DualAlgorithm {
    pub const ALL: [DualAlgorithm; 5] = [
        DualAlgorithm::System,
        DualAlgorithm::Operator,
        DualAlgorithm::Single,
        DualAlgorithm::Chain,
        DualAlgorithm::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualAlgorithm::System => "system",
            DualAlgorithm::Operator => "operator",
            DualAlgorithm::Single => "single",
            DualAlgorithm::Chain => "chain",
            DualAlgorithm::Closed => "closed",
        }
    }
}

impl fmt::Display for DualAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualAlgorithm {
    type Err = FrameError;

    fn from_str(s: &str) -> Result<Self> {
        DualAlgorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| FrameError::InvalidArgument(format!("unknown algorithm '{s}'")))
    }
}

/// Outcome of one MRC test: whether it holds and the smallest singular value
/// of the matrix that was tested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MrcDiagnosis {
    pub criterion: MrcCriterion,
    pub holds: bool,
    pub sigma_min: f64,
}

impl MrcDiagnosis {
    pub fn into_result(self) -> Result<()> {
        if self.holds {
            Ok(())
        } else {
            Err(FrameError::MrcViolated {
                criterion: self.criterion,
                sigma_min: self.sigma_min,
            })
        }
    }
}

fn erased_operator(f: &Frame, y: &VectorFamily, e: &ErasureSet) -> Matrix {
    let xe = f.columns(e.indices());
    let ye = y.columns(e.indices());
    identity(f.dim()) - ye * xe.adjoint()
}

pub fn diagnose_span(f: &Frame, e: &ErasureSet, tol: &Tolerances) -> Result<MrcDiagnosis> {
    e.check_bound(f.len())?;
    let survivors = e.complement(f.len());
    let sub = f.columns(&survivors);
    let rank = numeric_rank(&sub, tol);
    let s = crate::linalg::singular_values(&sub);
    let sigma_min = if survivors.len() >= f.dim() { s.last().copied().unwrap_or(0.0) } else { 0.0 };
    Ok(MrcDiagnosis {
        criterion: MrcCriterion::Span,
        holds: rank == f.dim(),
        sigma_min,
    })
}

pub fn diagnose_gramian(f: &Frame, e: &ErasureSet, tol: &Tolerances) -> Result<MrcDiagnosis> {
    e.check_bound(f.len())?;
    if e.is_empty() {
        return Ok(MrcDiagnosis {
            criterion: MrcCriterion::Gramian,
            holds: true,
            sigma_min: f64::INFINITY,
        });
    }
    let y = canonical_dual(f)?;
    let g = cross_gramian(f, &y, e)? - identity(e.len());
    let (holds, sigma_min) = shifted_invertibility(&g, tol);
    Ok(MrcDiagnosis {
        criterion: MrcCriterion::Gramian,
        holds,
        sigma_min,
    })
}

pub fn diagnose_operator(f: &Frame, e: &ErasureSet, tol: &Tolerances) -> Result<MrcDiagnosis> {
    e.check_bound(f.len())?;
    let y = canonical_dual(f)?;
    let (holds, sigma_min) = shifted_invertibility(&erased_operator(f, &y, e), tol);
    Ok(MrcDiagnosis {
        criterion: MrcCriterion::Operator,
        holds,
        sigma_min,
    })
}

/// MRC by rank of the surviving vectors.
pub fn mrc_by_span(f: &Frame, e: &ErasureSet, tol: &Tolerances) -> Result<bool> {
    Ok(diagnose_span(f, e, tol)?.holds)
}

/// MRC by invertibility of the canonical cross-Gramian minus the identity.
pub fn mrc_by_gramian(f: &Frame, e: &ErasureSet, tol: &Tolerances) -> Result<bool> {
    Ok(diagnose_gramian(f, e, tol)?.holds)
}

/// MRC by invertibility of `I - sum_i theta_{y_{n_i}, x_{n_i}}`.
pub fn mrc_by_operator(f: &Frame, e: &ErasureSet, tol: &Tolerances) -> Result<bool> {
    Ok(diagnose_operator(f, e, tol)?.holds)
}

/// Sufficient MRC test through an arbitrary dual `z` of `f`.
///
/// A `true` result implies the MRC; `false` does not imply its failure.
pub fn mrc_witness(
    f: &Frame,
    z: &VectorFamily,
    e: &ErasureSet,
    tol: &Tolerances,
) -> Result<bool> {
    if !is_dual_pair(f, z, tol)? {
        let residual = crate::linalg::distance_from_identity(
            &(z.synthesis_matrix() * f.synthesis_matrix().adjoint()),
        );
        return Err(FrameError::NotADual { residual });
    }
    e.check_bound(f.len())?;
    if e.is_empty() {
        return Ok(true);
    }
    let g = cross_gramian(f, z, e)? - identity(e.len());
    Ok(shifted_invertibility(&g, tol).0)
}

/// Assembles the dual from survivor vectors, zeroing erased columns exactly.
fn assemble(
    f: &Frame,
    e: &ErasureSet,
    survivors: &[usize],
    survivor_vectors: &Matrix,
    alphas: BTreeMap<usize, Vector>,
) -> CompensatingDual {
    let mut v = Matrix::zeros(f.dim(), f.len());
    for (col, &n) in survivors.iter().enumerate() {
        v.set_column(n - 1, &survivor_vectors.column(col));
    }
    let family = VectorFamily::from_matrix(v).expect("dual shares the frame's shape");
    CompensatingDual {
        dual: DualFrame::new_unchecked(f.clone(), family),
        erased: e.clone(),
        alphas: CorrectionCoefficients {
            rows: alphas,
            erased: e.clone(),
        },
    }
}

/// `alpha_n = -(<v_n, x_{n_i}>)_i` for each survivor.
fn back_fill_alphas(f: &Frame, e: &ErasureSet, survivors: &[usize], vs: &Matrix) -> BTreeMap<usize, Vector> {
    let xe = f.columns(e.indices());
    let coeffs = -(xe.adjoint() * vs);
    survivors
        .iter()
        .enumerate()
        .map(|(col, &n)| (n, coeffs.column(col).into_owned()))
        .collect()
}

fn canonical_as_compensating(f: &Frame, e: &ErasureSet) -> Result<CompensatingDual> {
    let y = canonical_dual(f)?;
    let survivors = e.complement(f.len());
    Ok(assemble(f, e, &survivors, y.synthesis_matrix(), BTreeMap::new()))
}

/// Dual via the `k x k` system, factored once for all survivors.
pub fn compensating_dual_system(
    f: &Frame,
    e: &ErasureSet,
    tol: &Tolerances,
) -> Result<CompensatingDual> {
    e.check_bound(f.len())?;
    if e.is_empty() {
        return canonical_as_compensating(f, e);
    }
    let y = canonical_dual(f)?;
    let g = cross_gramian(f, &y, e)? - identity(e.len());
    let (holds, sigma_min) = shifted_invertibility(&g, tol);
    let violated = FrameError::MrcViolated {
        criterion: MrcCriterion::Gramian,
        sigma_min,
    };
    if !holds {
        return Err(violated);
    }
    let lu = Lu::factor(&g, tol).map_err(|_| violated.clone())?;

    let survivors = e.complement(f.len());
    let xe = f.columns(e.indices());
    let ye = y.columns(e.indices());
    let ys = y.columns(&survivors);
    // Column n of the right-hand side is (<y_n, x_{n_i}>)_i.
    let rhs = xe.adjoint() * &ys;
    let alpha = lu.solve(&rhs)?;
    let vs = &ys - &ye * &alpha;
    let alphas = survivors
        .iter()
        .enumerate()
        .map(|(col, &n)| (n, alpha.column(col).into_owned()))
        .collect();
    Ok(assemble(f, e, &survivors, &vs, alphas))
}

/// Dual via `v_n = (I - V_E* U_E)^{-1} y_n`.
pub fn compensating_dual_operator(
    f: &Frame,
    e: &ErasureSet,
    tol: &Tolerances,
) -> Result<CompensatingDual> {
    e.check_bound(f.len())?;
    if e.is_empty() {
        return canonical_as_compensating(f, e);
    }
    let y = canonical_dual(f)?;
    let r = erased_operator(f, &y, e);
    let (holds, sigma_min) = shifted_invertibility(&r, tol);
    let violated = FrameError::MrcViolated {
        criterion: MrcCriterion::Operator,
        sigma_min,
    };
    if !holds {
        return Err(violated);
    }
    let lu = Lu::factor(&r, tol).map_err(|_| violated.clone())?;
    let survivors = e.complement(f.len());
    let vs = lu.solve(&y.columns(&survivors))?;
    let alphas = back_fill_alphas(f, e, &survivors, &vs);
    Ok(assemble(f, e, &survivors, &vs, alphas))
}

/// Closed-form dual for a single erasure at `m` (1-based):
/// `v_n = y_n + <y_n, x_m> / (1 - <y_m, x_m>) y_m`.
pub fn single_erasure_dual(f: &Frame, m: usize, tol: &Tolerances) -> Result<CompensatingDual> {
    let e = ErasureSet::new(vec![m])?;
    e.check_bound(f.len())?;
    let y = canonical_dual(f)?;
    let xm = f.vector(m);
    let ym = y.vector(m);
    let gap = Scalar::new(1.0, 0.0) - inner(&ym, &xm);
    if gap.norm() <= tol.rank_rel {
        return Err(FrameError::MrcViolated {
            criterion: MrcCriterion::SingleErasure,
            sigma_min: gap.norm(),
        });
    }
    let survivors = e.complement(f.len());
    let mut vs = Matrix::zeros(f.dim(), survivors.len());
    let mut alphas = BTreeMap::new();
    for (col, &n) in survivors.iter().enumerate() {
        let yn = y.vector(n);
        let alpha = -inner(&yn, &xm) / gap;
        vs.set_column(col, &(&yn - &ym * alpha));
        alphas.insert(n, Vector::from_element(1, alpha));
    }
    Ok(assemble(f, &e, &survivors, &vs, alphas))
}

fn compensating_dual_via_inverse(
    f: &Frame,
    e: &ErasureSet,
    tol: &Tolerances,
    chain: bool,
) -> Result<CompensatingDual> {
    e.check_bound(f.len())?;
    if e.is_empty() {
        return canonical_as_compensating(f, e);
    }
    let y = canonical_dual(f)?;
    let diagnosis = diagnose_operator(f, e, tol)?;
    diagnosis.into_result()?;
    let xs: Vec<Vector> = e.indices().iter().map(|&n| f.vector(n)).collect();
    let ys: Vec<Vector> = e.indices().iter().map(|&n| y.vector(n)).collect();
    let violated = |_| FrameError::MrcViolated {
        criterion: MrcCriterion::Operator,
        sigma_min: diagnosis.sigma_min,
    };
    let inverse = if chain {
        chain_inverse(&xs, &ys, tol).map_err(violated)?
    } else {
        closed_form_inverse(&xs, &ys, tol).map_err(violated)?
    };
    let survivors = e.complement(f.len());
    let vs = inverse * y.columns(&survivors);
    let alphas = back_fill_alphas(f, e, &survivors, &vs);
    Ok(assemble(f, e, &survivors, &vs, alphas))
}

/// Builds the compensating dual with the chosen algorithm.
///
/// `Single` accepts at most one erased index.
pub fn compensating_dual(
    f: &Frame,
    e: &ErasureSet,
    algorithm: DualAlgorithm,
    tol: &Tolerances,
) -> Result<CompensatingDual> {
    match algorithm {
        DualAlgorithm::System => compensating_dual_system(f, e, tol),
        DualAlgorithm::Operator => compensating_dual_operator(f, e, tol),
        DualAlgorithm::Single => match e.indices() {
            [] => {
                e.check_bound(f.len())?;
                canonical_as_compensating(f, e)
            }
            [m] => single_erasure_dual(f, *m, tol),
            _ => Err(FrameError::InvalidArgument(format!(
                "the single-erasure algorithm needs |E| <= 1, got |E| = {}",
                e.len()
            ))),
        },
        DualAlgorithm::Chain => compensating_dual_via_inverse(f, e, tol, true),
        DualAlgorithm::Closed => compensating_dual_via_inverse(f, e, tol, false),
    }
}

/// `sum_{n not in E} c_n v_n`; entries of `coeffs` at erased positions are
/// never read.
pub fn reconstruct(d: &CompensatingDual, coeffs: &Vector) -> Result<Vector> {
    let m = d.dual.len();
    if coeffs.len() != m {
        return Err(FrameError::DimensionMismatch {
            expected: m,
            found: coeffs.len(),
        });
    }
    let v = d.synthesis_matrix();
    let mut out = Vector::zeros(v.nrows());
    for n in d.erased.complement(m) {
        let c = coeffs[n - 1];
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(FrameError::NonFinite);
        }
        out += v.column(n - 1) * c;
    }
    Ok(out)
}
