use std::fmt;

use thiserror::Error;

/// Which of the equivalent minimal-redundancy tests rejected an erasure set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrcCriterionKind {
    Span,
    Gramian,
    Operator,
    SingleErasure,
    Witness,
}

impl fmt::Display for MrcCriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MrcCriterionKind::Span => "span",
            MrcCriterionKind::Gramian => "gramian",
            MrcCriterionKind::Operator => "operator",
            MrcCriterionKind::SingleErasure => "single-erasure",
            MrcCriterionKind::Witness => "witness",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bad index set: {0}")]
    BadIndexSet(String),

    #[error("non-finite value in input")]
    NonFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular matrix: pivot {pivot:e} below threshold {threshold:e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("vectors do not span C^{dim} (numeric rank {rank})")]
    NotAFrame { dim: usize, rank: usize },

    #[error("minimal redundancy condition violated ({criterion} test, smallest singular value {sigma_min:e})")]
    MrcViolated {
        criterion: MrcCriterionKind,
        sigma_min: f64,
    },

    #[error("families are not a dual pair (reconstruction residual {residual:e})")]
    NotADual { residual: f64 },

    #[error("I - theta_(y,x) is not invertible (|1 - <y,x>| = {gap:e})")]
    NotInvertible { gap: f64 },

    #[error("prefix {prefix} of the rank-one sum is not invertible")]
    PrefixNotInvertible { prefix: usize },

    #[error("enumeration of {count} subsets exceeds the cap of {cap}")]
    TooManySubsets { count: u128, cap: u128 },

    #[error("frame is not full spark (dependent subset {witness:?})")]
    NotFullSpark { witness: Vec<usize> },

    #[error("the first N vectors do not form a basis")]
    NotCanonicalOrder,

    #[error("generator has a singular square submatrix at rows {rows:?}, columns {cols:?}")]
    GeneratorNotTotallyNonsingular { rows: Vec<usize>, cols: Vec<usize> },

    #[error("frame is not Parseval (max deviation of frame operator from I: {deviation:e})")]
    NotParseval { deviation: f64 },

    #[error("vector {index} does not have unit norm (norm {norm})")]
    NotUnitNorm { index: usize, norm: f64 },

    #[error("no partner vector with norm below 1")]
    NoPartner,

    #[error("frame is an orthonormal basis")]
    IsOrthonormalBasis,

    #[error("the first N vectors are not an orthonormal basis")]
    FirstBlockNotOrthonormal,

    #[error("rotation procedure did not terminate within {steps} steps")]
    RotationStalled { steps: usize },

    #[error("bad seed sequences: {0}")]
    BadSeeds(String),

    #[error("computed entry at ({row}, {col}) is not an integer")]
    IntegralityBroken { row: usize, col: usize },

    #[error("integer entry exceeds exactly representable range")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, FrameError>;
