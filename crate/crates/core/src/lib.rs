//! Finite-dimensional frame theory.
//!
//! The crate covers four related pieces of machinery:
//!
//! * dual frames that vanish on a known set of erased coefficient indices, so a
//!   signal can be synthesized exactly without the lost coefficients
//!   ([`erasure`], [`inverse`]);
//! * spark, m-robustness and the generator-matrix description of full spark
//!   frames ([`spark`]);
//! * symmetric integer totally positive matrices built from two seed sequences
//!   ([`total_positivity`]);
//! * conversion of frames into Parseval frames, either through the positive
//!   inverse square root of the frame operator or through a product of rank-one
//!   corrections that preserves full spark ([`parseval`]).
//!
//! All public indices are 1-based. Scalars are complex doubles; inner products
//! are linear in the first argument.

pub mod erasure;
pub mod error;
pub mod frame;
pub mod inverse;
pub mod linalg;
pub mod parseval;
pub mod spark;
pub mod total_positivity;

pub use erasure::{
    compensating_dual, compensating_dual_operator, diagnose_gramian, diagnose_operator,
    diagnose_span, compensating_dual_system, mrc_by_gramian,
    mrc_by_operator, mrc_by_span, mrc_witness, reconstruct, single_erasure_dual,
    CompensatingDual, CorrectionCoefficients, DualAlgorithm, ErasureSet, MrcCriterion,
    MrcDiagnosis,
};
pub use error::{FrameError, Result};
pub use frame::{
    analysis, canonical_dual, cross_gramian, frame_bounds, frame_operator, is_dual_pair,
    is_parseval, synthesis, DualFrame, Frame, VectorFamily,
};
pub use inverse::{chain_inverse, closed_form_inverse, rank_one_inverse};
pub use linalg::{
    hermitian_inv_sqrt, minor_det, numeric_rank, solve_linear, Matrix, Scalar, Tolerances,
    Vector,
};
pub use parseval::{
    associated_parseval, correction_operator, inv_sqrt_rank_one, make_1_robust,
    orthobasis_extension_parseval, paulsen_rotation, CorrectionOperator, RobustOutcome,
};
pub use spark::{
    full_spark_from_generator, generator_from_full_spark, is_m_robust, norm_criterion_single,
    parseval_1robust, spark, GeneratorCheck, GeneratorMatrix, SparkReport,
};
pub use total_positivity::{
    build_tp, first_singular_submatrix, is_totally_nonsingular, is_totally_positive, pascal, SeedSequences, TpMatrix,
};

/// Upper bound on the number of index subsets any brute-force enumeration visits.
pub const ENUMERATION_CAP: u128 = 1_000_000;
