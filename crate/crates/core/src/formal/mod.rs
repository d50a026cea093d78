//! Standard deformations of vertically graded ideals and checks on the
//! coefficients of their members.

mod corpus;
mod deform;
mod series;

pub use corpus::{
    inject_violation, random_deformation, random_model, run_case, run_corpus, CaseFailure,
    CorpusParams, CorpusReport,
};
pub use deform::{
    build_member, check_coefficient_membership, check_slicing, explicit_coefficient,
    formula_mismatch, membership_violation, Deformation, Violation, DEFAULT_X_DEGREE,
};
pub use series::{TruncSeries, XPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormalError {
    #[error("truncation order {trunc} is below the required {needed}")]
    TruncationTooSmall { trunc: u32, needed: u32 },
    #[error("y does not divide F_{alpha}")]
    PreconditionUnmet { alpha: u32 },
    #[error("a_{i}{j} has the monomial {monomial:?} outside its layer")]
    GeneratorOutsideLayer {
        i: usize,
        j: usize,
        monomial: Vec<u32>,
    },
    #[error("invalid deformation: {0}")]
    Invalid(String),
}
