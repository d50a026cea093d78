//! Zero-dimensional schemes built from fat points: components, their traces
//! and residuals on a divisor, and the linear conditions they impose.

mod component;
mod conditions;
mod config;
mod ideal;
mod model;

pub use component::{point_degree, Component, ComponentKind, TraceScheme};
pub use conditions::{component_rows, conditions_matrix};
pub use config::{Configuration, CONFIGURATION_SCHEMA};
pub use ideal::MonomialIdeal;
pub use model::VgModel;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),
    #[error("invalid monomial ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid vertically graded model: {0}")]
    InvalidModel(String),
    #[error("monomial ideal has infinite colength")]
    InfiniteColength,
    #[error("cannot slice layer {p} of a model of height {height}")]
    SliceOutOfRange { p: usize, height: usize },
    #[error("a free point has no trace on the divisor")]
    FreeComponent,
    #[error("component {index} has no assigned support")]
    UnassignedSupport { index: usize },
    #[error("support of component {index} is not a smooth point of the divisor")]
    SingularSupport { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("divisor degree must be at least 1, got {0}")]
    InvalidDivisorDegree(u32),
    #[error("vertically graded models require a hyperplane divisor")]
    ModelOnCurvedDivisor,
    #[error("divisor of degree {found_a} in P^{found_n} does not match configuration (P^{n}, degree {a})")]
    DivisorMismatch {
        n: usize,
        a: u32,
        found_n: usize,
        found_a: u32,
    },
    #[error("unsupported schema version {0:?}")]
    Schema(String),
}
