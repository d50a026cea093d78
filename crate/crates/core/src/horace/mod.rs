//! The reduction engine: candidates, derivatives, certification, curve base
//! cases and the schedule planner.

mod candidate;
mod certify;
mod curves;
mod derive;
mod plan;

pub use candidate::{make_candidate, Candidate};
pub use certify::{
    certify, default_base_degree, CertNode, Certificate, CertifyOptions, NodeKind, StepData,
    BASE_COLUMNS, CERTIFICATE_SCHEMA,
};
pub use curves::{
    collocation_rank, curve_threshold, fit_multiplicities, wronskian_check, wronskian_check_basis,
    Characteristic,
};
pub use derive::{
    derivation, derive, derive_concentrated, derive_second_special, free_order, Derivation,
    Derived, SecondSpecial, Strategy,
};
pub use plan::{
    a_of_m, alpha_for, plan_schedule, ExistentialConstant, ScheduleReport, ScheduleStep,
};

use thiserror::Error;

use crate::oracle::OracleError;
use crate::schemes::SchemeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoraceError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("not derivable: r + s = {r} + {s} exceeds t = {t}")]
    NotDerivable { r: u64, s: usize, t: usize },
    #[error("candidate violation: {0}")]
    CandidateViolation(String),
    #[error("trace degree {trace} exceeds the divisor bound {bound}")]
    TraceOverflow { trace: u64, bound: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certification failed at d = {}: {reason}", candidate.d())]
    CertificationFailed {
        candidate: Box<Candidate>,
        reason: String,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("replay mismatch: {0}")]
    Replay(String),
}
