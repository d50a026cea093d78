//! Randomized exact rank decisions for generic configurations.
//!
//! Each trial draws supports (and a divisor) from a ChaCha stream derived
//! from `(seed, trial)`, builds the exact condition matrix over `F_p` and
//! records its kernel dimension. The minimum over trials bounds the generic
//! value from above, so a `MaximalRank` verdict is conclusive while
//! `Special` only means no trial refuted it.

mod cusp;
mod generic;
mod rational;

pub use cusp::{cuspidal_counterexample, CounterexampleReport};
pub use generic::{generic_h0, is_winning, replay_trial, sample_instance, trial_rng, Instance};
pub use rational::{verify_rational, RationalCheck};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{LinAlgError, PrimeField};
use crate::geom::{GeomError, ProjPoint};
use crate::schemes::{Configuration, SchemeError};

pub const VERDICT_SCHEMA: &str = "horace.verdict/1";

/// Environment variable overriding the default prime.
pub const PRIME_ENV: &str = "HORACE_PRIME";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("characteristic {0} must be an odd prime")]
    BadCharacteristic(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            trials: 3,
            prime: PrimeField::DEFAULT_PRIME,
            seed: 0,
        }
    }
}

impl OracleOptions {
    /// Defaults, with the prime taken from `HORACE_PRIME` when set.
    pub fn from_env() -> Self {
        let prime = std::env::var(PRIME_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(PrimeField::DEFAULT_PRIME);
        Self {
            prime,
            ..Self::default()
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    MaximalRank,
    Special,
}

/// The trial that reached the minimum kernel dimension, with enough data to
/// rebuild its matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    /// Divisor coefficients in `monomial_basis(N, a)` order.
    pub divisor: Vec<u64>,
    pub supports: Vec<ProjPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema: String,
    pub config: Configuration,
    pub d: u32,
    pub degree: u64,
    pub expected_h0: u64,
    pub computed_h0: u64,
    pub classification: Classification,
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    pub witness: Witness,
}

impl Verdict {
    pub fn is_maximal_rank(&self) -> bool {
        self.classification == Classification::MaximalRank
    }
}

/// `max(C(d + N, N) - deg Z, 0)`.
pub fn expected_h0(config: &Configuration, d: u32) -> u64 {
    crate::h0_projective(config.n(), d as i64).saturating_sub(config.degree())
}
