//! Exact dense linear algebra over prime fields.
//!
//! Gaussian elimination with first-nonzero pivoting; no rounding ever occurs.
//! A fraction-free integer path in [`rational`] gives an independent rank
//! computation over `Q` for small instances.

mod field;
mod galois;
mod matrix;
pub mod rational;

pub use field::{ff_inv, is_prime, next_prime, Field, FieldElement, PrimeField};
pub use galois::GaloisField;
pub use matrix::{kernel_basis, kernel_in, rank, rank_in, rref_in, DenseMatrix};
pub use rational::{rank_rational, rank_rational_i64};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is out of the supported range")]
    ModulusTooLarge(u64),
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
}
