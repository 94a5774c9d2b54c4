//! Exact field arithmetic (ℚ or 𝔽_p) and dense linear algebra.
//!
//! Every rank, solve and kernel computation in the crate goes through
//! [`ExactMatrix`]; there is no floating point anywhere.

mod matrix;
mod scalar;

pub use matrix::{ExactMatrix, Rref};
pub use scalar::{Field, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("unrecognised field `{0}` (use `q` or `fp:<prime>`)")]
    BadFieldSpec(String),
    #[error("denominator vanishes in the field")]
    ZeroDenominator,
}
