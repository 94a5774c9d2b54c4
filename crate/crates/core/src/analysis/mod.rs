//! Structural checks on built extensions and the builtin example catalog.

mod examples;
mod growth;
mod normal;
mod sequence;
mod symmetry;

pub use examples::{builtin, parse_params, ExampleSpec, EXAMPLE_NAMES};
pub use growth::{koszul_numeric_check, koszul_numeric_check_in, subalgebra_dims, subalgebra_dims_in};
pub use normal::{check_normal, enumerate_normal, projective_points, Enumeration, NormalCert};
pub use sequence::{exact_sequence_check, g_twist_check, g_twist_check_with};
pub use symmetry::{
    b1_isomorphism_check, bh_anti_automorphism_check, bh_automorphism_check, substitution_check,
};

use std::sync::Arc;

use thiserror::Error;

use crate::dedata::{DataError, EndoMap};
use crate::extension::BuildError;
use crate::ncalg::{AlgebraError, ReductionSystem};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("the DE-data is not trimmed (delta and tau must vanish)")]
    NotTrimmed,
    #[error("not a quadratic presentation: {0}")]
    NotQuadratic(String),
    #[error("non-homogeneous element: {0}")]
    NonHomogeneous(String),
    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

impl From<AlgebraError> for AnalysisError {
    fn from(e: AlgebraError) -> Self {
        AnalysisError::Data(DataError::Algebra(e))
    }
}

/// Smallest `n ≤ max_n` with `e^n` the identity, or `None` past the bound.
pub fn endo_order(e: &EndoMap, base: &Arc<ReductionSystem>, max_n: u32) -> Option<u32> {
    crate::dedata::endo_order(e, base, max_n)
}
