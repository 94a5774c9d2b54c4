//! Graded noncommutative polynomials, the deglex monomial order, rewriting
//! systems with memoized normal forms, ambiguity resolution and Hilbert
//! functions.

mod alphabet;
mod hilbert;
mod overlap;
mod poly;
mod rewrite;

pub use alphabet::{Alphabet, Letter, Monomial};
pub use hilbert::{series_quotient, series_quotient_check};
pub use overlap::{check_confluence, overlaps, Ambiguity, AmbiguityKind};
pub use poly::NcPoly;
pub use rewrite::{DegreeBasis, ReductionSystem, Rule};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("non-homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("rule not oriented: {0}")]
    RuleOrder(String),
    #[error("rules not inter-reduced: lead {0} contains lead {1}")]
    NotInterreduced(String, String),
    #[error("a relation of degree 0 collapses the algebra")]
    ConstantRelation,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("not in basis: {0}")]
    NotInBasis(String),
}
