//! Generalized group monomials, the monomial DSL, and the recursive
//! `c_r(a,x)` / `u_r(a,x)` constructions.

mod dsl;
mod monomial;
mod series;

pub use dsl::parse_monomial;
pub use monomial::{Letter, Monomial, MAX_LETTERS};
pub use series::{build_c, build_u, check_star_form, BuiltWord, SeriesDescriptor, SeriesStep, StepTrace};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient {0} is not a unit")]
    NonUnitCoefficient(String),
    #[error("unknown constant @{0}")]
    UnknownConstant(String),
    #[error("a monomial must contain at least one indeterminate")]
    NoIndeterminate,
    #[error("word needs {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("no substitution given for x{0}")]
    MissingSubstitution(usize),
    #[error("malformed word: {0}")]
    Shape(String),
    #[error("word would have {0} letters, over the limit of {MAX_LETTERS}")]
    TooLong(usize),
    #[error("invalid series descriptor: {0}")]
    Series(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
