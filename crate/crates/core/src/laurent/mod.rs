//! Truncated Laurent series over a coefficient algebra, inversion of
//! `1 + a t`, and the homogeneous expansion of monomials.

mod expansion;
mod inversion;
mod series;

pub use expansion::{
    central_poly_test, check_central_pipeline, expand_monomial, first_nonzero_index, CentralPolyVerdict,
    PipelineReport, SampleVerdict,
};
pub use inversion::{
    bad_beta, g_polynomials, invert_algebraic, invert_general, invert_geometric, BadBeta, RationalSeriesForm,
    MAX_ROOT_SCAN,
};
pub use series::TruncatedLaurentSeries;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::words::WordError;

pub const DEFAULT_ORDER: i64 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("coefficient of t^{degree} is beyond the known order {order}")]
    BeyondOrder { degree: i64, order: i64 },
    #[error("leading coefficient {0} is not invertible")]
    LeadingCoefficientNotInvertible(String),
    #[error("root search unsupported: {0}")]
    RootSearchUnsupported(String),
    #[error("need at least {needed} distinct points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
