//! Generalized group identity checks over finite and sampled unit groups,
//! non-triviality of monomials, and the word reductions built on `u_r(a,x)`.

mod check;
mod reduce;

pub use check::{check_ggi, check_gpcgi, enumerate_scope, IdentityRecord, IdentityReport, Mode, Status};
pub use reduce::{
    is_nontrivial, locally_finite_exponent, radical_over_center, reduce_to_full_group,
    retarget_endpoints, Certificate, LocallyFiniteExponent, Nontriviality,
};

use thiserror::Error;

use crate::algebra::{AlgebraError, Element};
use crate::words::WordError;

pub const DEFAULT_P_MAX: u64 = 64;
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;
pub const DEFAULT_HEIGHT: u64 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("enumeration needs {needed} items, over the cap of {cap}")]
    EnumerationCapExceeded { needed: String, cap: u64 },
    #[error("endpoint transform failed: {0}")]
    TransformFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Where argument tuples come from.
#[derive(Clone, Debug)]
pub enum GroupScope {
    /// Every unit of a finite algebra.
    FullGroup,
    /// The subgroup generated by the given units, closed by breadth-first search.
    Generated(Vec<Element>),
    /// `count` seeded tuples of units with coordinates of height ≤ `height`.
    Sampler { count: u64, seed: u64, height: u64 },
}

impl GroupScope {
    pub fn is_exhaustive(&self) -> bool {
        !matches!(self, GroupScope::Sampler { .. })
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            GroupScope::Sampler { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GroupScope::FullGroup => "full-group",
            GroupScope::Generated(_) => "generated",
            GroupScope::Sampler { .. } => "sampled",
        }
    }
}

/// Bounds shared by the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckLimits {
    pub p_max: u64,
    /// Applies to group elements and to argument tuples.
    pub enum_cap: u64,
}

impl Default for CheckLimits {
    fn default() -> Self {
        Self { p_max: DEFAULT_P_MAX, enum_cap: DEFAULT_ENUM_CAP }
    }
}
