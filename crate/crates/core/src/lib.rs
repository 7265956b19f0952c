//! Exact noncommutative algebra for generalized group monomials.

pub mod algebra;
pub mod freeness;
pub mod identity;
pub mod laurent;
pub mod words;
