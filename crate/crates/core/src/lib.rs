//! Exact-arithmetic toolkit for admissible pairs attached to gradings of
//! classical Lie algebras.

pub mod admissible;
pub mod connectivity;
pub mod equivalence;
pub mod error;
pub mod exactlin;
pub mod grading;
pub mod instances;
pub mod liealg;
pub mod sl2;

pub use error::{Error, Result};
