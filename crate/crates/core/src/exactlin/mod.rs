//! Exact linear algebra over prime fields.
//!
//! Every elimination uses the leftmost nonzero column and the topmost unused row as pivot,
//! so kernels, sections and solutions are reproducible.

mod field;
mod matrix;

pub use field::{Field, FieldElement};
pub use matrix::{FieldMatrix, Pullback, Pushout, Rref};
