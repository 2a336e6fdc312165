//! Exact arithmetic and linear algebra.

pub mod field;
pub mod matrix;
pub mod rational;
pub mod sparse;
pub mod subspace;

pub use field::FieldElement;
pub use matrix::{Matrix, Solution};
pub use rational::Rat;
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::{Frame, Subspace};
