//! Exact linear algebra over the rationals.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{dot, format_vector, int_vector, unit_vector, Matrix, Vector};
pub use rational::Rational;
pub use subspace::{column_space, kernel, quotient_dim, subspace_contains, subspace_equal, Subspace};
