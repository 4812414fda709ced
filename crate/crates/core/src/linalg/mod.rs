//! Complex dense linear algebra: Hermitian factorizations and solves,
//! Levinson-Durbin Toeplitz inversion and the matrix-inversion-lemma path
//! for short training sets.

mod cholesky;
mod hung_turner;
mod matrix;
mod toeplitz;
pub mod vector;

pub use cholesky::{cholesky_lower, psd_factor, solve_hermitian, CholeskyFactor};
pub use hung_turner::hung_turner_weights;
pub use matrix::{ComplexMatrix, HermitianMatrix};
pub use toeplitz::{toeplitz_inverse, ToeplitzSpec};

pub(crate) use toeplitz::levinson_durbin;
