//! Matrices over `Z`, over `Z[t, t^-1]` and over `Z[s]/(s^N)`, plus integer
//! lattices.

mod hnf;
mod int;
mod laurent_matrix;
mod lll;
mod matrix;
mod trunc;

pub use hnf::{hnf_kernel, hnf_lattice_membership, hnf_solve, Hnf, Lattice};
pub use lll::{lll_reduce, norm_squared, reduce_modulo};
pub use matrix::{IntMatrix, LaurentMatrix, Matrix, RationalMatrix, Scalar};
pub use trunc::TruncMatrix;
