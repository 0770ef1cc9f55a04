//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream reduces to three questions about a matrix: its rank
//! and kernel, whether a right-hand side is in its image, and coordinates in a
//! quotient of nested subspaces.

mod matrix;
pub mod rational;
mod reduce;
mod subspace;
mod vector;

pub use matrix::SparseMatrix;
pub(crate) use matrix::offsets;
pub use rational::{format_q, parse_q, q, qf, sign, Q};
pub use reduce::{Insertion, Reducer};
pub use subspace::{
    kernel, rank, rank_kernel_image, solve_linear, solve_linear_dense, subquotient_basis, Solver, Subquotient,
    Subspace,
};
pub use vector::SparseVec;
