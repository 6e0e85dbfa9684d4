//! Exact sparse linear algebra over ℚ: vectors, matrices, subspaces in
//! reduced echelon form, and explicit quotients.

mod matrix;
mod quotient;
mod subspace;
mod vector;

pub use matrix::SparseMat;
pub use quotient::{induced_map, Induced, Quotient};
pub use subspace::{colspace, nullspace, rank, subspace_sum, Subspace};
pub use vector::{Accumulator, SparseVec};
