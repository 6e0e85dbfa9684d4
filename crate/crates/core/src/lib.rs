//! Exact computation of secondary Hochschild and cyclic homology of triples
//! `(A, B, ε)` of finite-dimensional ℚ-algebras, secondary Kähler
//! differentials, and the kernel module `J/(J² + Ĵ)`, together with
//! mechanical checks of the isomorphisms relating them.

pub mod algebra;
pub mod chain;
pub mod differentials;
pub mod error;
pub mod homology;
pub mod kernel;
pub mod linalg;
pub mod oracles;
pub mod rational;
pub mod triple;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rat;
