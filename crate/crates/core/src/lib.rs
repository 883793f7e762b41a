//! Exact chain-level computations for quadratic Poisson algebras.
//!
//! Everything is over `Q` and organised by finite weight slices.

pub mod algebra;
pub mod calculus;
pub mod complex;
pub mod duality;
pub mod error;
pub mod hochschild;
pub mod koszul;
pub mod linalg;
pub mod parallel;
pub mod poisson;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Q;
