//! Exact arithmetic substrate: scalars over ℚ or 𝔽_p, dense matrices,
//! row reduction, and canonical subspace bases.

mod matrix;
mod reduce;
mod scalar;
pub mod subspace;

pub use matrix::{Matrix, Vector};
pub use reduce::RowReducer;
pub use scalar::{Field, Rat, Scalar};
