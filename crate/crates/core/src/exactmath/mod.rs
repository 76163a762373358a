//! Exact scalars over cyclotomic fields and exact sparse linear algebra.

pub mod echelon;
pub mod int;
pub mod scalar;
pub mod sparse;

pub use echelon::RowEchelon;
pub use int::Int;
pub use scalar::{Field, Scalar, DEFAULT_CONDUCTOR};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};
