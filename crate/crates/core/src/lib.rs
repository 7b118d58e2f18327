//! Exact computations on tensors and their geometry: flattenings and rank
//! notions, secant-variety dimensions via tangent-space spans, symmetric
//! decomposition tests, Kronecker coefficients of the symmetric group,
//! Pfaffians and matchgate signatures, and minimum rank of matrix subspaces.

pub mod binary_form;
pub mod decomp;
pub mod error;
pub mod field;
pub mod io;
pub mod kronecker;
pub mod matchgate;
pub mod matrix;
pub mod minrank;
pub mod rank;
pub mod sampling;
pub mod tensor;
pub mod terracini;

pub use error::{Error, Result};
pub use field::{ExactField, Field, PrimeField, Rationals, Reals, Ring};
pub use matrix::Matrix;
pub use tensor::{Bipartition, DenseTensor, Shape};
