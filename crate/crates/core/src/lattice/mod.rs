//! Exact integer vectors and matrices, kernel lattices, fibers and the
//! decomposition oracles.

pub mod decomposition;
pub mod fiber;
pub mod kernel;
mod matrix;
mod vector;

pub use decomposition::{has_conformal_decomposition, has_semiconformal_decomposition};
pub use fiber::{fiber_enumerate, fiber_enumerate_masked, FeasibilityOracle, Fiber};
pub use kernel::{kernel_lattice_basis, pivoted_basis, PivotedBasis};
pub use matrix::IntMatrix;
pub use vector::{type_of, IntVector, SlicedVector};
