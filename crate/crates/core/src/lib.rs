//! Exact integer computations for hierarchical log-linear models: model
//! matrices, generalized Lawrence liftings, Graver and Markov bases, and the
//! Graver and Markov complexities of the lifts.

pub mod bases;
pub mod caps;
pub mod complex;
pub mod complexity;
pub mod error;
pub mod int;
pub mod lattice;

pub use bases::{BasisKind, BasisSet};
pub use caps::Caps;
pub use complex::{
    block_factorization, build_model_matrix, deletion, is_reducible, lawrence_lift, link, normalize_facets,
    parse_complex, BlockFactorization, LiftedMatrix, ModelMatrix, Reduction, RowLabel, SimplicialComplex, TableDims,
};
pub use complexity::{model_complexities, ComplexityReport, PipelineOptions, ProfileMode};
pub use error::{CapKind, Error, Result};
pub use int::Int;
pub use lattice::{IntMatrix, IntVector, SlicedVector};
