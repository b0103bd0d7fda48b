//! Graver and Markov complexities of generalized Lawrence liftings.

mod graver;
mod markov;
mod reducible;
mod report;

pub use graver::{
    doubled_norm_bound, doubled_norm_bound_checkpointed, graver_complexity, image_matrix, markov_lower_bound,
    GammaVector, NormBound,
};
pub use markov::{markov_profile, markov_profile_direct, MarkovProfile, ProfileEntry, ProfileMode};
pub use report::{model_complexities, model_matrices, ComplexityReport, Marker, Outcome, PipelineOptions};
pub use reducible::{big_move_generator, reducible_norm_check, universal_max_norm, ReducibleCheck};
