//! Graver bases, minimal and universal Markov bases, and the
//! semi-conformal-free set.

mod fast;
mod graver;
mod markov;
mod trie;

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::lattice::{IntMatrix, IntVector};

pub use graver::{
    graver_basis, graver_basis_checkpointed, graver_basis_with, graver_bruteforce, graver_bruteforce_stable, Checkpoints,
    GraverHooks, Stage,
};
pub use markov::{
    degree_set, is_markov_basis, minimal_from_graver, minimal_markov_basis, semiconformal_free_set,
    semiconformal_from_graver, universal_markov_basis, universal_markov_basis_unchecked, SemiconformalMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Graver,
    MarkovMinimal,
    MarkovUniversal,
    SemiconformalFree,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Graver => "graver",
            BasisKind::MarkovMinimal => "markov_minimal",
            BasisKind::MarkovUniversal => "markov_universal",
            BasisKind::SemiconformalFree => "semiconformal_free",
        })
    }
}

/// A set of kernel vectors stored up to sign: each vector has a positive
/// first nonzero entry, and the list is sorted without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisSet {
    pub kind: BasisKind,
    pub matrix_id: String,
    vectors: Vec<IntVector>,
}

impl BasisSet {
    pub fn new(kind: BasisKind, matrix_id: impl Into<String>, vectors: impl IntoIterator<Item = IntVector>) -> Self {
        let mut vs: Vec<IntVector> = vectors.into_iter().filter(|v| !v.is_zero()).map(|v| v.sign_canonical()).collect();
        vs.sort();
        vs.dedup();
        BasisSet { kind, matrix_id: matrix_id.into(), vectors: vs }
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<IntVector> {
        self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Membership up to sign.
    pub fn contains(&self, v: &IntVector) -> bool {
        self.vectors.binary_search(&v.sign_canonical()).is_ok()
    }

    pub fn is_subset_of(&self, other: &BasisSet) -> bool {
        self.vectors.iter().all(|v| other.contains(v))
    }

    /// Elements of `self` missing from `other`.
    pub fn difference(&self, other: &BasisSet) -> Vec<IntVector> {
        self.vectors.iter().filter(|v| !other.contains(v)).cloned().collect()
    }

    /// Largest 1-norm together with the first vector attaining it.
    pub fn max_norm1(&self) -> Option<(usize, &IntVector)> {
        let mut best: Option<(usize, &IntVector)> = None;
        for v in &self.vectors {
            let n = v.norm1().to_u64_saturating() as usize;
            if best.is_none_or(|(b, _)| n > b) {
                best = Some((n, v));
            }
        }
        best
    }

    pub fn with_kind(mut self, kind: BasisKind) -> Self {
        self.kind = kind;
        self
    }

    /// Every vector lies in the kernel of `m`.
    pub fn all_in_kernel(&self, m: &IntMatrix) -> bool {
        self.vectors.iter().all(|v| m.in_kernel(v))
    }
}

/// Stable identifier of a matrix for provenance fields.
pub fn matrix_id(m: &IntMatrix) -> String {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    m.hash(&mut h);
    format!("{}x{}:{:016x}", m.rows(), m.cols(), h.finish())
}
