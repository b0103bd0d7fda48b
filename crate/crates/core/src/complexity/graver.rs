//! Graver complexity and the semi-conformal lower bound for the Markov
//! complexity, both read off the Graver basis of `B·G` for a set `G` of
//! kernel vectors of `A`.

use serde::Serialize;

use crate::bases::{
    graver_basis, graver_basis_checkpointed, semiconformal_free_set, BasisSet, Checkpoints, SemiconformalMode,
};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntVector, SlicedVector};

/// Counts over the columns `B·(+g_i)`, `B·(−g_i)` of the doubled matrix,
/// interleaved as `[+g_0, −g_0, +g_1, −g_1, …]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaVector {
    pub counts: Vec<u64>,
}

impl GammaVector {
    /// From an integer relation `z` among the columns `B·g_i`.
    pub fn from_relation(z: &IntVector) -> Self {
        let mut counts = Vec::with_capacity(2 * z.len());
        for x in z.iter() {
            let a = x.abs().to_u64_saturating();
            if x.is_negative() {
                counts.extend([0, a]);
            } else {
                counts.extend([a, 0]);
            }
        }
        GammaVector { counts }
    }

    /// The pair `+g_i, −g_i` out of `k` generators.
    pub fn pair(i: usize, k: usize) -> Self {
        let mut counts = vec![0; 2 * k];
        counts[2 * i] = 1;
        counts[2 * i + 1] = 1;
        GammaVector { counts }
    }

    pub fn norm1(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The lifted vector: one slice per counted column, in column order.
    pub fn expand(&self, gens: &[IntVector]) -> Result<SlicedVector> {
        if self.counts.len() != 2 * gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} counts for {} generators",
                self.counts.len(),
                gens.len()
            )));
        }
        let mut slices = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            for _ in 0..self.counts[2 * i] {
                slices.push(g.clone());
            }
            for _ in 0..self.counts[2 * i + 1] {
                slices.push(-g);
            }
        }
        SlicedVector::from_slices(&slices)
    }

    /// `(B·G)·Γ = 0` with every expanded slice in `ker A`.
    pub fn validate(&self, a: &IntMatrix, b: &IntMatrix, gens: &[IntVector]) -> Result<bool> {
        let lifted = self.expand(gens)?;
        let slices_ok = lifted.slices().iter().all(|s| a.in_kernel(s));
        Ok(slices_ok && b.in_kernel(&lifted.slice_sum()))
    }
}

/// Result of a `G(B·G)` maximum-norm computation.
#[derive(Clone, Debug)]
pub struct NormBound {
    pub value: usize,
    pub witness: Option<GammaVector>,
    /// The generators `g_i` (sign-canonical) whose images form the columns.
    pub generators: Vec<IntVector>,
    /// Graver basis of the single-sign matrix `B·G`.
    pub relations: BasisSet,
}

/// Columns `B·g` for each generator.
pub fn image_matrix(b: &IntMatrix, gens: &[IntVector]) -> Result<IntMatrix> {
    let cols: Vec<IntVector> = gens.iter().map(|g| b.mul_vec(g)).collect::<Result<_>>()?;
    IntMatrix::from_columns(&cols, b.rows())
}

/// Maximum 1-norm over the Graver basis of the doubled matrix `[B·g, −B·g]`.
///
/// Graver elements of the doubled matrix with nonnegative counts are the
/// pairs `(z⁺, z⁻)` for `z ∈ G(B·G)` and the pairs `(e_i, e_i)` whenever
/// `B·g_i ≠ 0` (when it vanishes, `e_i` alone is a relation). So the
/// single-sign Graver basis suffices.
pub fn doubled_norm_bound(b: &IntMatrix, gens: &[IntVector], caps: &Caps) -> Result<NormBound> {
    doubled_norm_bound_checkpointed(b, gens, caps, None)
}

pub fn doubled_norm_bound_checkpointed(
    b: &IntMatrix,
    gens: &[IntVector],
    caps: &Caps,
    store: Option<&dyn Checkpoints>,
) -> Result<NormBound> {
    let c = image_matrix(b, gens)?;
    let relations = graver_basis_checkpointed(&c, caps, store)?;
    let mut value = 0usize;
    let mut witness = None;
    if let Some((n, z)) = relations.max_norm1() {
        value = n;
        witness = Some(GammaVector::from_relation(z));
    }
    if value < 2 {
        if let Some(i) = (0..gens.len()).find(|&i| !c.column(i).is_zero()) {
            value = 2;
            witness = Some(GammaVector::pair(i, gens.len()));
        }
    }
    Ok(NormBound { value, witness, generators: gens.to_vec(), relations })
}

pub fn graver_complexity(a: &IntMatrix, b: &IntMatrix, caps: &Caps) -> Result<NormBound> {
    check_shapes(a, b)?;
    let ga = graver_basis(a, caps)?;
    doubled_norm_bound(b, ga.vectors(), caps)
}

pub fn markov_lower_bound(a: &IntMatrix, b: &IntMatrix, caps: &Caps) -> Result<NormBound> {
    check_shapes(a, b)?;
    let s = semiconformal_free_set(a, SemiconformalMode::Strict, caps)?;
    doubled_norm_bound(b, s.vectors(), caps)
}

pub(crate) fn check_shapes(a: &IntMatrix, b: &IntMatrix) -> Result<()> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!("A has {} columns and B has {}", a.cols(), b.cols())));
    }
    Ok(())
}

