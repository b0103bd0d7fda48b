//! Maximum 1-norm of universal Markov bases of reducible models, and the
//! large-format moves of the no-three-way model.

use crate::bases::{graver_basis, universal_markov_basis_unchecked};
use crate::caps::Caps;
use crate::complex::{build_model_matrix, is_reducible, Reduction, SimplicialComplex, TableDims};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::IntVector;

#[derive(Clone, Debug)]
pub struct ReducibleCheck {
    pub reduction: Reduction,
    pub l1: usize,
    pub l2: usize,
    /// Maximum 1-norm over the universal Markov basis of the whole model.
    pub full: usize,
}

impl ReducibleCheck {
    pub fn expected(&self) -> usize {
        4.max(self.l1).max(self.l2)
    }

    pub fn holds(&self) -> bool {
        self.full == self.expected()
    }
}

/// Largest 1-norm in the universal Markov basis of `A_Δ`, or 0 when the
/// kernel is trivial.
pub fn universal_max_norm(delta: &SimplicialComplex, dims: &TableDims, caps: &Caps) -> Result<usize> {
    let m = build_model_matrix(delta, dims)?.matrix;
    let graver = graver_basis(&m, caps)?;
    let universal = universal_markov_basis_unchecked(&m, &graver, caps)?;
    Ok(universal.max_norm1().map_or(0, |(n, _)| n))
}

/// Compares the universal Markov basis norm of `Δ` with `max{4, l₁, l₂}`.
/// `dims` are the full dims `d_1, …, d_n` aligned with the ground set.
pub fn reducible_norm_check(delta: &SimplicialComplex, dims: &TableDims, caps: &Caps) -> Result<ReducibleCheck> {
    if dims.as_slice().len() != delta.vertices().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} dims for {} vertices",
            dims.as_slice().len(),
            delta.vertices().len()
        )));
    }
    let reduction = is_reducible(delta).ok_or(Error::NotReducible)?;
    let restrict = |side: &SimplicialComplex| -> TableDims {
        let d = side
            .vertices()
            .iter()
            .map(|v| {
                let k = delta.vertices().iter().position(|x| x == v).expect("sub-complex vertex");
                dims.as_slice()[k]
            })
            .collect();
        TableDims::new(d)
    };
    let l1 = universal_max_norm(&reduction.first, &restrict(&reduction.first), caps)?;
    let l2 = universal_max_norm(&reduction.second, &restrict(&reduction.second), caps)?;
    let full = universal_max_norm(delta, dims, caps)?;
    Ok(ReducibleCheck { reduction, l1, l2, full })
}

/// The `m × m × 2` move of `[12][13][23]` built from the cyclic pattern
/// `(i, i)` against `(i, i+1)`, with cells in lexicographic order.
pub fn big_move_generator(m: usize) -> Result<IntVector> {
    if m < 2 {
        return Err(Error::Precondition(format!("big move needs m >= 2, got {m}")));
    }
    let cell = |i: usize, j: usize, k: usize| (i * m + j) * 2 + k;
    let mut u = vec![Int::from(0i64); m * m * 2];
    for i in 0..m {
        let next = (i + 1) % m;
        u[cell(i, i, 0)] = Int::from(1i64);
        u[cell(i, next, 1)] = Int::from(1i64);
        u[cell(i, i, 1)] = Int::from(-1i64);
        u[cell(i, next, 0)] = Int::from(-1i64);
    }
    Ok(IntVector::new(u))
}
