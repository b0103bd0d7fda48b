//! Integer kernel lattices by unimodular row reduction.

use crate::int::Int;
use crate::lattice::{IntMatrix, IntVector};

/// Reduces `rows[start..]` so that only `rows[start]` is nonzero in column `c`,
/// using unimodular operations. Returns false if the column is already zero there.
fn euclid_column(rows: &mut [Vec<Int>], start: usize, c: usize) -> bool {
    loop {
        let mut best: Option<usize> = None;
        for r in start..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            match best {
                Some(b) if rows[b][c].cmp_abs(&rows[r][c]) != std::cmp::Ordering::Greater => {}
                _ => best = Some(r),
            }
        }
        let Some(p) = best else { return false };
        rows.swap(start, p);
        let mut done = true;
        let pivot = rows[start].clone();
        for row in rows.iter_mut().skip(start + 1) {
            if row[c].is_zero() {
                continue;
            }
            let q = row[c].div_floor_signed(&pivot[c]);
            if !q.is_zero() {
                for k in 0..row.len() {
                    if !pivot[k].is_zero() {
                        row[k] -= &(&q * &pivot[k]);
                    }
                }
            }
            if !row[c].is_zero() {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
}

trait DivSigned {
    fn div_floor_signed(&self, d: &Int) -> Int;
}

impl DivSigned for Int {
    /// Quotient rounding toward negative infinity for any nonzero divisor.
    fn div_floor_signed(&self, d: &Int) -> Int {
        if d.is_positive() {
            self.div_floor(d)
        } else {
            (-self).div_floor(&-d)
        }
    }
}

/// A basis of the saturated lattice `{x ∈ Zⁿ : m·x = 0}`.
///
/// Works on `[mᵀ | I]`: unimodular row operations bring the `mᵀ` block to
/// echelon form, and the identity part of each row whose `mᵀ` part vanished
/// is a kernel vector. The rows of a unimodular transform span the full
/// kernel, not a sublattice. The basis is then put in echelon form with
/// reduced entries above the pivots.
pub fn kernel_lattice_basis(m: &IntMatrix) -> Vec<IntVector> {
    let n = m.cols();
    let k = m.rows();
    let mut rows: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(k + n);
            for r in 0..k {
                row.push(m.get(r, i).clone());
            }
            for j in 0..n {
                row.push(if i == j { Int::one() } else { Int::zero() });
            }
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..k {
        if rank == n {
            break;
        }
        if euclid_column(&mut rows, rank, c) {
            rank += 1;
        }
    }
    let basis: Vec<IntVector> = rows[rank..].iter().map(|row| IntVector::new(row[k..].to_vec())).collect();
    hermite_reduce(basis)
}

/// Row-style Hermite normal form of a lattice basis: echelon with positive
/// pivots and entries above each pivot reduced into `0..pivot`.
pub fn hermite_reduce(basis: Vec<IntVector>) -> Vec<IntVector> {
    if basis.is_empty() {
        return basis;
    }
    let n = basis[0].len();
    let mut rows: Vec<Vec<Int>> = basis.into_iter().map(IntVector::into_entries).collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if rank == rows.len() {
            break;
        }
        if euclid_column(&mut rows, rank, c) {
            if rows[rank][c].is_negative() {
                for x in rows[rank].iter_mut() {
                    *x = -&*x;
                }
            }
            pivots.push((rank, c));
            rank += 1;
        }
    }
    rows.truncate(rank);
    for &(pr, c) in &pivots {
        let pivot = rows[pr].clone();
        for row in rows.iter_mut().take(pr) {
            let q = row[c].div_floor(&pivot[c]);
            if !q.is_zero() {
                for k in 0..row.len() {
                    row[k] -= &(&q * &pivot[k]);
                }
            }
        }
    }
    rows.into_iter().map(IntVector::new).collect()
}

/// Lattice basis in echelon form over a chosen set of pivot coordinates,
/// preferring unit pivots. The returned basis restricted to the pivot
/// columns (in the returned order) is upper triangular, so the coordinate
/// projection onto those columns is injective on the lattice. When every
/// pivot is ±1 the restriction is the identity.
#[derive(Debug, Clone)]
pub struct PivotedBasis {
    pub rows: Vec<IntVector>,
    pub pivots: Vec<usize>,
}

impl PivotedBasis {
    pub fn all_unit(&self) -> bool {
        self.rows.iter().zip(&self.pivots).all(|(r, &c)| r[c] == Int::one())
    }
}

pub fn pivoted_basis(basis: &[IntVector]) -> PivotedBasis {
    let mut rows: Vec<Vec<Int>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let d = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut used = vec![false; n];
    let mut pivots = Vec::with_capacity(d);
    for k in 0..d {
        let unit = (k..d).find_map(|r| {
            (0..n).find(|&c| !used[c] && rows[r][c].abs() == Int::one()).map(|c| (r, c))
        });
        if let Some((r, c)) = unit {
            rows.swap(k, r);
            if rows[k][c].is_negative() {
                for x in rows[k].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot = rows[k].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == k || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in 0..n {
                    if !pivot[j].is_zero() {
                        row[j] -= &(&f * &pivot[j]);
                    }
                }
            }
            used[c] = true;
            pivots.push(c);
            continue;
        }
        let c = (0..n)
            .find(|&c| !used[c] && (k..d).any(|r| !rows[r][c].is_zero()))
            .expect("basis rows are linearly independent");
        euclid_column(&mut rows, k, c);
        if rows[k][c].is_negative() {
            for x in rows[k].iter_mut() {
                *x = -&*x;
            }
        }
        used[c] = true;
        pivots.push(c);
    }
    PivotedBasis { rows: rows.into_iter().map(IntVector::new).collect(), pivots }
}
