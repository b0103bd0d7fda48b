//! Exhaustive decomposition oracles for kernel vectors.
//!
//! Both searches are exponential in the entries of `u` and intended for
//! the small vectors that occur in Graver and Markov bases.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::fiber::{check_fiber_matrix, fiber_enumerate_masked};
use crate::lattice::{IntMatrix, IntVector};

fn require_kernel(u: &IntVector, m: &IntMatrix) -> Result<()> {
    if u.len() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {} columns",
            u.len(),
            m.cols()
        )));
    }
    if !m.in_kernel(u) {
        return Err(Error::NotInKernel);
    }
    if u.is_zero() {
        return Err(Error::Precondition("zero vector has no decompositions to test".into()));
    }
    Ok(())
}

/// Enumerates kernel vectors `v ⊑ u` with row-residual pruning.
struct ConformalSearch<'a> {
    m: &'a IntMatrix,
    u: &'a IntVector,
    /// `lo[c][r]`, `hi[c][r]`: range of `Σ_{j ≥ c} m[r][j]·v_j` over the box.
    lo: Vec<Vec<Int>>,
    hi: Vec<Vec<Int>>,
    current: Vec<Int>,
    partial: Vec<Int>,
}

impl<'a> ConformalSearch<'a> {
    fn new(m: &'a IntMatrix, u: &'a IntVector) -> Self {
        let n = m.cols();
        let rows = m.rows();
        let mut lo = vec![vec![Int::zero(); rows]; n + 1];
        let mut hi = vec![vec![Int::zero(); rows]; n + 1];
        for c in (0..n).rev() {
            for r in 0..rows {
                let t = m.get(r, c) * &u[c];
                let (a, b) = if t.is_negative() { (t, Int::zero()) } else { (Int::zero(), t) };
                lo[c][r] = &lo[c + 1][r] + &a;
                hi[c][r] = &hi[c + 1][r] + &b;
            }
        }
        ConformalSearch { m, u, lo, hi, current: vec![Int::zero(); n], partial: vec![Int::zero(); rows] }
    }

    fn viable(&self, c: usize) -> bool {
        (0..self.m.rows()).all(|r| {
            let need = -&self.partial[r];
            self.lo[c][r] <= need && need <= self.hi[c][r]
        })
    }

    /// Depth-first search; stops at the first vector accepted by `accept`.
    fn find(&mut self, c: usize, accept: &mut dyn FnMut(&[Int]) -> bool) -> Option<IntVector> {
        if !self.viable(c) {
            return None;
        }
        if c == self.m.cols() {
            if accept(&self.current) {
                return Some(IntVector::new(self.current.clone()));
            }
            return None;
        }
        let uc = self.u[c].clone();
        let step = if uc.is_negative() { Int::from(-1) } else { Int::one() };
        let mut k = Int::zero();
        loop {
            self.current[c] = k.clone();
            for r in 0..self.m.rows() {
                let a = self.m.get(r, c);
                if !a.is_zero() {
                    self.partial[r] += &(a * &k);
                }
            }
            let hit = self.find(c + 1, accept);
            for r in 0..self.m.rows() {
                let a = self.m.get(r, c);
                if !a.is_zero() {
                    self.partial[r] -= &(a * &k);
                }
            }
            if hit.is_some() {
                self.current[c] = Int::zero();
                return hit;
            }
            if k == uc {
                break;
            }
            k += &step;
        }
        self.current[c] = Int::zero();
        None
    }
}

/// Searches for a conformal decomposition `u = v + v'` with `v, v'` nonzero
/// kernel vectors. Returns the pair when one exists.
pub fn has_conformal_decomposition(u: &IntVector, m: &IntMatrix) -> Result<Option<(IntVector, IntVector)>> {
    require_kernel(u, m)?;
    let mut search = ConformalSearch::new(m, u);
    let found = search.find(0, &mut |v| {
        let nonzero = v.iter().any(|x| !x.is_zero());
        let proper = v.iter().zip(u.iter()).any(|(a, b)| a != b);
        nonzero && proper
    });
    Ok(found.map(|v| {
        let rest = u - &v;
        (v, rest)
    }))
}

/// Searches for a semi-conformal decomposition `u = v + v'`: nonzero kernel
/// vectors with `v_i > 0 ⇒ v_i ≤ u_i`. The matching condition on `v'` holds
/// automatically. Requires a nonnegative matrix without zero columns.
///
/// Candidates are built from their positive part `w` (`0 ≤ w ≤ u⁺`) and a
/// negative part `z` in the fiber of `m·w` supported off `supp(w)`.
pub fn has_semiconformal_decomposition(
    u: &IntVector,
    m: &IntMatrix,
    caps: &Caps,
) -> Result<Option<(IntVector, IntVector)>> {
    check_fiber_matrix(m)?;
    require_kernel(u, m)?;
    let n = u.len();
    let upos = u.pos_part();
    let support: Vec<usize> = upos.support();
    let mut w = vec![Int::zero(); n];
    find_semiconformal(u, m, caps, &support, 0, &mut w)
}

fn find_semiconformal(
    u: &IntVector,
    m: &IntMatrix,
    caps: &Caps,
    support: &[usize],
    idx: usize,
    w: &mut Vec<Int>,
) -> Result<Option<(IntVector, IntVector)>> {
    if idx == support.len() {
        if w.iter().all(Int::is_zero) {
            return Ok(None);
        }
        caps.check_time()?;
        let wv = IntVector::new(w.clone());
        let allowed: Vec<bool> = w.iter().map(Int::is_zero).collect();
        let target = m.mul_vec(&wv)?;
        let fiber = fiber_enumerate_masked(m, &target, Some(&allowed), caps)?;
        for z in &fiber.points {
            let v = &wv - z;
            if &v != u {
                let rest = u - &v;
                return Ok(Some((v, rest)));
            }
        }
        return Ok(None);
    }
    let c = support[idx];
    let mut k = Int::zero();
    while k <= u[c] {
        w[c] = k.clone();
        if let Some(hit) = find_semiconformal(u, m, caps, support, idx + 1, w)? {
            w[c] = Int::zero();
            return Ok(Some(hit));
        }
        k += &Int::one();
    }
    w[c] = Int::zero();
    Ok(None)
}
