//! Graver bases by completion, and a brute-force enumeration oracle.
//!
//! The completion works coordinate by coordinate. A lattice basis in
//! echelon form with unit pivots identifies the lattice with `Z^k` on the
//! pivot coordinates, whose Graver basis is `±e_i`. Each further coordinate
//! is then added and the set completed: only pairs that are sign-compatible
//! on the coordinates already present and of opposite sign on the new one
//! can produce new elements. Pairs are processed by increasing 1-norm and
//! every sum is reduced to normal form before insertion. When the lattice
//! has no unit-pivot basis, the completion runs once on all coordinates
//! with all non-compatible pairs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bases::trie::{sign_slot, SignTrie};
use crate::bases::{fast, matrix_id, BasisKind, BasisSet};
use crate::caps::Caps;
use crate::error::{CapKind, Error, Result};
use crate::int::Int;
use crate::lattice::{has_conformal_decomposition, kernel_lattice_basis, pivoted_basis, IntMatrix, IntVector};

/// Snapshot of the completion after a coordinate has been lifted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    /// Number of non-pivot coordinates lifted so far.
    pub lifted: usize,
    /// Sign-canonical generators.
    pub vectors: Vec<IntVector>,
}

/// Checkpoint and resume hooks for long completions.
#[derive(Default)]
pub struct GraverHooks<'a> {
    pub resume: Option<Stage>,
    pub on_stage: Option<&'a mut dyn FnMut(&Stage)>,
}

pub fn graver_basis(m: &IntMatrix, caps: &Caps) -> Result<BasisSet> {
    graver_basis_with(m, caps, &mut GraverHooks::default())
}

/// Persistent store for completion stages, keyed by matrix.
pub trait Checkpoints: Sync {
    fn load(&self, m: &IntMatrix) -> Option<Stage>;
    fn save(&self, m: &IntMatrix, stage: &Stage);
}

/// [`graver_basis`] resuming from and saving to `store`.
pub fn graver_basis_checkpointed(m: &IntMatrix, caps: &Caps, store: Option<&dyn Checkpoints>) -> Result<BasisSet> {
    let Some(store) = store else {
        return graver_basis(m, caps);
    };
    let mut save = |s: &Stage| store.save(m, s);
    let mut hooks = GraverHooks { resume: store.load(m), on_stage: Some(&mut save) };
    graver_basis_with(m, caps, &mut hooks)
}

pub fn graver_basis_with(m: &IntMatrix, caps: &Caps, hooks: &mut GraverHooks<'_>) -> Result<BasisSet> {
    let id = matrix_id(m);
    let basis = kernel_lattice_basis(m);
    if basis.is_empty() {
        return Ok(BasisSet::new(BasisKind::Graver, id, Vec::new()));
    }
    let n = m.cols();
    let pivoted = pivoted_basis(&basis);
    let vectors = if pivoted.all_unit() {
        let mut active: Vec<usize> = pivoted.pivots.clone();
        active.sort_unstable();
        let rest: Vec<usize> = (0..n).filter(|c| !active.contains(c)).collect();
        let mut elements = pivoted.rows.clone();
        let mut start = 0;
        if let Some(stage) = hooks.resume.take() {
            if stage.lifted > rest.len() || stage.vectors.iter().any(|v| v.len() != n || !m.in_kernel(v)) {
                return Err(Error::Precondition("checkpoint does not belong to this matrix".into()));
            }
            start = stage.lifted;
            active.extend(&rest[..start]);
            elements = stage.vectors;
        }
        for (k, &j) in rest.iter().enumerate().skip(start) {
            let mut coords = vec![j];
            coords.extend(&active);
            elements = complete(&elements, coords, Some(j), n, caps)?;
            active.push(j);
            if let Some(cb) = hooks.on_stage.as_mut() {
                cb(&Stage { lifted: k + 1, vectors: canonical(&elements) });
            }
        }
        elements
    } else {
        complete(&basis, (0..n).collect(), None, n, caps)?
    };
    Ok(BasisSet::new(BasisKind::Graver, id, vectors))
}

/// Machine-integer completion, repeated exactly if an entry grows too large.
fn complete(seeds: &[IntVector], coords: Vec<usize>, new_coord: Option<usize>, n: usize, caps: &Caps) -> Result<Vec<IntVector>> {
    if let fast::Outcome::Done(v) = fast::complete(seeds, coords.clone(), new_coord, n, caps)? {
        return Ok(v);
    }
    let mut comp = Completion::new(coords, caps);
    comp.run(seeds, new_coord)?;
    Ok(comp.interreduced())
}

fn canonical(v: &[IntVector]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = v.iter().map(IntVector::sign_canonical).collect();
    out.sort();
    out
}

struct Completion<'c> {
    caps: &'c Caps,
    /// Entry `2k` is class `k`, entry `2k + 1` its negation.
    store: Vec<IntVector>,
    trie: SignTrie,
    heap: BinaryHeap<Reverse<(u64, u64, u32, u32)>>,
    seq: u64,
}

impl<'c> Completion<'c> {
    fn new(coords: Vec<usize>, caps: &'c Caps) -> Self {
        Completion { caps, store: Vec::new(), trie: SignTrie::new(coords), heap: BinaryHeap::new(), seq: 0 }
    }

    fn active_norm(&self, v: &IntVector) -> u64 {
        self.trie.coords().iter().map(|&c| v[c].abs().to_u64_saturating()).fold(0u64, u64::saturating_add)
    }

    fn is_active_zero(&self, v: &IntVector) -> bool {
        self.trie.coords().iter().all(|&c| v[c].is_zero())
    }

    fn classes(&self) -> usize {
        self.store.len() / 2
    }

    fn partial(&self) -> Vec<IntVector> {
        canonical(&self.store.iter().step_by(2).cloned().collect::<Vec<_>>())
    }

    fn cap_error(&self, kind: CapKind, detail: String) -> Error {
        Error::CapExceeded { kind, detail: Some(detail), partial: Some(self.partial()) }
    }

    /// Adds `v` and its negation, queueing its pairs with earlier classes.
    fn insert(&mut self, v: IntVector, new_coord: Option<usize>) -> Result<()> {
        let v = v.sign_canonical();
        let class = self.classes() as u32;
        let partners = self.partners(&v, new_coord);
        for p in partners {
            let s = &v + &self.store[p as usize];
            let norm = self.active_norm(&s);
            self.seq += 1;
            self.heap.push(Reverse((norm, self.seq, 2 * class, p)));
        }
        let neg = -&v;
        self.trie.insert(&v, 2 * class);
        self.trie.insert(&neg, 2 * class + 1);
        self.store.push(v);
        self.store.push(neg);
        if self.classes() > self.caps.max_basis_elements {
            return Err(self.cap_error(CapKind::BasisElements, format!("{} generators", self.classes())));
        }
        Ok(())
    }

    fn partners(&self, v: &IntVector, new_coord: Option<usize>) -> Vec<u32> {
        let mut out = Vec::new();
        match new_coord {
            Some(j) => {
                let sj = sign_slot(&v[j]);
                if sj == 0 {
                    return out;
                }
                let opposite = 3 - sj;
                let signs: Vec<usize> = self.trie.coords().iter().map(|&c| sign_slot(&v[c])).collect();
                let allow = |depth: usize, s: usize| {
                    if depth == 0 {
                        s == opposite
                    } else {
                        let f = signs[depth];
                        f == 0 || s == 0 || s == f
                    }
                };
                self.trie.collect(&allow, &mut out);
            }
            None => {
                for (id, g) in self.store.iter().enumerate() {
                    let clash = self.trie.coords().iter().any(|&c| {
                        let (a, b) = (sign_slot(&v[c]), sign_slot(&g[c]));
                        a != 0 && b != 0 && a != b
                    });
                    if clash {
                        out.push(id as u32);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn normal_form(&self, mut s: IntVector) -> IntVector {
        while let Some(id) = self.trie.find_reducer(&s, &self.store, None) {
            s = &s - &self.store[id as usize];
            if self.is_active_zero(&s) {
                break;
            }
        }
        s
    }

    fn run(&mut self, seeds: &[IntVector], new_coord: Option<usize>) -> Result<()> {
        for v in seeds {
            let nf = self.normal_form(v.clone());
            if !self.is_active_zero(&nf) {
                self.insert(nf, new_coord)?;
            }
        }
        let mut popped: u64 = 0;
        while let Some(Reverse((_, _, a, b))) = self.heap.pop() {
            popped += 1;
            if popped % 1024 == 0 {
                self.caps.check_time().map_err(|_| self.cap_error(CapKind::TimeLimit, "completion".into()))?;
            }
            let s = &self.store[a as usize] + &self.store[b as usize];
            let nf = self.normal_form(s);
            if !self.is_active_zero(&nf) {
                self.insert(nf, new_coord)?;
            }
        }
        Ok(())
    }

    /// Classes not reducible by any other element.
    fn interreduced(&self) -> Vec<IntVector> {
        (0..self.classes())
            .map(|k| &self.store[2 * k])
            .enumerate()
            .filter(|(k, v)| self.trie.find_reducer(v, &self.store, Some(2 * *k as u32)).is_none())
            .map(|(_, v)| v.clone())
            .collect()
    }
}

/// Kernel vectors of `m` inside `[-bound, bound]ⁿ` without a conformal
/// decomposition. Equals the Graver basis whenever the basis lies in the box.
pub fn graver_bruteforce(m: &IntMatrix, bound: u32) -> BasisSet {
    assert!(bound >= 1, "box bound must be positive");
    let n = m.cols();
    let b = Int::from(i64::from(bound));
    // reach[c][r]: largest |Σ_{j ≥ c} m[r][j]·x_j| over the box
    let mut reach = vec![vec![Int::zero(); m.rows()]; n + 1];
    for c in (0..n).rev() {
        for r in 0..m.rows() {
            reach[c][r] = &reach[c + 1][r] + &(&m.get(r, c).abs() * &b);
        }
    }
    let mut found = Vec::new();
    let mut cur = vec![Int::zero(); n];
    let mut partial = vec![Int::zero(); m.rows()];
    enumerate_box(m, &reach, &b, 0, false, &mut cur, &mut partial, &mut found);
    let primitive: Vec<IntVector> = found
        .into_iter()
        .filter(|v| has_conformal_decomposition(v, m).expect("enumerated vectors are kernel vectors").is_none())
        .collect();
    BasisSet::new(BasisKind::Graver, matrix_id(m), primitive)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_box(
    m: &IntMatrix,
    reach: &[Vec<Int>],
    b: &Int,
    c: usize,
    started: bool,
    cur: &mut Vec<Int>,
    partial: &mut Vec<Int>,
    out: &mut Vec<IntVector>,
) {
    if partial.iter().zip(&reach[c]).any(|(p, r)| p.cmp_abs(r) == std::cmp::Ordering::Greater) {
        return;
    }
    if c == m.cols() {
        if started {
            out.push(IntVector::new(cur.clone()));
        }
        return;
    }
    // sign-canonical: the first nonzero entry is positive
    let lo = if started { -b } else { Int::zero() };
    let mut k = lo;
    while &k <= b {
        for r in 0..m.rows() {
            partial[r] += &(m.get(r, c) * &k);
        }
        cur[c] = k.clone();
        enumerate_box(m, reach, b, c + 1, started || !k.is_zero(), cur, partial, out);
        for r in 0..m.rows() {
            partial[r] -= &(m.get(r, c) * &k);
        }
        k += &Int::one();
    }
    cur[c] = Int::zero();
}

/// Grows the box from `start` until two consecutive sizes agree, up to `max`.
/// Returns the basis and the box at which it stabilized.
pub fn graver_bruteforce_stable(m: &IntMatrix, start: u32, max: u32) -> Option<(BasisSet, u32)> {
    let mut prev = graver_bruteforce(m, start);
    for bound in start + 1..=max {
        let next = graver_bruteforce(m, bound);
        if next == prev {
            return Some((prev, bound - 1));
        }
        prev = next;
    }
    None
}
