//! Markov bases over the finite degree set `{m·v⁺ : v ∈ G(m)}`.
//!
//! Any kernel vector splits conformally into Graver elements, each of which
//! is applied inside the fiber of its own positive part, so connecting the
//! fibers of those degrees connects every fiber.

use std::collections::HashMap;

use crate::bases::{graver_basis, matrix_id, BasisKind, BasisSet};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::{fiber_enumerate, has_semiconformal_decomposition, IntMatrix, IntVector};

/// Distinct degrees `m·v⁺` over `graver`, sorted.
pub fn degree_set(m: &IntMatrix, graver: &BasisSet) -> Result<Vec<IntVector>> {
    let mut out = Vec::with_capacity(graver.len());
    for v in graver.vectors() {
        out.push(m.mul_vec(&v.pos_part())?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

struct DegreeFiber {
    points: Vec<IntVector>,
    index: HashMap<IntVector, usize>,
}

fn fibers(m: &IntMatrix, graver: &BasisSet, caps: &Caps) -> Result<Vec<DegreeFiber>> {
    let mut out = Vec::new();
    for b in degree_set(m, graver)? {
        caps.check_time()?;
        let f = fiber_enumerate(m, &b, caps).map_err(|e| with_degree(e, &b))?;
        let index = f.points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        out.push(DegreeFiber { points: f.points, index });
    }
    Ok(out)
}

fn with_degree(e: Error, b: &IntVector) -> Error {
    match e {
        Error::CapExceeded { kind, detail, partial } => Error::CapExceeded {
            kind,
            detail: Some(format!("{} at degree ({b})", detail.unwrap_or_default())),
            partial,
        },
        other => other,
    }
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.components -= 1;
        }
    }
}

fn fiber_connected(f: &DegreeFiber, moves: &[&IntVector]) -> bool {
    let mut uf = UnionFind::new(f.points.len());
    for (i, x) in f.points.iter().enumerate() {
        for mv in moves {
            let y = x + *mv;
            if let Some(&j) = f.index.get(&y) {
                uf.union(i, j);
            }
        }
        if uf.components == 1 {
            return true;
        }
    }
    uf.components <= 1
}

/// Whether every move of `moves` applies somewhere in the fiber.
fn applies(f: &DegreeFiber, mv: &IntVector) -> bool {
    let neg = -mv;
    f.points.iter().any(|x| f.index.contains_key(&(x + mv)) || f.index.contains_key(&(x + &neg)))
}

fn signed_moves(cand: &[IntVector]) -> Vec<IntVector> {
    cand.iter().flat_map(|v| [v.clone(), -v]).collect()
}

fn check_candidates(cand: &BasisSet, m: &IntMatrix) -> Result<()> {
    if cand.vectors().iter().any(|v| v.len() != m.cols() || !m.in_kernel(v)) {
        return Err(Error::NotInKernel);
    }
    Ok(())
}

/// Connectivity of every fiber of degree `m·v⁺`, `v ∈ graver`, under `cand`.
pub fn is_markov_basis(cand: &BasisSet, m: &IntMatrix, graver: &BasisSet, caps: &Caps) -> Result<bool> {
    check_candidates(cand, m)?;
    let fs = fibers(m, graver, caps)?;
    let moves = signed_moves(cand.vectors());
    let refs: Vec<&IntVector> = moves.iter().collect();
    Ok(fs.iter().all(|f| fiber_connected(f, &refs)))
}

/// Greedy minimal Markov basis: starting from the Graver basis, drop
/// elements in descending `(1-norm, lex)` order while the rest stays Markov.
pub fn minimal_markov_basis(m: &IntMatrix, caps: &Caps) -> Result<BasisSet> {
    let graver = graver_basis(m, caps)?;
    minimal_from_graver(m, &graver, caps)
}

pub fn minimal_from_graver(m: &IntMatrix, graver: &BasisSet, caps: &Caps) -> Result<BasisSet> {
    let fs = fibers(m, graver, caps)?;
    let mut order: Vec<&IntVector> = graver.vectors().iter().collect();
    order.sort_by(|a, b| (b.norm1(), *b).cmp(&(a.norm1(), *a)));
    let mut keep: Vec<IntVector> = graver.vectors().to_vec();
    for e in order {
        caps.check_time()?;
        let rest: Vec<IntVector> = keep.iter().filter(|v| *v != e).cloned().collect();
        let moves = signed_moves(&rest);
        let refs: Vec<&IntVector> = moves.iter().collect();
        let still = fs.iter().filter(|f| applies(f, e)).all(|f| fiber_connected(f, &refs));
        if still {
            keep = rest;
        }
    }
    Ok(BasisSet::new(BasisKind::MarkovMinimal, matrix_id(m), keep))
}

/// Moves `x − y` between distinct overlap components of each fiber, where
/// two fiber points overlap when their supports meet.
pub fn universal_markov_basis_unchecked(m: &IntMatrix, graver: &BasisSet, caps: &Caps) -> Result<BasisSet> {
    let mut moves = Vec::new();
    for b in degree_set(m, graver)? {
        caps.check_time()?;
        let f = fiber_enumerate(m, &b, caps).map_err(|e| with_degree(e, &b))?;
        let comps = overlap_components(&f.points, m.cols());
        if comps.len() < 2 {
            continue;
        }
        for (i, ci) in comps.iter().enumerate() {
            for cj in &comps[i + 1..] {
                for &x in ci {
                    for &y in cj {
                        moves.push(&f.points[x] - &f.points[y]);
                    }
                }
            }
        }
    }
    Ok(BasisSet::new(BasisKind::MarkovUniversal, matrix_id(m), moves))
}

/// Point indices grouped by overlap component, in order of first point.
pub(crate) fn overlap_components(points: &[IntVector], cells: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(points.len());
    let mut owner: Vec<Option<usize>> = vec![None; cells];
    for (i, p) in points.iter().enumerate() {
        for c in p.support() {
            match owner[c] {
                Some(j) => uf.union(i, j),
                None => owner[c] = Some(i),
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..points.len() {
        let r = uf.find(i);
        let k = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(i);
    }
    groups
}

/// The universal Markov basis, validated against the semi-conformal-free
/// set, the greedy minimal basis, the Graver basis and the Markov property.
pub fn universal_markov_basis(m: &IntMatrix, caps: &Caps) -> Result<BasisSet> {
    let graver = graver_basis(m, caps)?;
    let universal = universal_markov_basis_unchecked(m, &graver, caps)?;
    let free = semiconformal_from_graver(m, &graver, SemiconformalMode::Strict, caps)?;
    if let Some(v) = free.difference(&universal).first() {
        return Err(Error::CrossCheck(format!("semi-conformal-free element ({v}) missing from universal basis")));
    }
    let minimal = minimal_from_graver(m, &graver, caps)?;
    if let Some(v) = minimal.difference(&universal).first() {
        return Err(Error::CrossCheck(format!("minimal basis element ({v}) missing from universal basis")));
    }
    if let Some(v) = universal.difference(&graver).first() {
        return Err(Error::CrossCheck(format!("universal element ({v}) is not a Graver element")));
    }
    if !is_markov_basis(&universal, m, &graver, caps)? {
        return Err(Error::CrossCheck("universal basis does not connect every fiber".into()));
    }
    Ok(universal)
}

/// Orientation rule for the semi-conformal filter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SemiconformalMode {
    /// Keep `v` only if neither `v` nor `−v` decomposes.
    #[default]
    Strict,
    /// Keep `v` if at least one orientation is decomposition-free.
    OneSided,
}

pub fn semiconformal_free_set(m: &IntMatrix, mode: SemiconformalMode, caps: &Caps) -> Result<BasisSet> {
    let graver = graver_basis(m, caps)?;
    semiconformal_from_graver(m, &graver, mode, caps)
}

pub fn semiconformal_from_graver(
    m: &IntMatrix,
    graver: &BasisSet,
    mode: SemiconformalMode,
    caps: &Caps,
) -> Result<BasisSet> {
    let mut keep = Vec::new();
    for v in graver.vectors() {
        let plus_free = has_semiconformal_decomposition(v, m, caps)?.is_none();
        let free = match mode {
            SemiconformalMode::Strict => plus_free && has_semiconformal_decomposition(&-v, m, caps)?.is_none(),
            SemiconformalMode::OneSided => plus_free || has_semiconformal_decomposition(&-v, m, caps)?.is_none(),
        };
        if free {
            keep.push(v.clone());
        }
    }
    Ok(BasisSet::new(BasisKind::SemiconformalFree, matrix_id(m), keep))
}
