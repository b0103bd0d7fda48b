//! Markov complexity of `Λ(A, B, r)` through its per-level type profile.
//!
//! A fiber of `Λ_r` whose degree has `t` nonzero `A`-blocks only contains
//! tables with the same `t` nonzero slices, so the fibers of `Λ_r` are the
//! fibers of `Λ_t` padded with empty slices and every move of a fiber has
//! the type fixed by its degree. Hence the largest type in the universal
//! Markov basis of `Λ_r` is the largest `t ≤ r` for which some degree of
//! full type `t` has a fiber that is disconnected under support overlap.
//!
//! Those degrees come from Graver elements of `Λ_t` of full type. Splitting
//! each slice of such an element into Graver elements of `A` produces an
//! element whose slice multiset is a relation `z ∈ G(B·G(A))` (or a pair
//! `g, −g`); conversely the element is recovered by merging sign-compatible
//! slices. The candidates at level `t` are therefore the merges of those
//! slice multisets into `t` conformal blocks, deduplicated by degree up to
//! slice order.
//!
//! Overlap connectivity of one fiber is decided without listing it: tables
//! are paths through layers of partial `B`-sums, one slice per layer. Slice
//! points on a common full path, or sharing a cell, lie in one component.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{graver_basis, universal_markov_basis_unchecked};
use crate::caps::Caps;
use crate::complex::lawrence_lift;
use crate::complexity::graver::{image_matrix, NormBound};
use crate::error::{CapKind, Error, Result};
use crate::lattice::{fiber_enumerate, type_of, IntMatrix, IntVector, SlicedVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMode {
    /// Every level up to the Graver complexity.
    Exact,
    /// Stop once the profile has been flat for two levels past its value.
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub r: usize,
    pub max_type: usize,
    /// Candidate degrees of full type `r` examined.
    pub degrees: usize,
}

#[derive(Clone, Debug)]
pub struct MarkovProfile {
    pub value: usize,
    pub profile: Vec<ProfileEntry>,
    /// A universal Markov basis move of type `value`, at level `value`.
    pub witness: Option<SlicedVector>,
    pub mode: ProfileMode,
    /// All levels up to the Graver complexity were examined.
    pub certified: bool,
}

/// One source of candidates: the signed slices of a split Graver element.
struct Source {
    pieces: Vec<IntVector>,
    /// `A·p⁺` per piece.
    degrees: Vec<IntVector>,
    /// `B·Σ p⁺`.
    bottom: IntVector,
}

/// A degree of `Λ_t` up to slice order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct DegreeKey {
    blocks: Vec<IntVector>,
    bottom: IntVector,
}

pub fn markov_profile(
    a: &IntMatrix,
    b: &IntMatrix,
    graver: &NormBound,
    mode: ProfileMode,
    caps: &Caps,
) -> Result<MarkovProfile> {
    let g = graver.value;
    let limit = caps.max_r.map_or(g, |m| m.min(g));
    let sources = sources(a, b, graver)?;
    let mut profile = Vec::new();
    let mut value = 0;
    let mut witness = None;
    let mut fibers = SliceFibers::new(a, b, caps);
    for t in 1..=limit {
        caps.check_time()?;
        let keys = candidates(&sources, t, caps)?;
        fibers.prepare(keys.iter().flat_map(|k| k.blocks.iter()))?;
        let found = keys
            .par_iter()
            .map(|k| disconnected_move(&fibers, k, caps))
            .find_first(|r| !matches!(r, Ok(None)));
        match found {
            Some(Ok(Some(mv))) => {
                value = t;
                witness = Some(mv);
            }
            Some(Err(e)) => return Err(e),
            _ => {}
        }
        profile.push(ProfileEntry { r: t, max_type: value, degrees: keys.len() });
        log::debug!("level {t}: {} degrees, profile {value}", keys.len());
        if mode == ProfileMode::Heuristic && t >= 3 {
            let flat = profile[t - 3..].iter().all(|p| p.max_type == value);
            if flat && t > value {
                break;
            }
        }
    }
    let certified = profile.len() == g;
    Ok(MarkovProfile { value, profile, witness, mode, certified })
}

fn sources(a: &IntMatrix, b: &IntMatrix, graver: &NormBound) -> Result<Vec<Source>> {
    let gens = &graver.generators;
    let c = image_matrix(b, gens)?;
    let mut out = Vec::new();
    let mut add = |pieces: Vec<IntVector>| -> Result<()> {
        let degrees = pieces.iter().map(|p| a.mul_vec(&p.pos_part())).collect::<Result<Vec<_>>>()?;
        let mut pos = IntVector::zeros(a.cols());
        for p in &pieces {
            pos = &pos + &p.pos_part();
        }
        let bottom = b.mul_vec(&pos)?;
        out.push(Source { pieces, degrees, bottom });
        Ok(())
    };
    for z in graver.relations.vectors() {
        let mut pieces = Vec::new();
        for (i, x) in z.iter().enumerate() {
            let copies = x.abs().to_u64_saturating();
            let piece = if x.is_negative() { -&gens[i] } else { gens[i].clone() };
            for _ in 0..copies {
                pieces.push(piece.clone());
            }
        }
        add(pieces)?;
    }
    for (i, g) in gens.iter().enumerate() {
        if !c.column(i).is_zero() {
            add(vec![g.clone(), -g])?;
        }
    }
    Ok(out)
}

/// Distinct degrees of all conformal merges into exactly `t` blocks.
fn candidates(sources: &[Source], t: usize, caps: &Caps) -> Result<Vec<DegreeKey>> {
    let per: Vec<HashSet<DegreeKey>> = sources
        .par_iter()
        .filter(|s| s.pieces.len() >= t)
        .map(|s| {
            let mut set = HashSet::new();
            let mut gen = Merge { src: s, t, labels: vec![0; s.pieces.len()], sums: Vec::new(), degs: Vec::new() };
            gen.run(0, &mut set);
            set
        })
        .collect();
    let mut all: HashSet<DegreeKey> = HashSet::new();
    for s in per {
        all.extend(s);
        if all.len() > caps.max_fiber_points {
            return Err(Error::cap(CapKind::FiberPoints, format!("{} candidate degrees at level {t}", all.len())));
        }
    }
    let mut keys: Vec<DegreeKey> = all.into_iter().collect();
    keys.sort();
    Ok(keys)
}

struct Merge<'s> {
    src: &'s Source,
    t: usize,
    labels: Vec<usize>,
    sums: Vec<IntVector>,
    degs: Vec<IntVector>,
}

impl Merge<'_> {
    fn run(&mut self, i: usize, out: &mut HashSet<DegreeKey>) {
        let n = self.src.pieces.len();
        if i == n {
            if self.sums.len() == self.t {
                let mut blocks = self.degs.clone();
                blocks.sort();
                out.insert(DegreeKey { blocks, bottom: self.src.bottom.clone() });
            }
            return;
        }
        let open = self.sums.len();
        // enough pieces left to open the missing blocks
        if open + (n - i) < self.t {
            return;
        }
        let piece = &self.src.pieces[i];
        // identical neighbours take non-decreasing labels
        let first = if i > 0 && self.src.pieces[i - 1] == *piece { self.labels[i - 1] } else { 0 };
        for l in first..open {
            if !self.sums[l].sign_compatible(piece) {
                continue;
            }
            let old_sum = self.sums[l].clone();
            let old_deg = self.degs[l].clone();
            self.sums[l] = &old_sum + piece;
            self.degs[l] = &old_deg + &self.src.degrees[i];
            self.labels[i] = l;
            self.run(i + 1, out);
            self.sums[l] = old_sum;
            self.degs[l] = old_deg;
        }
        if open < self.t {
            self.sums.push(piece.clone());
            self.degs.push(self.src.degrees[i].clone());
            self.labels[i] = open;
            self.run(i + 1, out);
            self.sums.pop();
            self.degs.pop();
        }
    }
}

/// Fibers of `A` at block degrees, with their `B`-images.
struct SliceFiber {
    points: Vec<IntVector>,
    images: Vec<IntVector>,
}

struct SliceFibers<'m> {
    a: &'m IntMatrix,
    b: &'m IntMatrix,
    caps: &'m Caps,
    cache: HashMap<IntVector, Arc<SliceFiber>>,
}

impl<'m> SliceFibers<'m> {
    fn new(a: &'m IntMatrix, b: &'m IntMatrix, caps: &'m Caps) -> Self {
        SliceFibers { a, b, caps, cache: HashMap::new() }
    }

    fn prepare<'k>(&mut self, degrees: impl Iterator<Item = &'k IntVector>) -> Result<()> {
        let mut missing: Vec<IntVector> = degrees.filter(|d| !self.cache.contains_key(*d)).cloned().collect();
        missing.sort();
        missing.dedup();
        let built: Vec<(IntVector, Arc<SliceFiber>)> = missing
            .into_par_iter()
            .map(|d| {
                let f = fiber_enumerate(self.a, &d, self.caps)?;
                let images = f.points.iter().map(|p| self.b.mul_vec(p)).collect::<Result<Vec<_>>>()?;
                Ok((d, Arc::new(SliceFiber { points: f.points, images })))
            })
            .collect::<Result<_>>()?;
        self.cache.extend(built);
        Ok(())
    }

    fn get(&self, d: &IntVector) -> &SliceFiber {
        &self.cache[d]
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (x, y) = (self.find(a), self.find(b));
        if x != y {
            self.0[x.max(y)] = x.min(y);
        }
    }
}

/// A move `x − y` between two overlap components of the fiber, if the
/// fiber is disconnected.
fn disconnected_move(fibers: &SliceFibers<'_>, key: &DegreeKey, caps: &Caps) -> Result<Option<SlicedVector>> {
    let t = key.blocks.len();
    let slices: Vec<&SliceFiber> = key.blocks.iter().map(|d| fibers.get(d)).collect();
    let target = &key.bottom;

    // forward layers of partial B-sums bounded by the target
    let mut layers: Vec<Vec<IntVector>> = vec![vec![IntVector::zeros(target.len())]];
    let mut index: Vec<HashMap<IntVector, usize>> = vec![layers[0].iter().cloned().zip(0..).collect()];
    let mut states = 1usize;
    for f in &slices {
        let prev = layers.last().expect("layer");
        let mut next = Vec::new();
        let mut idx = HashMap::new();
        for s in prev {
            for img in &f.images {
                let s2 = s + img;
                if s2.iter().zip(target.iter()).any(|(x, y)| x > y) {
                    continue;
                }
                if !idx.contains_key(&s2) {
                    idx.insert(s2.clone(), next.len());
                    next.push(s2);
                }
            }
        }
        states += next.len();
        if states > caps.max_fiber_points {
            return Err(Error::cap(CapKind::FiberPoints, format!("{states} partial sums at a degree of type {t}")));
        }
        layers.push(next);
        index.push(idx);
    }
    let Some(&end) = index[t].get(target) else {
        return Ok(None);
    };

    // backward pass: useful edges (layer j, state, point) -> state'
    let mut alive: Vec<Vec<bool>> = layers.iter().map(|l| vec![false; l.len()]).collect();
    alive[t][end] = true;
    let mut edges: Vec<(usize, usize, usize, usize)> = Vec::new();
    for j in (0..t).rev() {
        for (si, s) in layers[j].iter().enumerate() {
            for (k, img) in slices[j].images.iter().enumerate() {
                if let Some(&s2) = index[j + 1].get(&(s + img)) {
                    if alive[j + 1][s2] {
                        alive[j][si] = true;
                        edges.push((j, si, k, s2));
                    }
                }
            }
        }
    }
    caps.check_time()?;

    // nodes: slice points, then intermediate states
    let mut point_base = Vec::with_capacity(t);
    let mut total = 0;
    for f in &slices {
        point_base.push(total);
        total += f.points.len();
    }
    let mut state_base = vec![0; t + 1];
    for j in 1..t {
        state_base[j] = total;
        total += layers[j].len();
    }
    let mut dsu = Dsu((0..total).collect());
    let mut useful = vec![false; total];
    let mut out_edge: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(j, s, k, s2) in &edges {
        let p = point_base[j] + k;
        useful[p] = true;
        if j >= 1 {
            dsu.union(p, state_base[j] + s);
        }
        if j + 1 < t {
            dsu.union(p, state_base[j + 1] + s2);
        }
        out_edge.entry((j, s)).or_insert((k, s2));
    }
    for (j, f) in slices.iter().enumerate() {
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (k, x) in f.points.iter().enumerate() {
            let p = point_base[j] + k;
            if !useful[p] {
                continue;
            }
            for c in x.support() {
                match owner.get(&c) {
                    Some(&q) => dsu.union(p, q),
                    None => {
                        owner.insert(c, p);
                    }
                }
            }
        }
    }

    // every table passes through slice 0, so its points meet every component
    let mut roots: Vec<(usize, usize)> = Vec::new();
    for &(j, _, k, _) in edges.iter().rev() {
        if j != 0 {
            continue;
        }
        let r = dsu.find(point_base[0] + k);
        if !roots.iter().any(|&(_, x)| x == r) {
            roots.push((k, r));
        }
    }
    if roots.len() < 2 {
        return Ok(None);
    }
    let table = |k0: usize| -> IntVector {
        let mut parts = vec![slices[0].points[k0].clone()];
        let mut s = *index[1].get(&slices[0].images[k0]).expect("first step is a state");
        for j in 1..t {
            let (k, s2) = out_edge[&(j, s)];
            parts.push(slices[j].points[k].clone());
            s = s2;
        }
        let refs: Vec<&IntVector> = parts.iter().collect();
        IntVector::concat(&refs)
    };
    let x = table(roots[0].0);
    let y = table(roots[1].0);
    let n = slices[0].points[0].len();
    Ok(Some(SlicedVector::new(&x - &y, t, n)?))
}

/// Largest type in the universal Markov basis of `Λ(A, B, r)` for
/// `r = 1..=r_max`, computed on the lifted matrices themselves.
pub fn markov_profile_direct(a: &IntMatrix, b: &IntMatrix, r_max: usize, caps: &Caps) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let lifted = lawrence_lift(a, b, r)?;
        let graver = graver_basis(&lifted.matrix, caps)?;
        let universal = universal_markov_basis_unchecked(&lifted.matrix, &graver, caps)?;
        let mut best = 0;
        for v in universal.vectors() {
            best = best.max(type_of(v, r, a.cols())?);
        }
        out.push(best);
    }
    Ok(out)
}
