//! Instances and checks shared by the core tests and the acceptance suite.

#![allow(dead_code)]

use markov_complexity::bases::*;
use markov_complexity::complexity::model_matrices;
use markov_complexity::lattice::has_conformal_decomposition;
use markov_complexity::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Checked<T> = std::result::Result<T, String>;

pub const CORE: [&str; 9] = [
    "[123][124][134][234]",
    "[123][34]",
    "[123][14]",
    "[234][12]",
    "[12][34]",
    "[12][13][4]",
    "[12][14][23]",
    "[234][1]",
    "[123][4]",
];

pub fn independence(r: usize, c: usize) -> IntMatrix {
    build_model_matrix(&parse_complex("[1][2]").unwrap(), &TableDims::new(vec![r, c])).unwrap().matrix
}

/// A nonnegative matrix with the same rational row space as `m`, built by
/// adding a multiple of a strictly positive row-space vector to every row.
pub fn nonnegative_twin(m: &IntMatrix) -> Option<IntMatrix> {
    let rows = m.row_vectors();
    let mut y = vec![-3i64; rows.len()];
    loop {
        let w = rows.iter().zip(&y).fold(IntVector::zeros(m.cols()), |acc, (r, &k)| &acc + &r.scaled(&Int::from(k)));
        if w.iter().all(|x| x.is_positive()) {
            let k = m.row_vectors().iter().flat_map(|r| r.iter().cloned()).map(|x| -x).max().unwrap().max(Int::zero());
            let shifted: Vec<IntVector> = rows.iter().map(|r| r + &w.scaled(&(&k + &Int::one()))).collect();
            let twin = IntMatrix::from_rows(&shifted, m.cols()).unwrap();
            return (twin.rank() == m.rank()).then_some(twin);
        }
        let mut i = 0;
        while i < y.len() && y[i] == 3 {
            y[i] = -3;
            i += 1;
        }
        if i == y.len() {
            return None;
        }
        y[i] += 1;
    }
}

/// Largest entry over the circuits of a rank-3 matrix, read off the
/// one-dimensional kernels of its 4-column submatrices of full rank.
pub fn max_circuit_entry(m: &IntMatrix) -> u32 {
    let n = m.cols();
    let mut best = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let sub = m.select_columns(&[a, b, c, d]);
                    if sub.rank() != 3 {
                        continue;
                    }
                    let k = lattice::kernel_lattice_basis(&sub);
                    assert_eq!(k.len(), 1);
                    best = best.max(k[0].norm_inf().to_u64_saturating() as u32);
                }
            }
        }
    }
    best
}

pub struct Instance {
    pub name: String,
    pub matrix: IntMatrix,
    /// Nonnegative matrix with the same kernel, for fiber-based checks.
    pub fibers: Option<IntMatrix>,
    /// Proven box for the Graver basis; otherwise the box is grown until stable.
    pub bound: Option<u32>,
}

pub fn instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for (r, c) in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)] {
        let m = independence(r, c);
        out.push(Instance { name: format!("independence {r}x{c}"), fibers: Some(m.clone()), matrix: m, bound: None });
    }
    let m = build_model_matrix(&parse_complex("[12][13][23]").unwrap(), &TableDims::parse("2,2,2").unwrap())
        .unwrap()
        .matrix;
    out.push(Instance { name: "no-three-way 2x2x2".into(), fibers: Some(m.clone()), matrix: m, bound: None });
    let mut seen: Vec<IntMatrix> = Vec::new();
    for model in CORE {
        let (a, b) = model_matrices(&parse_complex(model).unwrap(), &TableDims::parse("2,2,2").unwrap()).unwrap();
        for (side, m) in [("link", a), ("deletion", b)] {
            if m.rows() == 0 || seen.contains(&m) {
                continue;
            }
            seen.push(m.clone());
            out.push(Instance { name: format!("{model} {side}"), fibers: Some(m.clone()), matrix: m, bound: None });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random = 0;
    while random < 10 {
        let entries: Vec<i64> = (0..18).map(|_| rng.gen_range(-2..=2)).collect();
        let rows: Vec<&[i64]> = entries.chunks(6).collect();
        let m = IntMatrix::from_i64_rows(&rows);
        if m.rank() != 3 {
            continue;
        }
        let Some(twin) = nonnegative_twin(&m) else {
            continue;
        };
        let bound = 3 * max_circuit_entry(&m);
        if bound > 6 {
            continue;
        }
        out.push(Instance { name: format!("random {random}: {entries:?}"), fibers: Some(twin), matrix: m, bound: Some(bound) });
        random += 1;
    }
    out
}

/// Completion against the brute-force box enumeration.
pub fn check_graver_oracle(inst: &Instance) -> Checked<()> {
    let fast = graver_basis(&inst.matrix, &Caps::default()).map_err(|e| e.to_string())?;
    let (oracle, bound) = match inst.bound {
        Some(b) => (graver_bruteforce(&inst.matrix, b), b),
        None => graver_bruteforce_stable(&inst.matrix, 1, 3).ok_or_else(|| format!("{}: box did not stabilize", inst.name))?,
    };
    if fast.vectors() != oracle.vectors() {
        return Err(format!("{}: {} elements, box {bound} gives {}", inst.name, fast.len(), oracle.len()));
    }
    Ok(())
}

/// `S ⊆ minimal ⊆ universal ⊆ Graver`, and the minimal basis is Markov
/// but stops being so when any element is dropped.
pub fn check_markov_properties(inst: &Instance) -> Checked<()> {
    let caps = Caps::default();
    let m = inst.fibers.as_ref().ok_or_else(|| format!("{}: no fiber matrix", inst.name))?;
    let fail = |what: &str| Err(format!("{}: {what}", inst.name));
    let run = || -> markov_complexity::Result<Checked<()>> {
        let graver = graver_basis(m, &caps)?;
        let minimal = minimal_from_graver(m, &graver, &caps)?;
        let universal = universal_markov_basis(m, &caps)?;
        let free = semiconformal_from_graver(m, &graver, SemiconformalMode::Strict, &caps)?;
        if !free.is_subset_of(&minimal) {
            return Ok(fail("S(A) not inside the minimal basis"));
        }
        if !minimal.is_subset_of(&universal) || !universal.is_subset_of(&graver) {
            return Ok(fail("minimal, universal, Graver not nested"));
        }
        if !is_markov_basis(&minimal, m, &graver, &caps)? {
            return Ok(fail("minimal basis does not connect fibers"));
        }
        for k in 0..minimal.len() {
            let rest = minimal.vectors().iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| v.clone());
            let smaller = BasisSet::new(BasisKind::MarkovMinimal, "drop", rest);
            if is_markov_basis(&smaller, m, &graver, &caps)? {
                return Ok(fail(&format!("element {k} of the minimal basis is redundant")));
            }
        }
        Ok(Ok(()))
    };
    run().map_err(|e| format!("{}: {e}", inst.name))?
}

/// Splits one slice of sampled Graver elements of `Λ(A, B, r)` conformally
/// and checks the result is a Graver element of `Λ(A, B, r + 1)`. Samples
/// `per_level` elements for each `r`; returns how many were verified.
pub fn row_splitting_closure(levels: &[usize], per_level: usize, seed: u64) -> Checked<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verified = 0;
    for &r in levels {
        let mut here = 0;
        for (model, dims) in [("[12][13][23]", "3,3"), ("[12][14][23][34]", "2,2,2"), ("[12][13][23]", "2,4")] {
            let (a, b) = model_matrices(&parse_complex(model).unwrap(), &TableDims::parse(dims).unwrap()).unwrap();
            let lifted = lawrence_lift(&a, &b, r).unwrap();
            let up = lawrence_lift(&a, &b, r + 1).unwrap();
            let graver = graver_basis(&lifted.matrix, &Caps::default()).map_err(|e| e.to_string())?;
            let mut pool: Vec<&IntVector> = graver.vectors().iter().collect();
            pool.shuffle(&mut rng);
            for u in pool {
                if here == per_level {
                    break;
                }
                let u = SlicedVector::new(u.clone(), r, a.cols()).unwrap();
                let slices = u.slices();
                let Some((i, (v1, v2))) = slices
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .find_map(|(i, s)| has_conformal_decomposition(s, &a).unwrap().map(|d| (i, d)))
                else {
                    continue;
                };
                let mut split: Vec<IntVector> = slices[..i].to_vec();
                split.push(v1);
                split.push(v2);
                split.extend(slices[i + 1..].iter().cloned());
                let w = SlicedVector::from_slices(&split).unwrap();
                if !up.matrix.in_kernel(w.base()) || has_conformal_decomposition(w.base(), &up.matrix).unwrap().is_some() {
                    return Err(format!("{model} {dims} r={r}: split of {u:?} is not a Graver element"));
                }
                here += 1;
            }
        }
        verified += here;
    }
    Ok(verified)
}
