//! Completion on machine integers. Vectors live in one flat `i32` buffer
//! and reducers are found through a trie keyed by entry value, so the
//! search only descends into entries dominated by the query. Any overflow
//! abandons the run and the caller repeats it with exact integers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::caps::Caps;
use crate::error::{CapKind, Error, Result};
use crate::int::Int;
use crate::lattice::IntVector;

const NONE: u32 = u32::MAX;
/// Entries beyond this are handed to the exact engine.
const LIMIT: i64 = 1 << 28;

pub(crate) enum Outcome {
    Done(Vec<IntVector>),
    Overflow,
}

/// Children of a node form a sibling chain sorted by key.
#[derive(Clone, Copy)]
struct Node {
    key: i32,
    child: u32,
    sibling: u32,
    /// Stored id at leaves.
    item: u32,
}

struct ValueTrie {
    coords: Vec<usize>,
    nodes: Vec<Node>,
}

impl ValueTrie {
    fn new(coords: Vec<usize>) -> Self {
        ValueTrie { coords, nodes: vec![Node { key: 0, child: NONE, sibling: NONE, item: NONE }] }
    }

    fn push(&mut self, key: i32, sibling: u32) -> u32 {
        self.nodes.push(Node { key, child: NONE, sibling, item: NONE });
        (self.nodes.len() - 1) as u32
    }

    fn insert(&mut self, v: &[i32], id: u32) {
        let mut at = 0u32;
        for d in 0..self.coords.len() {
            let key = v[self.coords[d]];
            let mut prev = NONE;
            let mut cur = self.nodes[at as usize].child;
            while cur != NONE && self.nodes[cur as usize].key < key {
                prev = cur;
                cur = self.nodes[cur as usize].sibling;
            }
            at = if cur != NONE && self.nodes[cur as usize].key == key {
                cur
            } else {
                let new = self.push(key, cur);
                if prev == NONE {
                    self.nodes[at as usize].child = new;
                } else {
                    self.nodes[prev as usize].sibling = new;
                }
                new
            };
        }
        self.nodes[at as usize].item = id;
    }

    /// A stored `g ≠ skip` with `g ⊑ s` on the trie coordinates.
    fn find_reducer(&self, s: &[i32], skip: u32) -> Option<u32> {
        self.reducer_rec(0, 0, s, skip)
    }

    fn reducer_rec(&self, at: u32, depth: usize, s: &[i32], skip: u32) -> Option<u32> {
        if depth == self.coords.len() {
            let item = self.nodes[at as usize].item;
            return (item != skip).then_some(item);
        }
        let x = s[self.coords[depth]];
        let (lo, hi) = if x >= 0 { (0, x) } else { (x, 0) };
        let mut cur = self.nodes[at as usize].child;
        while cur != NONE {
            let node = self.nodes[cur as usize];
            if node.key > hi {
                break;
            }
            if node.key >= lo {
                if let Some(hit) = self.reducer_rec(cur, depth + 1, s, skip) {
                    return Some(hit);
                }
            }
            cur = node.sibling;
        }
        None
    }

    /// Items whose key at each depth lies in `ranges[depth]`.
    fn collect(&self, ranges: &[(i32, i32)], out: &mut Vec<u32>) {
        self.collect_rec(0, 0, ranges, out);
    }

    fn collect_rec(&self, at: u32, depth: usize, ranges: &[(i32, i32)], out: &mut Vec<u32>) {
        if depth == self.coords.len() {
            out.push(self.nodes[at as usize].item);
            return;
        }
        let (lo, hi) = ranges[depth];
        let mut cur = self.nodes[at as usize].child;
        while cur != NONE {
            let node = self.nodes[cur as usize];
            if node.key > hi {
                break;
            }
            if node.key >= lo {
                self.collect_rec(cur, depth + 1, ranges, out);
            }
            cur = node.sibling;
        }
    }
}

struct Engine<'c> {
    caps: &'c Caps,
    n: usize,
    /// Row `2k` is class `k`, row `2k + 1` its negation.
    data: Vec<i32>,
    trie: ValueTrie,
    heap: BinaryHeap<Reverse<(u64, u64, u32, u32)>>,
    seq: u64,
    overflow: bool,
}

impl<'c> Engine<'c> {
    fn row(&self, id: u32) -> &[i32] {
        let at = id as usize * self.n;
        &self.data[at..at + self.n]
    }

    fn classes(&self) -> usize {
        self.data.len() / self.n / 2
    }

    fn active_zero(&self, v: &[i32]) -> bool {
        self.trie.coords.iter().all(|&c| v[c] == 0)
    }

    /// `s += sign·row(id)`, flagging entries that leave the safe range.
    fn add_row(&mut self, s: &mut [i32], id: u32, sign: i64) {
        let at = id as usize * self.n;
        let mut big = false;
        for (x, &y) in s.iter_mut().zip(&self.data[at..at + self.n]) {
            let z = *x as i64 + sign * y as i64;
            big |= z.abs() >= LIMIT;
            *x = z as i32;
        }
        self.overflow |= big;
    }

    fn normal_form(&mut self, s: &mut [i32]) {
        while !self.overflow {
            let Some(id) = self.trie.find_reducer(s, NONE) else {
                break;
            };
            self.add_row(s, id, -1);
            if self.active_zero(s) {
                break;
            }
        }
    }

    fn partial(&self) -> Vec<IntVector> {
        (0..self.classes()).map(|k| to_int(self.row(2 * k as u32))).collect()
    }

    fn partners(&self, v: &[i32], new_coord: Option<usize>) -> Vec<u32> {
        let mut out = Vec::new();
        match new_coord {
            Some(j) => {
                if v[j] == 0 {
                    return out;
                }
                let ranges: Vec<(i32, i32)> = self
                    .trie
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(d, &c)| {
                        let x = v[c];
                        if d == 0 {
                            if x > 0 {
                                (i32::MIN, -1)
                            } else {
                                (1, i32::MAX)
                            }
                        } else if x > 0 {
                            (0, i32::MAX)
                        } else if x < 0 {
                            (i32::MIN, 0)
                        } else {
                            (i32::MIN, i32::MAX)
                        }
                    })
                    .collect();
                self.trie.collect(&ranges, &mut out);
            }
            None => {
                for id in 0..(2 * self.classes()) as u32 {
                    let g = self.row(id);
                    if self.trie.coords.iter().any(|&c| (v[c] > 0 && g[c] < 0) || (v[c] < 0 && g[c] > 0)) {
                        out.push(id);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn insert(&mut self, mut v: Vec<i32>, new_coord: Option<usize>) -> Result<()> {
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let class = self.classes() as u32;
        for p in self.partners(&v, new_coord) {
            let g = self.row(p);
            let norm: u64 = self.trie.coords.iter().map(|&c| (v[c] as i64 + g[c] as i64).unsigned_abs()).sum();
            self.seq += 1;
            self.heap.push(Reverse((norm, self.seq, 2 * class, p)));
        }
        let neg: Vec<i32> = v.iter().map(|x| -x).collect();
        self.trie.insert(&v, 2 * class);
        self.trie.insert(&neg, 2 * class + 1);
        self.data.extend_from_slice(&v);
        self.data.extend_from_slice(&neg);
        if self.classes() > self.caps.max_basis_elements {
            return Err(Error::CapExceeded {
                kind: CapKind::BasisElements,
                detail: Some(format!("{} generators", self.classes())),
                partial: Some(self.partial()),
            });
        }
        Ok(())
    }

    fn run(&mut self, seeds: &[Vec<i32>], new_coord: Option<usize>) -> Result<()> {
        for v in seeds {
            let mut nf = v.clone();
            self.normal_form(&mut nf);
            if self.overflow {
                return Ok(());
            }
            if !self.active_zero(&nf) {
                self.insert(nf, new_coord)?;
            }
        }
        let mut s = vec![0i32; self.n];
        let mut popped: u64 = 0;
        while let Some(Reverse((_, _, a, b))) = self.heap.pop() {
            popped += 1;
            if popped % 1024 == 0 && self.caps.check_time().is_err() {
                return Err(Error::CapExceeded {
                    kind: CapKind::TimeLimit,
                    detail: Some("completion".into()),
                    partial: Some(self.partial()),
                });
            }
            s.copy_from_slice(self.row(a));
            self.add_row(&mut s, b, 1);
            self.normal_form(&mut s);
            if self.overflow {
                return Ok(());
            }
            if !self.active_zero(&s) {
                self.insert(s.clone(), new_coord)?;
            }
        }
        Ok(())
    }

    fn interreduced(&self) -> Vec<IntVector> {
        (0..self.classes() as u32)
            .filter(|&k| self.trie.find_reducer(self.row(2 * k), 2 * k).is_none())
            .map(|k| to_int(self.row(2 * k)))
            .collect()
    }
}

fn to_int(v: &[i32]) -> IntVector {
    v.iter().map(|&x| Int::from(x as i64)).collect()
}

fn to_small(v: &IntVector) -> Option<Vec<i32>> {
    v.iter().map(|x| x.to_i64().filter(|y| y.abs() < LIMIT).map(|y| y as i32)).collect()
}

/// Completes `seeds` over `coords` (the new coordinate first when lifting).
pub(crate) fn complete(
    seeds: &[IntVector],
    coords: Vec<usize>,
    new_coord: Option<usize>,
    n: usize,
    caps: &Caps,
) -> Result<Outcome> {
    let Some(small) = seeds.iter().map(to_small).collect::<Option<Vec<_>>>() else {
        return Ok(Outcome::Overflow);
    };
    let mut engine = Engine {
        caps,
        n,
        data: Vec::new(),
        trie: ValueTrie::new(coords),
        heap: BinaryHeap::new(),
        seq: 0,
        overflow: false,
    };
    engine.run(&small, new_coord)?;
    if engine.overflow {
        return Ok(Outcome::Overflow);
    }
    Ok(Outcome::Done(engine.interreduced()))
}
