//! Sign-pattern trie over a fixed list of coordinates, used to find
//! conformal reducers and compatible completion partners quickly.

use crate::int::Int;
use crate::lattice::IntVector;

const NONE: u32 = u32::MAX;

#[derive(Clone)]
struct Node {
    /// Children for sign 0, +, −.
    child: [u32; 3],
    items: Vec<u32>,
}

impl Node {
    fn new() -> Self {
        Node { child: [NONE; 3], items: Vec::new() }
    }
}

fn slot(x: &Int) -> usize {
    match x.signum() {
        0 => 0,
        1 => 1,
        _ => 2,
    }
}

pub(crate) struct SignTrie {
    coords: Vec<usize>,
    nodes: Vec<Node>,
}

impl SignTrie {
    pub fn new(coords: Vec<usize>) -> Self {
        SignTrie { coords, nodes: vec![Node::new()] }
    }

    pub fn insert(&mut self, v: &IntVector, id: u32) {
        let mut at = 0usize;
        for &c in &self.coords {
            let s = slot(&v[c]);
            let next = self.nodes[at].child[s];
            at = if next == NONE {
                self.nodes.push(Node::new());
                let id = (self.nodes.len() - 1) as u32;
                self.nodes[at].child[s] = id;
                id as usize
            } else {
                next as usize
            };
        }
        self.nodes[at].items.push(id);
    }

    /// First stored `g ⊑ s` on the trie coordinates (sign-compatible and
    /// dominated), skipping `skip`.
    pub fn find_reducer(&self, s: &IntVector, store: &[IntVector], skip: Option<u32>) -> Option<u32> {
        self.reducer_rec(0, 0, s, store, skip)
    }

    fn reducer_rec(&self, at: usize, depth: usize, s: &IntVector, store: &[IntVector], skip: Option<u32>) -> Option<u32> {
        let node = &self.nodes[at];
        if depth == self.coords.len() {
            return node.items.iter().copied().find(|&id| {
                Some(id) != skip && {
                    let g = &store[id as usize];
                    self.coords.iter().all(|&c| g[c].cmp_abs(&s[c]) != std::cmp::Ordering::Greater)
                }
            });
        }
        let sc = slot(&s[self.coords[depth]]);
        for branch in [0, sc] {
            let next = node.child[branch];
            if next != NONE {
                if let Some(hit) = self.reducer_rec(next as usize, depth + 1, s, store, skip) {
                    return Some(hit);
                }
            }
            if sc == 0 {
                break;
            }
        }
        None
    }

    /// All stored `g` whose sign at each trie coordinate is allowed by `allow(depth, slot)`.
    pub fn collect(&self, allow: &dyn Fn(usize, usize) -> bool, out: &mut Vec<u32>) {
        self.collect_rec(0, 0, allow, out);
    }

    fn collect_rec(&self, at: usize, depth: usize, allow: &dyn Fn(usize, usize) -> bool, out: &mut Vec<u32>) {
        let node = &self.nodes[at];
        if depth == self.coords.len() {
            out.extend_from_slice(&node.items);
            return;
        }
        for s in 0..3 {
            let next = node.child[s];
            if next != NONE && allow(depth, s) {
                self.collect_rec(next as usize, depth + 1, allow, out);
            }
        }
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

pub(crate) fn sign_slot(x: &Int) -> usize {
    slot(x)
}
