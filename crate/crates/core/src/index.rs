//! Mutable edge index shared by the containment matcher and the search
//! engines. Edge membership uses bit masks when all vertex ids fit in 64 bits.

use std::collections::HashSet;

use crate::hypercore::{mask_of, Hypergraph};

#[derive(Debug, Clone)]
enum EdgeSet {
    Bits(HashSet<u64>),
    Tuples(HashSet<Vec<usize>>),
}

#[derive(Debug, Clone)]
pub(crate) struct HostIndex {
    n: usize,
    r: usize,
    edges: EdgeSet,
    degree: Vec<usize>,
    /// `codeg[u * n + v]`: number of edges containing both `u` and `v`.
    codeg: Vec<u32>,
}

impl HostIndex {
    pub fn new(n: usize, r: usize) -> Self {
        let edges = if n <= 64 {
            EdgeSet::Bits(HashSet::new())
        } else {
            EdgeSet::Tuples(HashSet::new())
        };
        HostIndex {
            n,
            r,
            edges,
            degree: vec![0; n],
            codeg: vec![0; n * n],
        }
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        let mut idx = HostIndex::new(h.n(), h.r());
        for e in h.edges() {
            idx.insert(e);
        }
        idx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn codegree(&self, u: usize, v: usize) -> u32 {
        self.codeg[u * self.n + v]
    }

    /// `e` must be sorted and not yet present.
    pub fn insert(&mut self, e: &[usize]) {
        let fresh = match &mut self.edges {
            EdgeSet::Bits(s) => s.insert(mask_of(e)),
            EdgeSet::Tuples(s) => s.insert(e.to_vec()),
        };
        debug_assert!(fresh, "edge {e:?} inserted twice");
        self.adjust(e, 1);
    }

    /// `e` must be sorted and present.
    pub fn remove(&mut self, e: &[usize]) {
        let found = match &mut self.edges {
            EdgeSet::Bits(s) => s.remove(&mask_of(e)),
            EdgeSet::Tuples(s) => s.remove(e),
        };
        debug_assert!(found, "edge {e:?} not present");
        self.adjust(e, -1);
    }

    fn adjust(&mut self, e: &[usize], delta: i32) {
        for (i, &u) in e.iter().enumerate() {
            self.degree[u] = (self.degree[u] as i64 + delta as i64) as usize;
            for &v in &e[i + 1..] {
                let a = u * self.n + v;
                let b = v * self.n + u;
                self.codeg[a] = (self.codeg[a] as i32 + delta) as u32;
                self.codeg[b] = self.codeg[a];
            }
        }
    }

    /// Membership test for a vertex set given in any order.
    pub fn contains(&self, e: &[usize]) -> bool {
        match &self.edges {
            EdgeSet::Bits(s) => s.contains(&mask_of(e)),
            EdgeSet::Tuples(s) => {
                let mut t = e.to_vec();
                t.sort_unstable();
                s.contains(&t)
            }
        }
    }
}
