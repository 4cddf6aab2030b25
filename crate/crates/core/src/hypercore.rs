//! The hypergraph data model together with the three structural operators
//! used throughout the crate: suspension, link and blowup.
//!
//! Vertices are dense ids `0..n`. Edges are strictly increasing vertex
//! tuples kept in ascending lexicographic order, so two hypergraphs compare
//! equal exactly when they are equal as labeled objects. Isomorphism lives in
//! [`crate::embed`].

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `r`-uniform hypergraph on the vertex set `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

/// A hypergraph with `r == 2`.
pub type Graph = Hypergraph;

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.r, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            n: h.n,
            r: h.r,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and the edge list.
    ///
    /// Fails on `r < 2`, on edges of the wrong size, with repeated or
    /// out-of-range vertices, and on duplicate edges.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if r < 2 {
            return Err(Error::InvalidUniformity(format!(
                "uniformity must be at least 2, got {r}"
            )));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::InvalidEdge {
                    edge: e,
                    reason: format!("expected {r} vertices"),
                });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge {
                    edge: e,
                    reason: "repeated vertex".into(),
                });
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::OutOfRange { vertex: v, n });
                }
            }
            if !set.insert(e.clone()) {
                return Err(Error::DuplicateEdge(e));
            }
        }
        Ok(Hypergraph {
            n,
            r,
            edges: set.into_iter().collect(),
        })
    }

    /// Like [`Hypergraph::new`] but silently merges duplicate edges.
    pub fn from_edges_dedup<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let set: BTreeSet<Vec<usize>> = edges
            .into_iter()
            .map(|e| {
                let mut e = e.as_ref().to_vec();
                e.sort_unstable();
                e
            })
            .collect();
        Hypergraph::new(n, r, set)
    }

    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Hypergraph::new(n, r, std::iter::empty::<Vec<usize>>())
    }

    /// The complete `r`-graph on `n` vertices.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        Hypergraph::new(n, r, (0..n).combinations(r))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Number of edges containing every vertex of `set`.
    pub fn set_degree(&self, set: &[usize]) -> usize {
        self.edges
            .iter()
            .filter(|e| set.iter().all(|v| e.contains(v)))
            .count()
    }

    /// Vertices lying in at least one edge, ascending.
    pub fn non_isolated(&self) -> Vec<usize> {
        let deg = self.degrees();
        (0..self.n).filter(|&v| deg[v] > 0).collect()
    }

    /// Minimum vertex degree; `0` when some vertex is isolated or `n == 0`.
    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Edges as bit masks, available when every vertex id fits in a `u64`.
    pub fn edge_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(self.edges.iter().map(|e| mask_of(e)).collect())
    }

    /// Drops isolated vertices, relabeling the rest order-preservingly.
    pub fn without_isolated(&self) -> Hypergraph {
        let keep = self.non_isolated();
        self.induced(&keep)
            .expect("non-isolated vertices are in range")
    }

    /// Applies a vertex relabeling `perm[old] = new` onto `n` vertices.
    pub fn relabel(&self, perm: &[usize], n: usize) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "relabeling has {} entries for {} vertices",
                perm.len(),
                self.n
            )));
        }
        Hypergraph::new(
            n,
            self.r,
            self.edges
                .iter()
                .map(|e| e.iter().map(|&v| perm[v]).collect::<Vec<_>>()),
        )
    }

    /// The subhypergraph induced on `vertices`, relabeled order-preservingly
    /// to `0..|U|`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Hypergraph> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::OutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        Hypergraph::new(
            keep.len(),
            self.r,
            self.edges
                .iter()
                .filter(|e| e.iter().all(|&v| new_id[v] != usize::MAX))
                .map(|e| e.iter().map(|&v| new_id[v]).collect::<Vec<_>>()),
        )
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.r != other.r {
            return Err(Error::UniformityMismatch {
                host: self.r,
                pattern: other.r,
            });
        }
        let off = self.n;
        let shifted = other
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| v + off).collect::<Vec<_>>());
        Hypergraph::new(
            self.n + other.n,
            self.r,
            self.edges.iter().cloned().chain(shifted),
        )
    }

    /// Whether every pair of vertices lies in at most one edge.
    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .flat_map(|e| e.iter().copied().tuple_combinations::<(usize, usize)>())
            .all(|p| seen.insert(p))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Hypergraph> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hypergraph(n={}, r={}, {:?})",
            self.n, self.r, self.edges
        )
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

pub(crate) fn mask_of(e: &[usize]) -> u64 {
    e.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

/// The `r`-uniform suspension: `r - 2` fresh vertices `n..n+r-2` are added to
/// every edge of `graph`.
pub fn suspend(graph: &Graph, r: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::InvalidUniformity(format!(
            "suspension uniformity must be at least 2, got {r}"
        )));
    }
    if graph.r() != 2 {
        return Err(Error::InvalidUniformity(format!(
            "only graphs can be suspended, got a {}-uniform hypergraph",
            graph.r()
        )));
    }
    let n = graph.n();
    let apex: Vec<usize> = (n..n + r - 2).collect();
    Hypergraph::new(
        n + r - 2,
        r,
        graph
            .edges()
            .iter()
            .map(|e| e.iter().chain(apex.iter()).copied().collect::<Vec<_>>()),
    )
}

/// The link hypergraph of `set`: edges containing `set` with `set` removed.
///
/// The result keeps all `n` vertices; those of `set` become isolated.
pub fn link(h: &Hypergraph, set: &[usize]) -> Result<Hypergraph> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&v) = s.iter().find(|&&v| v >= h.n()) {
        return Err(Error::OutOfRange {
            vertex: v,
            n: h.n(),
        });
    }
    if s.len() + 2 > h.r() {
        return Err(Error::InvalidLinkArity {
            set: s.len(),
            r: h.r(),
        });
    }
    Hypergraph::new(
        h.n(),
        h.r() - s.len(),
        h.edges()
            .iter()
            .filter(|e| s.iter().all(|v| e.contains(v)))
            .map(|e| {
                e.iter()
                    .copied()
                    .filter(|v| !s.contains(v))
                    .collect::<Vec<_>>()
            }),
    )
}

/// Replaces each vertex `v` by an independent class of `sizes[v]` vertices and
/// each edge by all of its transversals. Classes are laid out consecutively in
/// vertex order.
pub fn blowup(h: &Hypergraph, sizes: &[i64]) -> Result<Hypergraph> {
    if sizes.len() != h.n() {
        return Err(Error::InvalidParameter(format!(
            "expected {} class sizes, got {}",
            h.n(),
            sizes.len()
        )));
    }
    if let Some((vertex, &size)) = sizes.iter().enumerate().find(|(_, &s)| s <= 0) {
        return Err(Error::InvalidSize { vertex, size });
    }
    let sizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
    let mut start = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in &sizes {
        start.push(total);
        total += s;
    }
    let edges = h.edges().iter().flat_map(|e| {
        e.iter()
            .map(|&v| (start[v]..start[v] + sizes[v]).collect::<Vec<_>>())
            .multi_cartesian_product()
    });
    Hypergraph::new(total, h.r(), edges)
}

/// Shape of a link graph once isolated vertices are discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkClass {
    Empty,
    /// Exactly one edge: simultaneously a matching and a star.
    SingleEdge,
    /// At least two pairwise disjoint edges.
    Matching,
    /// At least two edges, all through one common vertex.
    StarWithAtLeast2Edges,
    Other,
}

impl LinkClass {
    /// Classifies an arbitrary graph.
    pub fn of_graph(g: &Graph) -> LinkClass {
        let edges = g.edges();
        match edges.len() {
            0 => LinkClass::Empty,
            1 => LinkClass::SingleEdge,
            _ => {
                let deg = g.degrees();
                if deg.iter().all(|&d| d <= 1) {
                    LinkClass::Matching
                } else if deg.contains(&edges.len()) {
                    LinkClass::StarWithAtLeast2Edges
                } else {
                    LinkClass::Other
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LinkClass::Empty => "empty",
            LinkClass::SingleEdge => "single-edge",
            LinkClass::Matching => "matching",
            LinkClass::StarWithAtLeast2Edges => "star",
            LinkClass::Other => "other",
        }
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Class of the link graph of vertex `v` in a 3-graph.
pub fn classify_link(h: &Hypergraph, v: usize) -> Result<LinkClass> {
    if h.r() != 3 {
        return Err(Error::InvalidUniformity(format!(
            "link classification needs a 3-graph, got r = {}",
            h.r()
        )));
    }
    Ok(LinkClass::of_graph(&link(h, &[v])?))
}

/// Induced subhypergraph on `vertices`; see [`Hypergraph::induced`].
pub fn induced(h: &Hypergraph, vertices: &[usize]) -> Result<Hypergraph> {
    h.induced(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Hypergraph::new(3, 2, [[0, 1], [1, 2], [0, 2]]).unwrap()
    }

    #[test]
    fn new_rejects_malformed_edges() {
        assert!(matches!(
            Hypergraph::new(3, 1, [[0]]),
            Err(Error::InvalidUniformity(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[0, 3]]),
            Err(Error::OutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[1, 1]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, [[0, 1], [1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, [vec![0, 1]]),
            Err(Error::InvalidEdge { .. })
        ));
    }

    #[test]
    fn json_is_canonical() {
        let h = Hypergraph::new(5, 3, [[4, 3, 2], [0, 2, 1]]).unwrap();
        assert_eq!(h.to_json(), r#"{"n":5,"r":3,"edges":[[0,1,2],[2,3,4]]}"#);
        assert_eq!(Hypergraph::from_json(&h.to_json()).unwrap(), h);
        assert!(Hypergraph::from_json(r#"{"n":2,"r":2,"edges":[[0,2]]}"#).is_err());
    }

    #[test]
    fn suspend_triangle_is_k4_minus() {
        let s = suspend(&k3(), 3).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.edges(), &[vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        // K4^3 minus the edge {0,1,2}
        let k4 = Hypergraph::complete(4, 3).unwrap();
        assert_eq!(k4.edge_count() - 1, s.edge_count());
        assert!(s.edges().iter().all(|e| k4.has_edge(e)));
    }

    #[test]
    fn suspend_at_two_is_identity() {
        assert_eq!(suspend(&k3(), 2).unwrap(), k3());
        assert!(matches!(
            suspend(&k3(), 1),
            Err(Error::InvalidUniformity(_))
        ));
    }

    #[test]
    fn suspend_matching_is_sunflower() {
        let m2 = Hypergraph::new(4, 2, [[0, 1], [2, 3]]).unwrap();
        let s = suspend(&m2, 3).unwrap();
        assert_eq!(s.n(), 5);
        assert_eq!(s.edge_count(), 2);
        let (a, b) = (&s.edges()[0], &s.edges()[1]);
        assert_eq!(a.iter().filter(|v| b.contains(v)).count(), 1);
        // r = 5: 4 + 3 vertices, core of size 3
        let s5 = suspend(&m2, 5).unwrap();
        assert_eq!(s5.n(), 7);
        let (a, b) = (&s5.edges()[0], &s5.edges()[1]);
        assert_eq!(a.iter().filter(|v| b.contains(v)).count(), 3);
    }

    #[test]
    fn link_inverts_suspension() {
        let s = suspend(&k3(), 3).unwrap();
        let l = link(&s, &[3]).unwrap();
        assert_eq!(l.r(), 2);
        assert_eq!(l.n(), 4);
        assert_eq!(l.without_isolated(), k3());
    }

    #[test]
    fn link_of_complete() {
        let k5 = Hypergraph::complete(5, 3).unwrap();
        let l = link(&k5, &[2]).unwrap();
        assert_eq!(l.edge_count(), 6);
        assert_eq!(l.degree(2), 0);
        assert_eq!(l.without_isolated(), Hypergraph::complete(4, 2).unwrap());
        assert!(matches!(
            link(&k5, &[0, 1]),
            Err(Error::InvalidLinkArity { set: 2, r: 3 })
        ));
        assert_eq!(link(&k5, &[]).unwrap(), k5);
    }

    #[test]
    fn blowup_edge_is_c4() {
        let k2 = Hypergraph::new(2, 2, [[0, 1]]).unwrap();
        let b = blowup(&k2, &[2, 2]).unwrap();
        assert_eq!(b.edges(), &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(matches!(
            blowup(&k2, &[1, 0]),
            Err(Error::InvalidSize { vertex: 1, size: 0 })
        ));
        assert!(matches!(
            blowup(&k2, &[-3, 1]),
            Err(Error::InvalidSize {
                vertex: 0,
                size: -3
            })
        ));
    }

    #[test]
    fn blowup_single_triple() {
        let e = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let b = blowup(&e, &[2, 1, 1]).unwrap();
        assert_eq!(b.n(), 4);
        assert_eq!(b.edges(), &[vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn classify_links() {
        let h = Hypergraph::new(6, 3, [[0, 1, 2], [0, 3, 4], [1, 3, 5]]).unwrap();
        assert_eq!(classify_link(&h, 0).unwrap(), LinkClass::Matching);
        assert_eq!(classify_link(&h, 2).unwrap(), LinkClass::SingleEdge);
        let star = Hypergraph::new(5, 3, [[0, 1, 2], [0, 1, 3], [0, 1, 4]]).unwrap();
        assert_eq!(
            classify_link(&star, 0).unwrap(),
            LinkClass::StarWithAtLeast2Edges
        );
        assert_eq!(classify_link(&star, 2).unwrap(), LinkClass::SingleEdge);
        let k4 = Hypergraph::complete(4, 3).unwrap();
        assert_eq!(classify_link(&k4, 0).unwrap(), LinkClass::Other);
        let iso = Hypergraph::new(4, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(classify_link(&iso, 3).unwrap(), LinkClass::Empty);
        assert!(classify_link(&Hypergraph::complete(4, 2).unwrap(), 0).is_err());
    }

    #[test]
    fn induced_relabels() {
        let k5 = Hypergraph::complete(5, 3).unwrap();
        let sub = induced(&k5, &[4, 1, 3, 0]).unwrap();
        assert_eq!(sub, Hypergraph::complete(4, 3).unwrap());
        assert_eq!(induced(&k5, &[0, 1, 2, 3, 4]).unwrap(), k5);
        assert!(matches!(
            induced(&k5, &[5]),
            Err(Error::OutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn linearity() {
        let h = Hypergraph::new(6, 3, [[0, 1, 2], [0, 3, 4]]).unwrap();
        assert!(h.is_linear());
        let h = Hypergraph::new(6, 3, [[0, 1, 2], [0, 1, 4]]).unwrap();
        assert!(!h.is_linear());
    }
}
