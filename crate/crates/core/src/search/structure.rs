//! Structural checks on `S^3(P_3 + K_2)`-free 3-graphs.
//!
//! Vertices split by the shape of their link graph: `M` holds vertices whose
//! link is a matching (empty and single-edge links included), `S1` those whose
//! link is a star with at least two edges, `S2` the rest. Five properties of
//! free 3-graphs are then checked edge by edge.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::embed::is_free;
use crate::error::{Error, Result};
use crate::hypercore::{classify_link, link, Hypergraph, LinkClass};
use crate::patterns::make_pattern;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForesPartition {
    pub m: Vec<usize>,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    /// Link class of every vertex.
    pub classes: Vec<LinkClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    M,
    S1,
    S2,
}

impl ForesPartition {
    pub fn of(h: &Hypergraph) -> Result<Self> {
        let classes: Vec<LinkClass> = (0..h.n())
            .map(|v| classify_link(h, v))
            .collect::<Result<_>>()?;
        let mut p = ForesPartition {
            m: Vec::new(),
            s1: Vec::new(),
            s2: Vec::new(),
            classes,
        };
        for (v, c) in p.classes.iter().enumerate() {
            match c {
                LinkClass::Empty | LinkClass::SingleEdge | LinkClass::Matching => p.m.push(v),
                LinkClass::StarWithAtLeast2Edges => p.s1.push(v),
                LinkClass::Other => p.s2.push(v),
            }
        }
        Ok(p)
    }

    fn part(&self, v: usize) -> Part {
        match self.classes[v] {
            LinkClass::Empty | LinkClass::SingleEdge | LinkClass::Matching => Part::M,
            LinkClass::StarWithAtLeast2Edges => Part::S1,
            LinkClass::Other => Part::S2,
        }
    }

    fn in_s(&self, v: usize) -> bool {
        self.part(v) != Part::M
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// No edge has exactly two vertices in `M`.
    NoMmsEdge,
    /// `H[M]` is linear.
    LinearOnM,
    /// Every pair `u in M`, `v in S` lies in at most one edge.
    SingleEdgePerMsPair,
    /// Every `u in S2` has between 3 and 4 non-isolated link vertices.
    S2LinkSize,
    /// No edge lies inside `S1`.
    NoEdgeInS1,
}

impl Claim {
    pub const ALL: [Claim; 5] = [
        Claim::NoMmsEdge,
        Claim::LinearOnM,
        Claim::SingleEdgePerMsPair,
        Claim::S2LinkSize,
        Claim::NoEdgeInS1,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Claim::NoMmsEdge => "(a) no MMS-type edge",
            Claim::LinearOnM => "(b) H[M] is linear",
            Claim::SingleEdgePerMsPair => "(c) at most one edge per (M,S) pair",
            Claim::S2LinkSize => "(d) 3 <= |V(L_u)| <= 4 for u in S2",
            Claim::NoEdgeInS1 => "(e) no edge inside S1",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: Claim,
    pub passed: bool,
    /// First violation found, if any.
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForesReport {
    pub partition: ForesPartition,
    pub claims: Vec<ClaimResult>,
    /// Whether the host was required (and confirmed) to be free, making the
    /// claims binding rather than diagnostic.
    pub asserted: bool,
}

impl ForesReport {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

fn result(claim: Claim, violation: Option<String>) -> ClaimResult {
    ClaimResult {
        claim,
        passed: violation.is_none(),
        violation,
    }
}

/// Computes the partition and checks the five claims. With `must_be_free`,
/// the host is first confirmed to be `S^3(P_3 + K_2)`-free.
pub fn verify_fores_structure(h: &Hypergraph, must_be_free: bool) -> Result<ForesReport> {
    if h.r() != 3 {
        return Err(Error::InvalidUniformity(format!(
            "structure check needs a 3-graph, got r = {}",
            h.r()
        )));
    }
    if must_be_free && !is_free(h, &make_pattern("S3(P3+K2)")?)? {
        return Err(Error::InvalidParameter(
            "host contains S3(P3+K2); the structure claims only bind on free hosts".into(),
        ));
    }
    let p = ForesPartition::of(h)?;
    let edges = h.edges();

    let mms = edges
        .iter()
        .find(|e| e.iter().filter(|&&v| p.part(v) == Part::M).count() == 2)
        .map(|e| format!("edge {e:?}"));

    let mut pair_count: HashMap<(usize, usize), usize> = HashMap::new();
    for e in edges {
        for (a, b) in e.iter().copied().tuple_combinations() {
            *pair_count.entry((a, b)).or_default() += 1;
        }
    }
    let m_nonlinear = edges
        .iter()
        .filter(|e| e.iter().all(|&v| p.part(v) == Part::M))
        .flat_map(|e| e.iter().copied().tuple_combinations::<(usize, usize)>())
        .find(|pair| {
            edges
                .iter()
                .filter(|f| f.iter().all(|&v| p.part(v) == Part::M))
                .filter(|f| f.contains(&pair.0) && f.contains(&pair.1))
                .count()
                > 1
        })
        .map(|(a, b)| format!("pair ({a},{b}) in several edges of H[M]"));

    let ms_pair = pair_count
        .iter()
        .filter(|(&(a, b), &c)| c > 1 && (p.in_s(a) != p.in_s(b)))
        .map(|(&pair, _)| pair)
        .min()
        .map(|(a, b)| format!("pair ({a},{b}) in {} edges", pair_count[&(a, b)]));

    let mut s2_size = None;
    for &u in &p.s2 {
        let size = link(h, &[u])?.non_isolated().len();
        if !(3..=4).contains(&size) {
            s2_size = Some(format!("vertex {u} has {size} link vertices"));
            break;
        }
    }

    let in_s1 = edges
        .iter()
        .find(|e| e.iter().all(|&v| p.part(v) == Part::S1))
        .map(|e| format!("edge {e:?}"));

    Ok(ForesReport {
        claims: vec![
            result(Claim::NoMmsEdge, mms),
            result(Claim::LinearOnM, m_nonlinear),
            result(Claim::SingleEdgePerMsPair, ms_pair),
            result(Claim::S2LinkSize, s2_size),
            result(Claim::NoEdgeInS1, in_s1),
        ],
        partition: p,
        asserted: must_be_free,
    })
}
