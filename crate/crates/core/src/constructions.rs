//! Designs and explicit lower-bound constructions.

use std::collections::HashMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embed::AnchoredPattern;
use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::index::HostIndex;

/// Parameters of an `(n, r, k, lambda)`-design: every `k`-set of the `n`
/// points lies in exactly `lambda` blocks of size `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignParams {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignParams {
    pub fn new(n: usize, r: usize, k: usize, lambda: usize) -> Result<Self> {
        if !(1 <= k && k < r && r <= n) || lambda < 1 {
            return Err(Error::InvalidParameter(format!(
                "design parameters need 1 <= k < r <= n and lambda >= 1, got ({n},{r},{k},{lambda})"
            )));
        }
        Ok(DesignParams { n, r, k, lambda })
    }

    pub fn is_satisfied_by(&self, h: &Hypergraph) -> Result<bool> {
        Ok(h.n() == self.n && h.r() == self.r && validate_design(h, self.k, self.lambda)?)
    }
}

pub fn is_sts_order(m: usize) -> bool {
    m % 6 == 1 || m % 6 == 3
}

/// A Steiner triple system on `m` points: Bose's construction for
/// `m = 3 (mod 6)`, Skolem's for `m = 1 (mod 6)`.
pub fn steiner_triple_system(m: usize) -> Result<Hypergraph> {
    if m < 7 || !is_sts_order(m) {
        return Err(Error::NoDesign(m));
    }
    Ok(sts(m))
}

/// Also covers the degenerate orders 1 and 3.
pub(crate) fn sts(m: usize) -> Hypergraph {
    debug_assert!(is_sts_order(m));
    let blocks = if m % 6 == 3 {
        bose(m / 3)
    } else {
        skolem((m - 1) / 6)
    };
    Hypergraph::new(m, 3, blocks).expect("Steiner triple system blocks are valid")
}

/// Bose: points `(x, i)` of `Z_q x Z_3` (`q` odd) numbered `x + q i`, with the
/// idempotent commutative quasigroup `x o y = (x + y)(q + 1)/2 mod q`.
fn bose(q: usize) -> Vec<[usize; 3]> {
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let op = |x: usize, y: usize| (x + y) * (q + 1) / 2 % q;
    let mut blocks: Vec<[usize; 3]> = (0..q).map(|x| [pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for (x, y) in (0..q).tuple_combinations() {
        for i in 0..3 {
            blocks.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
        }
    }
    blocks
}

/// Skolem: points `(x, i)` of `Z_{2s} x Z_3` numbered `x + 2s i`, plus the
/// point at infinity `6s`. The quasigroup is the addition table of `Z_{2s}`
/// with symbol `2j` renamed `j` and `2j + 1` renamed `j + s`, so that
/// `x o x = (x + s) o (x + s) = x` for `x < s`.
fn skolem(s: usize) -> Vec<[usize; 3]> {
    let q = 2 * s;
    let inf = 3 * q;
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let op = |x: usize, y: usize| {
        let k = (x + y) % q;
        if k.is_multiple_of(2) {
            k / 2
        } else {
            (k - 1) / 2 + s
        }
    };
    let mut blocks: Vec<[usize; 3]> = (0..s).map(|x| [pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for x in 0..s {
        for i in 0..3 {
            blocks.push([inf, pt(x + s, i), pt(x, i + 1)]);
        }
    }
    for (x, y) in (0..q).tuple_combinations() {
        for i in 0..3 {
            blocks.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
        }
    }
    blocks
}

/// Whether every `k`-subset of the vertex set lies in exactly `lambda` edges.
pub fn validate_design(h: &Hypergraph, k: usize, lambda: usize) -> Result<bool> {
    if k >= h.r() {
        return Err(Error::InvalidParameter(format!(
            "subset size k = {k} must be smaller than the block size {}",
            h.r()
        )));
    }
    let mut cover: HashMap<Vec<usize>, usize> = HashMap::new();
    for e in h.edges() {
        for sub in e.iter().copied().combinations(k) {
            *cover.entry(sub).or_default() += 1;
        }
    }
    Ok((0..h.n())
        .combinations(k)
        .all(|sub| cover.get(&sub).copied().unwrap_or(0) == lambda))
}

/// Vertex layout of [`fores_construction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForesLayout {
    /// Size of the Steiner triple system on `0..m`.
    pub m: usize,
    /// The pairs `S_i`, each joined to every vertex of the triple system.
    pub pairs: Vec<[usize; 2]>,
    /// Isolated vertex left over when `n - m` is odd.
    pub leftover: Option<usize>,
}

impl ForesLayout {
    pub fn new(n: usize) -> Result<Self> {
        if n < 9 {
            return Err(Error::InvalidParameter(format!(
                "the construction needs n >= 9, got {n}"
            )));
        }
        let target = (3 * n - 1) / 4;
        let m = (1..=target)
            .rev()
            .find(|&m| is_sts_order(m))
            .expect("1 is an admissible order");
        let pairs = (0..(n - m) / 2)
            .map(|i| [m + 2 * i, m + 2 * i + 1])
            .collect();
        let leftover = ((n - m) % 2 == 1).then_some(n - 1);
        Ok(ForesLayout { m, pairs, leftover })
    }

    /// `m(m-1)/6 + m * floor((n-m)/2)`.
    pub fn edge_count(&self) -> usize {
        self.m * (self.m - 1) / 6 + self.m * self.pairs.len()
    }
}

/// A `S^3(P_3 + K_2)`-free 3-graph on `n` vertices: a Steiner triple system on
/// `m` vertices, `m` the largest admissible order at most `floor((3n-1)/4)`,
/// with the remaining vertices paired up and every pair joined to every
/// system vertex.
pub fn fores_construction(n: usize) -> Result<Hypergraph> {
    let layout = ForesLayout::new(n)?;
    let m = layout.m;
    let base = sts(m);
    let joins = layout
        .pairs
        .iter()
        .flat_map(|&[a, b]| (0..m).map(move |v| vec![v, a, b]));
    Hypergraph::new(n, 3, base.edges().iter().cloned().chain(joins))
}

/// All `r`-subsets of the blocks of `design`, deduplicated.
pub fn design_shadow_construction(design: &Hypergraph, r: usize) -> Result<Hypergraph> {
    if r >= design.r() {
        return Err(Error::InvalidParameter(format!(
            "shadow uniformity {r} must be below the block size {}",
            design.r()
        )));
    }
    if r < 2 {
        return Err(Error::InvalidUniformity(format!(
            "shadow uniformity must be at least 2, got {r}"
        )));
    }
    Hypergraph::from_edges_dedup(
        design.n(),
        r,
        design
            .edges()
            .iter()
            .flat_map(|e| e.iter().copied().combinations(r)),
    )
}

/// `floor(n/b)` consecutive pairwise disjoint blocks of size `b`; leftover
/// vertices stay isolated.
pub fn disjoint_blocks(n: usize, b: usize) -> Result<Hypergraph> {
    if b > n {
        return Err(Error::InvalidParameter(format!(
            "block size {b} exceeds the vertex count {n}"
        )));
    }
    Hypergraph::new(
        n,
        b,
        (0..n / b).map(|i| (i * b..(i + 1) * b).collect::<Vec<_>>()),
    )
}

fn free_packing(
    n: usize,
    r: usize,
    forbidden: &[Hypergraph],
    order: impl IntoIterator<Item = Vec<usize>>,
) -> Result<Hypergraph> {
    if let Some(p) = forbidden.iter().find(|p| p.r() != r) {
        return Err(Error::UniformityMismatch {
            host: r,
            pattern: p.r(),
        });
    }
    let anchored: Vec<AnchoredPattern> = forbidden.iter().map(AnchoredPattern::new).collect();
    let mut host = HostIndex::new(n, r);
    let mut kept = Vec::new();
    for e in order {
        host.insert(&e);
        if anchored.iter().any(|a| a.has_copy_through(&host, &e)) {
            host.remove(&e);
        } else {
            kept.push(e);
        }
    }
    Hypergraph::new(n, r, kept)
}

/// Greedy maximal free packing over the `r`-sets in lexicographic order.
pub fn greedy_free_packing(n: usize, r: usize, forbidden: &[Hypergraph]) -> Result<Hypergraph> {
    free_packing(n, r, forbidden, (0..n).combinations(r))
}

/// Greedy maximal free packing over the `r`-sets in a seeded random order.
pub fn random_free_packing(
    n: usize,
    r: usize,
    forbidden: &[Hypergraph],
    seed: u64,
) -> Result<Hypergraph> {
    let mut order: Vec<Vec<usize>> = (0..n).combinations(r).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    free_packing(n, r, forbidden, order)
}
