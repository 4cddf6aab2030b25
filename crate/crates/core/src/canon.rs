//! Canonical forms and automorphism counts for small hypergraphs.
//!
//! Both are exhaustive searches over relabelings, cut down by an
//! isomorphism-invariant colour refinement and by twin vertices (pairs whose
//! transposition is an automorphism).
//!
//! The canonical labeling is the one maximizing the edge-indicator vector
//! over all `r`-sets in colex order. Colex order puts the `r`-sets inside the
//! first `k` labels first, so a partial labeling fixes a prefix of the vector
//! and can be compared against the best labeling found so far.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;

/// Largest vertex count accepted by [`canonical_form`] and
/// [`automorphism_count`].
pub const CANON_MAX_VERTICES: usize = 12;

/// Canonically relabeled copy of a hypergraph. Two hypergraphs have equal
/// canonical forms iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm(Hypergraph);

impl CanonicalForm {
    pub fn edges(&self) -> &[Vec<usize>] {
        self.0.edges()
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.0
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.0
    }
}

fn guard(h: &Hypergraph) -> Result<()> {
    if h.n() > CANON_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count",
            limit: CANON_MAX_VERTICES,
            actual: h.n(),
        });
    }
    Ok(())
}

pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalForm> {
    guard(h)?;
    let labeling = canonical_labeling(h);
    Ok(CanonicalForm(
        h.relabel(&labeling, h.n())
            .expect("labeling is a permutation"),
    ))
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    if a.n() != b.n() || a.r() != b.r() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Order of the automorphism group.
pub fn automorphism_count(h: &Hypergraph) -> Result<u128> {
    guard(h)?;
    Ok(automorphism_count_unbounded(h))
}

/// Dense membership table over vertex masks, or a hash set for larger `n`.
struct EdgeTable {
    bits: Option<Vec<bool>>,
    set: std::collections::HashSet<u64>,
}

impl EdgeTable {
    fn new(h: &Hypergraph) -> Self {
        let masks = h.edge_masks().expect("canonical search runs on n <= 64");
        if h.n() <= 16 {
            let mut bits = vec![false; 1 << h.n()];
            for m in masks {
                bits[m as usize] = true;
            }
            EdgeTable {
                bits: Some(bits),
                set: Default::default(),
            }
        } else {
            EdgeTable {
                bits: None,
                set: masks.into_iter().collect(),
            }
        }
    }

    fn has(&self, mask: u64) -> bool {
        match &self.bits {
            Some(b) => b[mask as usize],
            None => self.set.contains(&mask),
        }
    }
}

/// Stable colour refinement seeded with degrees. Colours are ranks of
/// isomorphism-invariant signatures.
fn refine(h: &Hypergraph) -> Vec<usize> {
    let n = h.n();
    let deg = h.degrees();
    let mut colors = rank(&deg);
    let incident: Vec<Vec<&Vec<usize>>> = (0..n)
        .map(|v| h.edges().iter().filter(|e| e.contains(&v)).collect())
        .collect();
    loop {
        let classes = colors.iter().unique().count();
        let sigs: Vec<(usize, Vec<Vec<usize>>)> = (0..n)
            .map(|v| {
                let mut around: Vec<Vec<usize>> = incident[v]
                    .iter()
                    .map(|e| {
                        let mut c: Vec<usize> =
                            e.iter().filter(|&&u| u != v).map(|&u| colors[u]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let next = rank(&sigs);
        if next.iter().unique().count() == classes {
            return colors;
        }
        colors = next;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let distinct: Vec<T> = keys.iter().cloned().sorted().dedup().collect();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key is present"))
        .collect()
}

/// `twins[u][v]`: swapping `u` and `v` preserves the edge set.
#[allow(clippy::needless_range_loop)]
fn twin_table(h: &Hypergraph, table: &EdgeTable) -> Vec<Vec<bool>> {
    let n = h.n();
    let masks = h.edge_masks().expect("n <= 64");
    let mut twins = vec![vec![false; n]; n];
    for u in 0..n {
        twins[u][u] = true;
        for v in u + 1..n {
            let (bu, bv) = (1u64 << u, 1u64 << v);
            let ok = masks.iter().all(|&m| {
                let swapped = match (m & bu != 0, m & bv != 0) {
                    (true, false) => (m & !bu) | bv,
                    (false, true) => (m & !bv) | bu,
                    _ => m,
                };
                table.has(swapped)
            });
            twins[u][v] = ok;
            twins[v][u] = ok;
        }
    }
    twins
}

struct CanonSearch<'a> {
    table: &'a EdgeTable,
    /// `(r-1)`-subsets of label positions, colex order.
    subsets: Vec<Vec<usize>>,
    /// Number of subsets inside the first `k` labels, indexed by `k`.
    prefix_len: Vec<usize>,
    /// Required colour for each label position.
    slot_color: Vec<usize>,
    colors: Vec<usize>,
    twins: Vec<Vec<bool>>,
    /// `placed[k]` is the vertex carrying label `k`.
    placed: Vec<usize>,
    used: Vec<bool>,
    chunks: Vec<Vec<bool>>,
    best: Option<(Vec<Vec<bool>>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn chunk_for(&self, k: usize, v: usize) -> Vec<bool> {
        self.subsets[..self.prefix_len[k]]
            .iter()
            .map(|t| {
                let m = t
                    .iter()
                    .fold(1u64 << v, |m, &i| m | (1u64 << self.placed[i]));
                self.table.has(m)
            })
            .collect()
    }

    fn compare_prefix(&self) -> Ordering {
        match &self.best {
            None => Ordering::Greater,
            Some((best, _)) => self.chunks.iter().cmp(best[..self.chunks.len()].iter()),
        }
    }

    fn search(&mut self, k: usize) {
        let n = self.colors.len();
        if k == n {
            if self.compare_prefix() == Ordering::Greater {
                self.best = Some((self.chunks.clone(), self.placed.clone()));
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.used[v] || self.colors[v] != self.slot_color[k] {
                continue;
            }
            if tried.iter().any(|&u| self.twins[u][v]) {
                continue;
            }
            tried.push(v);
            let chunk = self.chunk_for(k, v);
            self.chunks.push(chunk);
            if self.compare_prefix() != Ordering::Less {
                self.placed.push(v);
                self.used[v] = true;
                self.search(k + 1);
                self.used[v] = false;
                self.placed.pop();
            }
            self.chunks.pop();
        }
    }
}

/// `labeling[v]` is the canonical label of vertex `v`.
fn canonical_labeling(h: &Hypergraph) -> Vec<usize> {
    let n = h.n();
    let r = h.r();
    if n == 0 {
        return Vec::new();
    }
    let table = EdgeTable::new(h);
    let colors = refine(h);
    let mut slot_color = colors.clone();
    slot_color.sort_unstable();
    let mut subsets: Vec<Vec<usize>> = (0..n).combinations(r - 1).collect();
    subsets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    let prefix_len = (0..=n)
        .map(|k| subsets.iter().filter(|t| t.iter().all(|&i| i < k)).count())
        .collect();
    let twins = twin_table(h, &table);
    let mut s = CanonSearch {
        table: &table,
        subsets,
        prefix_len,
        slot_color,
        colors,
        twins,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        chunks: Vec::with_capacity(n),
        best: None,
    };
    s.search(0);
    let (_, placed) = s.best.expect("at least one labeling exists");
    let mut labeling = vec![0; n];
    for (label, &v) in placed.iter().enumerate() {
        labeling[v] = label;
    }
    labeling
}

/// `|Aut(H)| = prod |T|! * #{automorphisms increasing on every twin class T}`:
/// the twin classes generate a normal subgroup `prod Sym(T)`, and each coset
/// holds exactly one automorphism that is increasing on every class.
pub(crate) fn automorphism_count_unbounded(h: &Hypergraph) -> u128 {
    let n = h.n();
    if n == 0 {
        return 1;
    }
    if n > 64 {
        // Bit-mask tables need n <= 64; fall back to the plain matcher.
        let index = crate::index::HostIndex::from_hypergraph(h);
        return crate::embed::count_with(&crate::embed::Plan::by_degree(h), &index) as u128;
    }
    let table = EdgeTable::new(h);
    let twins = twin_table(h, &table);
    let colors = refine(h);
    // twin class representative: smallest member
    let class: Vec<usize> = (0..n)
        .map(|v| (0..n).find(|&u| twins[u][v]).expect("v is its own twin"))
        .collect();
    let factor: u128 = class
        .iter()
        .counts()
        .values()
        .map(|&size| (1..=size as u128).product::<u128>())
        .product();
    let masks = h.edge_masks().expect("n <= 64");
    // edges grouped by their largest vertex
    let mut closing: Vec<Vec<u64>> = vec![Vec::new(); n];
    for (e, &m) in h.edges().iter().zip(&masks) {
        closing[*e.last().expect("non-empty edge")].push(m);
    }

    struct Ctx<'a> {
        n: usize,
        table: &'a EdgeTable,
        colors: &'a [usize],
        class: &'a [usize],
        closing: &'a [Vec<u64>],
        map: Vec<usize>,
        used: Vec<bool>,
    }

    fn image(ctx: &Ctx, m: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = m;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1u64 << ctx.map[v];
        }
        out
    }

    fn go(ctx: &mut Ctx, v: usize) -> u128 {
        if v == ctx.n {
            return 1;
        }
        let mut total = 0;
        for u in 0..ctx.n {
            if ctx.used[u] || ctx.colors[u] != ctx.colors[v] {
                continue;
            }
            // increasing on twin classes
            if (0..v).any(|w| ctx.class[w] == ctx.class[v] && ctx.map[w] > u) {
                continue;
            }
            ctx.map[v] = u;
            if ctx.closing[v].iter().all(|&m| ctx.table.has(image(ctx, m))) {
                ctx.used[u] = true;
                total += go(ctx, v + 1);
                ctx.used[u] = false;
            }
        }
        ctx.map[v] = usize::MAX;
        total
    }

    let mut ctx = Ctx {
        n,
        table: &table,
        colors: &colors,
        class: &class,
        closing: &closing,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    factor * go(&mut ctx, 0)
}
