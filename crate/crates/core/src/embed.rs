//! Subhypergraph containment, copy counting and the blowup-containment
//! decision.
//!
//! Containment is non-induced: a copy of a pattern is an injective vertex map
//! sending every pattern edge onto a host edge. The matcher assigns pattern
//! vertices in a fixed order (degree descending, then id) and prunes with
//! host degrees and pairwise codegrees.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypercore::{link, Graph, Hypergraph};
use crate::index::HostIndex;

pub use crate::canon::{automorphism_count, canonical_form, is_isomorphic, CanonicalForm};

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and that every pattern edge lands on a host edge.
    pub fn is_valid(&self, host: &Hypergraph, pattern: &Hypergraph) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&v| v >= host.n()) {
            return false;
        }
        if self.map.iter().duplicates().next().is_some() {
            return false;
        }
        pattern.edges().iter().all(|e| {
            let image: Vec<usize> = e.iter().map(|&v| self.map[v]).collect();
            host.has_edge(&image)
        })
    }
}

/// Assignment order and precomputed constraints for one pattern.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    order: Vec<usize>,
    degree: Vec<usize>,
    /// Pattern edges whose last vertex in `order` sits at each position.
    closing: Vec<Vec<Vec<usize>>>,
    /// Earlier vertices sharing an edge with the vertex at each position,
    /// paired with the pattern codegree.
    links: Vec<Vec<(usize, u32)>>,
}

impl Plan {
    pub fn new(pattern: &Hypergraph, order: Vec<usize>) -> Plan {
        let n = pattern.n();
        debug_assert_eq!(order.len(), n);
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closing = vec![Vec::new(); n];
        let mut codeg = vec![0u32; n * n];
        for e in pattern.edges() {
            let last = e
                .iter()
                .map(|&v| position[v])
                .max()
                .expect("edges are non-empty");
            closing[last].push(e.clone());
            for (a, b) in e.iter().tuple_combinations() {
                codeg[a * n + b] += 1;
                codeg[b * n + a] += 1;
            }
        }
        let links = order
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                order[..i]
                    .iter()
                    .filter(|&&q| codeg[p * n + q] > 0)
                    .map(|&q| (q, codeg[p * n + q]))
                    .collect()
            })
            .collect();
        Plan {
            order,
            degree: pattern.degrees(),
            closing,
            links,
        }
    }

    /// Static order: degree descending, then vertex id.
    pub fn by_degree(pattern: &Hypergraph) -> Plan {
        Plan::new(pattern, degree_order(pattern, &[]))
    }

    /// Order that starts with the vertices of pattern edge `first`.
    pub fn starting_with(pattern: &Hypergraph, first: &[usize]) -> Plan {
        Plan::new(pattern, degree_order(pattern, first))
    }

    fn len(&self) -> usize {
        self.order.len()
    }
}

fn degree_order(pattern: &Hypergraph, first: &[usize]) -> Vec<usize> {
    let deg = pattern.degrees();
    let mut rest: Vec<usize> = (0..pattern.n()).filter(|v| !first.contains(v)).collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    first.iter().copied().chain(rest).collect()
}

/// Backtracking state of one containment query.
struct Matcher<'a> {
    plan: &'a Plan,
    host: &'a HostIndex,
    map: Vec<usize>,
    used: Vec<bool>,
    image: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(plan: &'a Plan, host: &'a HostIndex) -> Self {
        Matcher {
            plan,
            host,
            map: vec![usize::MAX; plan.len()],
            used: vec![false; host.n()],
            image: Vec::with_capacity(host.r()),
        }
    }

    /// Whether pattern vertex `order[pos]` may go to host vertex `u`, given
    /// the assignments of all earlier positions.
    fn feasible(&mut self, pos: usize, u: usize) -> bool {
        let p = self.plan.order[pos];
        if self.used[u] || self.host.degree(u) < self.plan.degree[p] {
            return false;
        }
        for &(q, c) in &self.plan.links[pos] {
            if self.host.codegree(self.map[q], u) < c {
                return false;
            }
        }
        for e in &self.plan.closing[pos] {
            self.image.clear();
            self.image
                .extend(e.iter().map(|&v| if v == p { u } else { self.map[v] }));
            if !self.host.contains(&self.image) {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, pos: usize, u: usize) {
        self.map[self.plan.order[pos]] = u;
        self.used[u] = true;
    }

    fn unassign(&mut self, pos: usize) {
        let p = self.plan.order[pos];
        self.used[self.map[p]] = false;
        self.map[p] = usize::MAX;
    }

    /// Depth-first extension from `pos`. `visit` returns `true` to stop.
    fn extend(&mut self, pos: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == self.plan.len() {
            return visit(&self.map);
        }
        let n = self.host.n();
        let anchor = self.plan.links[pos].first().map(|&(q, _)| self.map[q]);
        for u in 0..n {
            if let Some(a) = anchor {
                if self.host.codegree(a, u) == 0 {
                    continue;
                }
            }
            if !self.feasible(pos, u) {
                continue;
            }
            self.assign(pos, u);
            let stop = self.extend(pos + 1, visit);
            self.unassign(pos);
            if stop {
                return true;
            }
        }
        false
    }

    /// Fixes the first `prefix.len()` positions, then extends.
    fn extend_from(&mut self, prefix: &[usize], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let mut placed = 0;
        let mut ok = true;
        for (pos, &u) in prefix.iter().enumerate() {
            if !self.feasible(pos, u) {
                ok = false;
                break;
            }
            self.assign(pos, u);
            placed += 1;
        }
        let stop = ok && self.extend(prefix.len(), visit);
        for pos in (0..placed).rev() {
            self.unassign(pos);
        }
        stop
    }
}

pub(crate) fn find_with(plan: &Plan, host: &HostIndex) -> Option<Vec<usize>> {
    if plan.len() > host.n() {
        return None;
    }
    let mut found = None;
    Matcher::new(plan, host).extend(0, &mut |m| {
        found = Some(m.to_vec());
        true
    });
    found
}

pub(crate) fn count_with(plan: &Plan, host: &HostIndex) -> u64 {
    if plan.len() > host.n() {
        return 0;
    }
    let mut count = 0u64;
    Matcher::new(plan, host).extend(0, &mut |_| {
        count += 1;
        false
    });
    count
}

/// Precomputed plans for finding a copy of a pattern that uses a given host
/// edge, one plan per pattern edge.
#[derive(Debug, Clone)]
pub(crate) struct AnchoredPattern {
    n: usize,
    plans: Vec<Plan>,
}

impl AnchoredPattern {
    pub fn new(pattern: &Hypergraph) -> Self {
        AnchoredPattern {
            n: pattern.n(),
            plans: pattern
                .edges()
                .iter()
                .map(|f| Plan::starting_with(pattern, f))
                .collect(),
        }
    }

    /// Whether some copy of the pattern in `host` maps a pattern edge onto
    /// `edge`, which must already be present in `host`.
    pub fn has_copy_through(&self, host: &HostIndex, edge: &[usize]) -> bool {
        if self.n > host.n() {
            return false;
        }
        for plan in &self.plans {
            let mut m = Matcher::new(plan, host);
            for perm in edge.iter().copied().permutations(edge.len()) {
                if m.extend_from(&perm, &mut |_| true) {
                    return true;
                }
            }
        }
        false
    }
}

fn check_uniformity(host: &Hypergraph, pattern: &Hypergraph) -> Result<()> {
    if host.r() != pattern.r() {
        return Err(Error::UniformityMismatch {
            host: host.r(),
            pattern: pattern.r(),
        });
    }
    Ok(())
}

/// Finds a copy of `pattern` in `host`, if any.
pub fn contains(host: &Hypergraph, pattern: &Hypergraph) -> Result<Option<Embedding>> {
    check_uniformity(host, pattern)?;
    let index = HostIndex::from_hypergraph(host);
    Ok(find_with(&Plan::by_degree(pattern), &index).map(|map| Embedding { map }))
}

pub fn is_free(host: &Hypergraph, pattern: &Hypergraph) -> Result<bool> {
    if pattern.edge_count() > host.edge_count() && host.r() == pattern.r() {
        return Ok(true);
    }
    Ok(contains(host, pattern)?.is_none())
}

/// Number of injective edge-preserving maps from `pattern` into `host`.
pub fn count_embeddings(host: &Hypergraph, pattern: &Hypergraph) -> Result<u64> {
    check_uniformity(host, pattern)?;
    let index = HostIndex::from_hypergraph(host);
    Ok(count_with(&Plan::by_degree(pattern), &index))
}

/// Number of (not necessarily induced) subhypergraphs of `host` isomorphic to
/// `pattern`: embeddings divided by the automorphism count of the pattern.
pub fn count_copies(host: &Hypergraph, pattern: &Hypergraph) -> Result<u64> {
    let maps = count_embeddings(host, pattern)?;
    let aut = crate::canon::automorphism_count_unbounded(pattern);
    Ok((maps as u128 / aut) as u64)
}

/// Decides `S^r F`-freeness of an `r`-graph through its link graphs: `host`
/// is free iff no `(r-2)`-set has a link graph (on the remaining vertices)
/// containing `f`.
pub fn suspension_free_via_links(host: &Hypergraph, f: &Graph) -> Result<bool> {
    let r = host.r();
    if r < 3 {
        return Err(Error::InvalidUniformity(format!(
            "link-based freeness needs r >= 3, got {r}"
        )));
    }
    if f.r() != 2 {
        return Err(Error::InvalidUniformity(format!(
            "forbidden link pattern must be a graph, got r = {}",
            f.r()
        )));
    }
    if f.edge_count() == 0 {
        return Ok(host.n() < f.n() + r - 2);
    }
    let cores: HashSet<Vec<usize>> = host
        .edges()
        .iter()
        .flat_map(|e| e.iter().copied().combinations(r - 2))
        .collect();
    let plan = Plan::by_degree(f);
    for core in cores {
        let rest: Vec<usize> = (0..host.n()).filter(|v| !core.contains(v)).collect();
        let l = link(host, &core)?.induced(&rest)?;
        if find_with(&plan, &HostIndex::from_hypergraph(&l)).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An edge-rainbow homomorphism `V(H') -> V(H)`: it witnesses that `H'` is a
/// subhypergraph of a blowup of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupWitness {
    pub map: Vec<usize>,
    /// Preimage size of each vertex of `H`.
    pub multiplicity: Vec<usize>,
    /// Largest preimage size.
    pub s: usize,
}

impl BlowupWitness {
    fn from_map(map: Vec<usize>, h_n: usize) -> Self {
        let mut multiplicity = vec![0; h_n];
        for &v in &map {
            multiplicity[v] += 1;
        }
        let s = multiplicity.iter().copied().max().unwrap_or(0);
        BlowupWitness {
            map,
            multiplicity,
            s,
        }
    }

    /// Class sizes for an explicit blowup of `H` that contains `H'`.
    pub fn blowup_sizes(&self) -> Vec<i64> {
        self.multiplicity.iter().map(|&m| m.max(1) as i64).collect()
    }

    /// The embedding of `H'` into `blowup(H, blowup_sizes())` induced by the
    /// witness: the i-th preimage of `v` goes to the i-th vertex of class `v`.
    pub fn embedding(&self) -> Embedding {
        let sizes = self.blowup_sizes();
        let mut start = Vec::with_capacity(sizes.len());
        let mut acc = 0usize;
        for &s in &sizes {
            start.push(acc);
            acc += s as usize;
        }
        let mut next = vec![0usize; sizes.len()];
        let map = self
            .map
            .iter()
            .map(|&v| {
                let x = start[v] + next[v];
                next[v] += 1;
                x
            })
            .collect();
        Embedding { map }
    }

    pub fn is_valid(&self, h: &Hypergraph, hprime: &Hypergraph) -> bool {
        self.map.len() == hprime.n()
            && self.map.iter().all(|&v| v < h.n())
            && hprime.edges().iter().all(|e| {
                let image: Vec<usize> = e.iter().map(|&v| self.map[v]).collect();
                image.iter().all_unique() && h.has_edge(&image)
            })
    }
}

/// Decides whether `hprime` is a subhypergraph of some blowup of `h`, returning
/// a witness map when it is. The multiplicity is not minimized.
pub fn blowup_contains(h: &Hypergraph, hprime: &Hypergraph) -> Result<Option<BlowupWitness>> {
    check_uniformity(h, hprime)?;
    if hprime.n() == 0 {
        return Ok(Some(BlowupWitness::from_map(Vec::new(), h.n())));
    }
    if h.n() == 0 {
        return Ok(None);
    }
    if h == hprime {
        return Ok(Some(BlowupWitness::from_map((0..h.n()).collect(), h.n())));
    }
    let partial: HashSet<Vec<usize>> = h
        .edges()
        .iter()
        .flat_map(|e| e.iter().copied().powerset())
        .collect();
    let order = degree_order(hprime, &[]);
    let hdeg = h.degrees();
    let pdeg = hprime.degrees();
    let incident: Vec<Vec<&Vec<usize>>> = (0..hprime.n())
        .map(|v| hprime.edges().iter().filter(|e| e.contains(&v)).collect())
        .collect();

    struct Ctx<'a> {
        order: &'a [usize],
        partial: &'a HashSet<Vec<usize>>,
        incident: &'a [Vec<&'a Vec<usize>>],
        hdeg: &'a [usize],
        pdeg: &'a [usize],
        map: Vec<usize>,
    }

    fn consistent(ctx: &Ctx, p: usize) -> bool {
        ctx.incident[p].iter().all(|e| {
            let mut img: Vec<usize> = e
                .iter()
                .map(|&v| ctx.map[v])
                .filter(|&x| x != usize::MAX)
                .collect();
            img.sort_unstable();
            img.windows(2).all(|w| w[0] != w[1]) && ctx.partial.contains(&img)
        })
    }

    fn go(ctx: &mut Ctx, pos: usize) -> bool {
        if pos == ctx.order.len() {
            return true;
        }
        let p = ctx.order[pos];
        if ctx.pdeg[p] == 0 {
            ctx.map[p] = 0;
            if go(ctx, pos + 1) {
                return true;
            }
            ctx.map[p] = usize::MAX;
            return false;
        }
        for u in 0..ctx.hdeg.len() {
            if ctx.hdeg[u] == 0 {
                continue;
            }
            ctx.map[p] = u;
            if consistent(ctx, p) && go(ctx, pos + 1) {
                return true;
            }
        }
        ctx.map[p] = usize::MAX;
        false
    }

    let mut ctx = Ctx {
        order: &order,
        partial: &partial,
        incident: &incident,
        hdeg: &hdeg,
        pdeg: &pdeg,
        map: vec![usize::MAX; hprime.n()],
    };
    if go(&mut ctx, 0) {
        Ok(Some(BlowupWitness::from_map(ctx.map, h.n())))
    } else {
        Ok(None)
    }
}
