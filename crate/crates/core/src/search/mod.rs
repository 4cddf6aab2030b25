//! Exact Turán numbers for small instances.
//!
//! Two engines walk the same search tree: the `r`-sets in lexicographic order,
//! each either taken or skipped, with branches cut as soon as the partial
//! hypergraph contains a forbidden pattern.
//!
//! * The oracle does nothing else. Every free edge set is visited, and each
//!   node runs a full containment query.
//! * Branch and bound keeps an incumbent and cuts a branch when even taking
//!   every remaining candidate cannot beat it. It tests only for forbidden
//!   copies through the newly added edge, and it fixes the first edge to
//!   `{0, .., r-1}`. The empty host is vertex transitive, so that edge
//!   appears in the lexicographically least optimal edge set.
//!
//! Both report the lexicographically least optimal edge set as the witness.

mod structure;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use itertools::Itertools;
use rayon::prelude::*;

use crate::embed::{find_with, AnchoredPattern, Plan};
use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::index::HostIndex;

pub use structure::{verify_fores_structure, Claim, ClaimResult, ForesPartition, ForesReport};

/// Largest number of candidate `r`-sets the oracle accepts.
pub const ORACLE_MAX_CANDIDATES: usize = 36;
/// Largest number of candidate `r`-sets branch and bound accepts unless
/// forced.
pub const BNB_MAX_CANDIDATES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Oracle,
    BranchAndBound,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Oracle => "oracle",
            Engine::BranchAndBound => "bnb",
        })
    }
}

/// Upper bound used by branch and bound to cut branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundKind {
    /// Current edges plus all remaining candidates.
    #[default]
    Remaining,
    /// Current edges plus the remaining candidates that can individually be
    /// added without creating a forbidden copy.
    Compatible,
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub n: usize,
    pub r: usize,
    pub forbidden: Vec<Hypergraph>,
    pub engine: Engine,
}

impl SearchProblem {
    pub fn new(n: usize, r: usize, forbidden: Vec<Hypergraph>, engine: Engine) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidUniformity(format!(
                "uniformity must be at least 2, got {r}"
            )));
        }
        if n < r {
            return Err(Error::InvalidParameter(format!(
                "host needs at least r = {r} vertices, got n = {n}"
            )));
        }
        if let Some(p) = forbidden.iter().find(|p| p.r() != r) {
            return Err(Error::UniformityMismatch {
                host: r,
                pattern: p.r(),
            });
        }
        Ok(SearchProblem {
            n,
            r,
            forbidden,
            engine,
        })
    }

    fn candidates(&self) -> Vec<Vec<usize>> {
        (0..self.n).combinations(self.r).collect()
    }

    fn candidate_count(&self) -> usize {
        binomial(self.n, self.r)
    }

    fn check_guard(&self, limit: usize) -> Result<()> {
        let c = self.candidate_count();
        if c > limit {
            return Err(Error::TooLarge {
                what: "number of candidate edges C(n, r)",
                limit,
                actual: c,
            });
        }
        Ok(())
    }

    /// Every host contains an edgeless pattern that fits on `n` vertices.
    fn check_satisfiable(&self) -> Result<()> {
        if let Some(p) = self
            .forbidden
            .iter()
            .find(|p| p.edge_count() == 0 && p.n() <= self.n)
        {
            return Err(Error::InvalidParameter(format!(
                "every {}-vertex hypergraph contains the edgeless {}-vertex pattern",
                self.n,
                p.n()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads for branch and bound; `1` runs sequentially.
    pub workers: usize,
    pub bound: BoundKind,
    /// Abort with [`Error::NodeLimit`] after this many nodes.
    pub node_limit: Option<u64>,
    /// Ignore the branch-and-bound size guard.
    pub force: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            bound: BoundKind::Remaining,
            node_limit: None,
            force: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub value: usize,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    pub engine: Engine,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Runs the engine named in the problem with default options.
pub fn solve(p: &SearchProblem) -> Result<SearchResult> {
    solve_with(p, &SearchOptions::default())
}

pub fn solve_with(p: &SearchProblem, opts: &SearchOptions) -> Result<SearchResult> {
    match p.engine {
        Engine::Oracle => oracle(p, opts),
        Engine::BranchAndBound => bnb(p, opts),
    }
}

pub fn max_edges_oracle(p: &SearchProblem) -> Result<SearchResult> {
    oracle(p, &SearchOptions::default())
}

pub fn max_edges_bnb(p: &SearchProblem) -> Result<SearchResult> {
    bnb(p, &SearchOptions::default())
}

pub fn max_edges_bnb_with(p: &SearchProblem, opts: &SearchOptions) -> Result<SearchResult> {
    bnb(p, opts)
}

fn witness(p: &SearchProblem, cands: &[Vec<usize>], chosen: &[usize]) -> Hypergraph {
    Hypergraph::new(p.n, p.r, chosen.iter().map(|&i| &cands[i]))
        .expect("candidate r-sets are valid edges")
}

fn oracle(p: &SearchProblem, opts: &SearchOptions) -> Result<SearchResult> {
    p.check_guard(ORACLE_MAX_CANDIDATES)?;
    p.check_satisfiable()?;
    let cands = p.candidates();
    let plans: Vec<Plan> = p.forbidden.iter().map(Plan::by_degree).collect();

    struct Oracle<'a> {
        cands: &'a [Vec<usize>],
        plans: &'a [Plan],
        host: HostIndex,
        chosen: Vec<usize>,
        best: Vec<usize>,
        nodes: u64,
        limit: u64,
    }

    impl Oracle<'_> {
        fn dfs(&mut self, start: usize) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::NodeLimit { nodes: self.limit });
            }
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            for j in start..self.cands.len() {
                self.host.insert(&self.cands[j]);
                let free = self
                    .plans
                    .iter()
                    .all(|plan| find_with(plan, &self.host).is_none());
                if free {
                    self.chosen.push(j);
                    let res = self.dfs(j + 1);
                    self.chosen.pop();
                    if res.is_err() {
                        self.host.remove(&self.cands[j]);
                        return res;
                    }
                }
                self.host.remove(&self.cands[j]);
            }
            Ok(())
        }
    }

    let mut o = Oracle {
        cands: &cands,
        plans: &plans,
        host: HostIndex::new(p.n, p.r),
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        limit: opts.node_limit.unwrap_or(u64::MAX),
    };
    o.dfs(0)?;
    Ok(SearchResult {
        value: o.best.len(),
        witness: witness(p, &cands, &o.best),
        nodes_explored: o.nodes,
        engine: Engine::Oracle,
    })
}

/// Shared state of one branch-and-bound run.
struct Shared {
    global_best: AtomicUsize,
    nodes: AtomicU64,
    aborted: AtomicBool,
    limit: u64,
}

struct Bnb<'a> {
    cands: &'a [Vec<usize>],
    anchored: &'a [AnchoredPattern],
    bound: BoundKind,
    shared: &'a Shared,
    host: HostIndex,
    chosen: Vec<usize>,
    best: Vec<usize>,
    local_nodes: u64,
}

impl Bnb<'_> {
    fn creates_copy(&self, j: usize) -> bool {
        self.anchored
            .iter()
            .any(|a| a.has_copy_through(&self.host, &self.cands[j]))
    }

    fn flush_nodes(&mut self) -> bool {
        let total = self
            .shared
            .nodes
            .fetch_add(self.local_nodes, Ordering::Relaxed)
            + self.local_nodes;
        self.local_nodes = 0;
        if total > self.shared.limit {
            self.shared.aborted.store(true, Ordering::Relaxed);
        }
        self.shared.aborted.load(Ordering::Relaxed)
    }

    /// A branch is cut when it cannot beat the local incumbent, or cannot
    /// even tie the incumbent of another worker.
    fn hopeless(&self, bound: usize) -> bool {
        bound <= self.best.len() || bound < self.shared.global_best.load(Ordering::Relaxed)
    }

    fn compatible_remaining(&mut self, start: usize) -> usize {
        let mut count = 0;
        for j in start..self.cands.len() {
            self.host.insert(&self.cands[j]);
            if !self.creates_copy(j) {
                count += 1;
            }
            self.host.remove(&self.cands[j]);
        }
        count
    }

    fn dfs(&mut self, start: usize) {
        self.local_nodes += 1;
        if self.local_nodes >= 4096 && self.flush_nodes() {
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            self.shared
                .global_best
                .fetch_max(self.best.len(), Ordering::Relaxed);
        }
        if self.bound == BoundKind::Compatible {
            let b = self.chosen.len() + self.compatible_remaining(start);
            if self.hopeless(b) {
                return;
            }
        }
        for j in start..self.cands.len() {
            if self.hopeless(self.chosen.len() + self.cands.len() - j) {
                break;
            }
            self.host.insert(&self.cands[j]);
            if !self.creates_copy(j) {
                self.chosen.push(j);
                self.dfs(j + 1);
                self.chosen.pop();
            }
            self.host.remove(&self.cands[j]);
            if self.shared.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

fn bnb(p: &SearchProblem, opts: &SearchOptions) -> Result<SearchResult> {
    if !opts.force {
        p.check_guard(BNB_MAX_CANDIDATES)?;
    }
    p.check_satisfiable()?;
    let cands = p.candidates();
    let anchored: Vec<AnchoredPattern> = p.forbidden.iter().map(AnchoredPattern::new).collect();
    let shared = Shared {
        global_best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        limit: opts.node_limit.unwrap_or(u64::MAX),
    };
    let new_worker = |prefix: &[usize]| -> Option<Bnb> {
        let mut w = Bnb {
            cands: &cands,
            anchored: &anchored,
            bound: opts.bound,
            shared: &shared,
            host: HostIndex::new(p.n, p.r),
            chosen: Vec::new(),
            best: Vec::new(),
            local_nodes: 0,
        };
        for &j in prefix {
            w.host.insert(&cands[j]);
            if w.creates_copy(j) {
                return None;
            }
            w.chosen.push(j);
        }
        Some(w)
    };

    // root: the first edge is fixed to {0, .., r-1}
    let Some(mut root) = new_worker(&[0]) else {
        return Ok(SearchResult {
            value: 0,
            witness: Hypergraph::empty(p.n, p.r)?,
            nodes_explored: 1,
            engine: Engine::BranchAndBound,
        });
    };

    let best = if opts.workers <= 1 || cands.len() < 3 {
        root.dfs(1);
        root.flush_nodes();
        root.best
    } else {
        // Subtrees split on the second edge; `[0]` alone is the baseline.
        shared.global_best.store(1, Ordering::Relaxed);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start workers: {e}")))?;
        let results: Vec<Vec<usize>> = pool.install(|| {
            (1..cands.len())
                .into_par_iter()
                .filter_map(|j| {
                    let mut w = new_worker(&[0, j])?;
                    w.dfs(j + 1);
                    w.flush_nodes();
                    Some(w.best)
                })
                .collect()
        });
        results
            .into_iter()
            .chain(std::iter::once(vec![0]))
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
            .expect("baseline is present")
    };
    let nodes = shared.nodes.load(Ordering::Relaxed);
    if shared.aborted.load(Ordering::Relaxed) {
        return Err(Error::NodeLimit { nodes });
    }
    Ok(SearchResult {
        value: best.len(),
        witness: witness(p, &cands, &best),
        nodes_explored: nodes,
        engine: Engine::BranchAndBound,
    })
}
