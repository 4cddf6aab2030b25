//! Closed-form Turán bounds, evaluated in exact rational arithmetic, and a
//! report that lines them up against constructions and searched values.

use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::constructions::{fores_construction, greedy_free_packing, is_sts_order, sts};
use crate::embed::is_isomorphic;
use crate::error::{Error, Result};
use crate::hypercore::{link, Graph, Hypergraph};
use crate::patterns::{complete_graph, make_pattern, path};
use crate::search::{self, Engine, SearchOptions, SearchProblem};

pub type Rational = Ratio<i128>;

/// Node budget for each search run by [`bounds_report`].
pub const REPORT_NODE_LIMIT: u64 = 5_000_000;

/// `p/q` in lowest terms; integers keep the `/1`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k as i128).fold(1i128, |acc, i| acc * (n as i128 - i) / (i + 1))
}

fn int(x: i128) -> Rational {
    Rational::from_integer(x)
}

/// `C(n, r-k) * base / C(r, k)`: the bound on `ex_r(n, S^r F)` obtained from
/// `base = ex_k(n-r+k, S^k F)`.
pub fn simpli_bound(n: usize, r: usize, k: usize, base: Rational) -> Result<Rational> {
    if !(2 <= k && k < r && r <= n) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k < r <= n, got n = {n}, r = {r}, k = {k}"
        )));
    }
    Ok(int(binomial(n, r - k)) * base / int(binomial(r, k)))
}

fn check_tree_params(r: usize, t: usize) -> Result<()> {
    if t < 1 || r < 2 {
        return Err(Error::InvalidParameter(format!(
            "need t >= 1 and r >= 2, got t = {t}, r = {r}"
        )));
    }
    Ok(())
}

/// `(t-1) C(n, r-1) / r`.
pub fn kalai_bound(n: usize, r: usize, t: usize) -> Result<Rational> {
    check_tree_params(r, t)?;
    Ok(int((t as i128 - 1) * binomial(n, r - 1)) / int(r as i128))
}

/// `2t(t-1) C(n, r-1) / (r(t+1))`.
pub fn tree_suspension_bound(n: usize, r: usize, t: usize) -> Result<Rational> {
    check_tree_params(r, t)?;
    let t = t as i128;
    Ok(int(2 * t * (t - 1) * binomial(n, r - 1)) / int(r as i128 * (t + 1)))
}

/// `n C(n, 3) / 16`.
pub fn gs_bound(n: usize) -> Result<Rational> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    Ok(int(n as i128 * binomial(n, 3)) / int(16))
}

/// `3n^2/16 - n/8 + 1/48`, the unfloored form of the bound for
/// `S^3(P_3 + K_2)`.
pub fn fores_bound(n: usize) -> Result<Rational> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let n = int(n as i128);
    Ok(Rational::new(3, 16) * n * n - n / int(8) + Rational::new(1, 48))
}

pub fn fores_bound_floor(n: usize) -> Result<i128> {
    Ok(fores_bound(n)?.floor().to_integer())
}

/// `C(floor((3n-1)/4), 2)/3 + (3n-1)(n+1)/32`, with the inner floor. Kept for
/// comparison only; it differs from [`fores_bound`] unless `3n - 1 = 0 (mod 4)`.
pub fn fores_bound_floored_inner(n: usize) -> Result<Rational> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let m = (3 * n - 1) / 4;
    let n = n as i128;
    Ok(int(binomial(m, 2)) / int(3) + int((3 * n - 1) * (n + 1)) / int(32))
}

/// `(t-1) n / 2`.
pub fn erdos_sos_bound(n: usize, t: usize) -> Result<Rational> {
    check_tree_params(2, t)?;
    Ok(int((t as i128 - 1) * n as i128) / int(2))
}

/// `t(t-1) n / (t+1)`.
pub fn stein_bound(n: usize, t: usize) -> Result<Rational> {
    check_tree_params(2, t)?;
    let t = t as i128;
    Ok(int(t * (t - 1) * n as i128) / int(t + 1))
}

/// A formula upper bound. Bounds proven only for large `n`, or resting on an
/// open conjecture for the family at hand, are shown but not `certified`;
/// only certified bounds take part in the row consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBound {
    pub value: Rational,
    pub certified: bool,
}

impl UpperBound {
    fn certified(value: Rational) -> Self {
        UpperBound {
            value,
            certified: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: usize,
    pub family: String,
    pub lower_construction: usize,
    pub exact: Option<usize>,
    pub simpli: Option<UpperBound>,
    pub kalai: Option<UpperBound>,
    pub tree_susp: Option<UpperBound>,
    pub gs: Option<UpperBound>,
    pub fores: Option<UpperBound>,
    pub fores_floor: Option<i128>,
}

impl BoundsRow {
    pub fn uppers(&self) -> impl Iterator<Item = (&'static str, &UpperBound)> {
        [
            ("simpli", &self.simpli),
            ("kalai", &self.kalai),
            ("tree_susp", &self.tree_susp),
            ("gs", &self.gs),
            ("fores", &self.fores),
        ]
        .into_iter()
        .filter_map(|(name, u)| u.as_ref().map(|u| (name, u)))
    }

    /// `lower <= exact <= every certified upper bound`.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Inconsistent { n: self.n, msg });
        let best_known = self.exact.unwrap_or(self.lower_construction);
        if let Some(exact) = self.exact {
            if self.lower_construction > exact {
                return bad(format!(
                    "construction {} exceeds exact value {exact}",
                    self.lower_construction
                ));
            }
        }
        for (name, u) in self.uppers().filter(|(_, u)| u.certified) {
            if int(best_known as i128) > u.value {
                return bad(format!(
                    "{best_known} edges exceed the {name} bound {}",
                    format_rational(&u.value)
                ));
            }
        }
        Ok(())
    }
}

/// What the report knows about a forbidden family.
#[derive(Debug, Clone)]
struct Family {
    pattern: Hypergraph,
    /// The graph `F` with `pattern = S^r F`, when the pattern is a suspension.
    base: Option<Graph>,
    is_fores: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TreeKind {
    Path,
    Star,
    Other,
}

impl Family {
    fn analyze(pattern: Hypergraph) -> Result<Family> {
        let r = pattern.r();
        let base = if r == 2 {
            Some(pattern.clone())
        } else if pattern.edge_count() == 0 {
            None
        } else {
            let core: Vec<usize> = (0..pattern.n())
                .filter(|v| pattern.edges().iter().all(|e| e.contains(v)))
                .take(r - 2)
                .collect();
            if core.len() == r - 2 {
                let rest: Vec<usize> = (0..pattern.n()).filter(|v| !core.contains(v)).collect();
                Some(link(&pattern, &core)?.induced(&rest)?)
            } else {
                None
            }
        };
        let fores = make_pattern("S3(P3+K2)")?;
        let is_fores = pattern.n() <= 12 && is_isomorphic(&pattern, &fores)?;
        Ok(Family {
            pattern,
            base,
            is_fores,
        })
    }

    /// Edge count of `F` when it is a tree without isolated vertices.
    fn tree(&self) -> Option<(usize, TreeKind)> {
        let f = self.base.as_ref()?;
        let t = f.edge_count();
        if t == 0 || f.n() != t + 1 || f.non_isolated().len() != f.n() || !connected(f) {
            return None;
        }
        let deg = f.degrees();
        let kind = if deg.iter().all(|&d| d <= 2) {
            TreeKind::Path
        } else if deg.contains(&t) {
            TreeKind::Star
        } else {
            TreeKind::Other
        };
        Some((t, kind))
    }

    fn base_is(&self, g: &Graph) -> Result<bool> {
        match &self.base {
            Some(f) if f.n() <= 12 => is_isomorphic(f, g),
            _ => Ok(false),
        }
    }
}

fn connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for e in g.edges().iter().filter(|e| e.contains(&v)) {
            for &u in e {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn searched(n: usize, r: usize, forbidden: &Hypergraph) -> Result<Option<usize>> {
    if n < r {
        return Ok(Some(0));
    }
    let p = SearchProblem::new(n, r, vec![forbidden.clone()], Engine::BranchAndBound)?;
    let opts = SearchOptions {
        node_limit: Some(REPORT_NODE_LIMIT),
        ..Default::default()
    };
    match search::solve_with(&p, &opts) {
        Ok(res) => Ok(Some(res.value)),
        Err(Error::TooLarge { .. } | Error::NodeLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn row(family: &Family, label: &str, n: usize, use_search: bool) -> Result<BoundsRow> {
    let r = family.pattern.r();
    let mut lower = if n >= r {
        greedy_free_packing(n, r, std::slice::from_ref(&family.pattern))?.edge_count()
    } else {
        0
    };
    if family.is_fores && n >= 9 {
        lower = lower.max(fores_construction(n)?.edge_count());
    }
    if r == 3 && family.base_is(&path(3)?)? && n >= 1 {
        let m = (1..=n)
            .rev()
            .find(|&m| is_sts_order(m))
            .expect("1 is admissible");
        lower = lower.max(sts(m).edge_count());
    }

    let exact = if use_search {
        searched(n, r, &family.pattern)?
    } else {
        None
    };

    let simpli = match (&family.base, use_search) {
        (Some(f), true) if r >= 3 && n >= r => searched(n - r + 2, 2, f)?
            .map(|base| simpli_bound(n, r, 2, int(base as i128)))
            .transpose()?
            .map(UpperBound::certified),
        _ => None,
    };

    let tree = family.tree();
    let kalai = match tree {
        Some((t, kind)) if r >= 3 => Some(UpperBound {
            value: kalai_bound(n, r, t)?,
            certified: kind != TreeKind::Other,
        }),
        _ => None,
    };
    let tree_susp = match tree {
        Some((t, _)) if r >= 3 => Some(UpperBound::certified(tree_suspension_bound(n, r, t)?)),
        _ => None,
    };

    let gs = match &family.base {
        Some(f) if r == 4 && n >= 4 && is_odd_cycle(f) => Some(UpperBound {
            value: gs_bound(n)?,
            certified: family.base_is(&complete_graph(3)?)?,
        }),
        _ => None,
    };

    let (fores, fores_floor) = if family.is_fores && n >= 1 {
        (
            Some(UpperBound {
                value: fores_bound(n)?,
                certified: n > 33,
            }),
            Some(fores_bound_floor(n)?),
        )
    } else {
        (None, None)
    };

    let row = BoundsRow {
        n,
        family: label.to_string(),
        lower_construction: lower,
        exact,
        simpli,
        kalai,
        tree_susp,
        gs,
        fores,
        fores_floor,
    };
    row.check()?;
    Ok(row)
}

fn is_odd_cycle(f: &Graph) -> bool {
    let n = f.n();
    n >= 3
        && n % 2 == 1
        && f.edge_count() == n
        && f.degrees().iter().all(|&d| d == 2)
        && connected(f)
}

/// One row per `n` in `n_from..=n_to` for the forbidden family `family`
/// (a pattern spec). Fails if a row violates `lower <= exact <= upper` for a
/// certified upper bound.
pub fn bounds_report(
    family: &str,
    n_from: usize,
    n_to: usize,
    use_search: bool,
) -> Result<Vec<BoundsRow>> {
    let fam = Family::analyze(make_pattern(family)?)?;
    (n_from..=n_to)
        .map(|n| row(&fam, family, n, use_search))
        .collect()
}

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "family",
    "lower_construction",
    "exact",
    "simpli",
    "kalai",
    "tree_susp",
    "gs",
    "fores",
    "fores_floor",
];

/// Renders rows as CSV with the mandatory header; missing values are blank.
pub fn report_csv(rows: &[BoundsRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    let opt = |u: &Option<UpperBound>| {
        u.as_ref()
            .map(|u| format_rational(&u.value))
            .unwrap_or_default()
    };
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.family.clone(),
            r.lower_construction.to_string(),
            r.exact.map(|e| e.to_string()).unwrap_or_default(),
            opt(&r.simpli),
            opt(&r.kalai),
            opt(&r.tree_susp),
            opt(&r.gs),
            opt(&r.fores),
            r.fores_floor.map(|f| f.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.value))
    }
}

/// Floating-point view of a rational, for display only.
pub fn approx(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}
