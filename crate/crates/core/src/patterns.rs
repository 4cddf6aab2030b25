//! Named graph families and the textual pattern language.
//!
//! ```text
//! spec  := term ('+' term)*            disjoint union, left to right
//! term  := 'K' k                       complete graph on k vertices
//!        | 'K' s ',' t                 complete bipartite graph
//!        | 'C' l                       cycle on l >= 3 vertices
//!        | 'P' k                       path on k vertices (k - 1 edges)
//!        | 'M' t                       matching with t edges
//!        | 'H(' t ')' | 'Q(' t ')'     triangle-plus-bipartite gadgets
//!        | 'S' r '(' spec ')'          r-uniform suspension of a graph
//!        | '(' spec ')'
//!        | '@' path                    JSON hypergraph file
//! ```
//!
//! Paths are counted by vertices: `P3` is the 3-vertex path `v1 v2 v3`.
//! A file path runs until the next `+`, `)` or the end of the input.

use std::fmt;
use std::path::Path;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypercore::{suspend, Graph, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternSpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Matching(usize),
    Bipartite(usize, usize),
    HGadget(usize),
    QGadget(usize),
    Union(Box<PatternSpec>, Box<PatternSpec>),
    Suspension(usize, Box<PatternSpec>),
    File(String),
}

impl PatternSpec {
    pub fn parse(input: &str) -> Result<PatternSpec> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
        };
        let spec = p.union()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err(format!("unexpected '{}'", p.src[p.pos] as char)));
        }
        Ok(spec)
    }

    /// Builds the labeled (hyper)graph. `@file` specs are read from disk.
    pub fn build(&self) -> Result<Hypergraph> {
        match *self {
            PatternSpec::Complete(k) => complete_graph(k),
            PatternSpec::Cycle(l) => cycle(l),
            PatternSpec::Path(k) => path(k),
            PatternSpec::Matching(t) => matching(t),
            PatternSpec::Bipartite(s, t) => complete_bipartite(s, t),
            PatternSpec::HGadget(t) => h_gadget(t),
            PatternSpec::QGadget(t) => q_gadget(t),
            PatternSpec::Union(ref a, ref b) => a.build()?.disjoint_union(&b.build()?),
            PatternSpec::Suspension(r, ref inner) => suspend(&inner.build()?, r),
            PatternSpec::File(ref path) => read_hypergraph(path),
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Complete(k) => write!(f, "K{k}"),
            PatternSpec::Cycle(l) => write!(f, "C{l}"),
            PatternSpec::Path(k) => write!(f, "P{k}"),
            PatternSpec::Matching(t) => write!(f, "M{t}"),
            PatternSpec::Bipartite(s, t) => write!(f, "K{s},{t}"),
            PatternSpec::HGadget(t) => write!(f, "H({t})"),
            PatternSpec::QGadget(t) => write!(f, "Q({t})"),
            PatternSpec::Union(a, b) => write!(f, "{a}+{b}"),
            PatternSpec::Suspension(r, inner) => write!(f, "S{r}({inner})"),
            PatternSpec::File(p) => write!(f, "@{p}"),
        }
    }
}

/// Parses and builds a pattern in one step.
pub fn make_pattern(spec: &str) -> Result<Hypergraph> {
    PatternSpec::parse(spec)?.build()
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Hypergraph::from_json(&text)
}

/// Minimum vertex degree; zero for hypergraphs with an isolated vertex.
pub fn min_degree(h: &Hypergraph) -> usize {
    h.min_degree()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "number too large".into(),
            })
    }

    fn at_least(&mut self, min: usize, what: &str) -> Result<usize> {
        let start = self.pos;
        let v = self.number()?;
        if v < min {
            return Err(Error::Parse {
                pos: start,
                msg: format!("{what} must be at least {min}, got {v}"),
            });
        }
        Ok(v)
    }

    fn union(&mut self) -> Result<PatternSpec> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = PatternSpec::Union(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parenthesized_count(&mut self, what: &str) -> Result<usize> {
        self.expect(b'(')?;
        let t = self.at_least(1, what)?;
        self.expect(b')')?;
        Ok(t)
    }

    fn term(&mut self) -> Result<PatternSpec> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of pattern"));
        };
        self.pos += 1;
        match c {
            b'K' => {
                let k = self.at_least(1, "K size")?;
                if self.peek() == Some(b',') {
                    self.pos += 1;
                    let t = self.at_least(1, "bipartite part size")?;
                    Ok(PatternSpec::Bipartite(k, t))
                } else {
                    Ok(PatternSpec::Complete(k))
                }
            }
            b'C' => Ok(PatternSpec::Cycle(self.at_least(3, "cycle length")?)),
            b'P' => Ok(PatternSpec::Path(self.at_least(1, "path vertex count")?)),
            b'M' => Ok(PatternSpec::Matching(self.at_least(1, "matching size")?)),
            b'H' => Ok(PatternSpec::HGadget(
                self.parenthesized_count("H(t) parameter")?,
            )),
            b'Q' => Ok(PatternSpec::QGadget(
                self.parenthesized_count("Q(t) parameter")?,
            )),
            b'S' => {
                let r = self.at_least(2, "suspension uniformity")?;
                self.expect(b'(')?;
                let inner = self.union()?;
                self.expect(b')')?;
                Ok(PatternSpec::Suspension(r, Box::new(inner)))
            }
            b'(' => {
                let inner = self.union()?;
                self.expect(b')')?;
                Ok(inner)
            }
            b'@' => {
                let start = self.pos;
                while self.pos < self.src.len() && !matches!(self.src[self.pos], b'+' | b')') {
                    self.pos += 1;
                }
                let path = String::from_utf8_lossy(&self.src[start..self.pos])
                    .trim()
                    .to_string();
                if path.is_empty() {
                    return Err(self.err("expected a file name after '@'"));
                }
                Ok(PatternSpec::File(path))
            }
            other => {
                self.pos -= 1;
                Err(self.err(format!("unknown pattern '{}'", other as char)))
            }
        }
    }
}

pub fn complete_graph(k: usize) -> Result<Graph> {
    Hypergraph::complete(k, 2)
}

pub fn cycle(l: usize) -> Result<Graph> {
    if l < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be at least 3, got {l}"
        )));
    }
    Hypergraph::new(l, 2, (0..l).map(|i| [i, (i + 1) % l]))
}

pub fn path(k: usize) -> Result<Graph> {
    Hypergraph::new(k, 2, (1..k).map(|i| [i - 1, i]))
}

pub fn matching(t: usize) -> Result<Graph> {
    Hypergraph::new(2 * t, 2, (0..t).map(|i| [2 * i, 2 * i + 1]))
}

/// `K_{s,t}` with parts `0..s` and `s..s+t`.
pub fn complete_bipartite(s: usize, t: usize) -> Result<Graph> {
    Hypergraph::new(
        s + t,
        2,
        (0..s).cartesian_product(s..s + t).map(|(a, b)| [a, b]),
    )
}

/// `H(t)`: two copies of `K_{t,t}` (parts `A1 = 0..t`, `A2 = t..2t`,
/// `B1 = 2t..3t`, `B2 = 3t..4t`) and a triangle `x, y, z = 4t, 4t+1, 4t+2`.
/// `x` is joined to `A2` and `y` to `A1`, turning the first copy into
/// `K_{t+1,t+1}`; `z` is joined to `B1`, turning the second into `K_{t,t+1}`.
pub fn h_gadget(t: usize) -> Result<Graph> {
    let (a1, a2, b1, b2) = (0..t, t..2 * t, 2 * t..3 * t, 3 * t..4 * t);
    let (x, y, z) = (4 * t, 4 * t + 1, 4 * t + 2);
    let mut edges = Vec::new();
    edges.extend(
        a1.clone()
            .cartesian_product(a2.clone())
            .map(|(u, v)| [u, v]),
    );
    edges.extend(b1.clone().cartesian_product(b2).map(|(u, v)| [u, v]));
    edges.extend(a2.map(|v| [v, x]));
    edges.extend(a1.map(|v| [v, y]));
    edges.extend(b1.map(|v| [v, z]));
    edges.extend([[x, y], [y, z], [x, z]]);
    Hypergraph::new(4 * t + 3, 2, edges)
}

/// `Q(t)`: independent sets `U1..U4` of order `t` (`Ui = (i-1)t..it`) and a
/// triangle `v1, v2, v3 = 4t, 4t+1, 4t+2`; for `i <= 3`, `vi` and every vertex
/// of `U4` are joined to every vertex of `Ui`.
pub fn q_gadget(t: usize) -> Result<Graph> {
    let part = |i: usize| (i * t)..((i + 1) * t);
    let mut edges = Vec::new();
    for i in 0..3 {
        let apex = 4 * t + i;
        edges.extend(part(i).map(|u| [u, apex]));
        edges.extend(part(3).cartesian_product(part(i)).map(|(w, u)| [u, w]));
    }
    let (v1, v2, v3) = (4 * t, 4 * t + 1, 4 * t + 2);
    edges.extend([[v1, v2], [v2, v3], [v1, v3]]);
    Hypergraph::new(4 * t + 3, 2, edges)
}
