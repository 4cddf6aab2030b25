//! Turán problems for suspension hypergraphs at desk scale.
//!
//! The crate provides the hypergraph model with suspension, link and blowup
//! ([`hypercore`]), a small pattern language for the graph families involved
//! ([`patterns`]), subhypergraph containment and isomorphism ([`embed`]),
//! designs and extremal constructions ([`constructions`]), exact Turán-number
//! search ([`search`]) and exact-rational evaluators for the closed-form
//! bounds ([`bounds`]).

pub mod bounds;
mod canon;
pub mod constructions;
pub mod embed;
mod error;
pub mod hypercore;
mod index;
pub mod patterns;
pub mod search;

pub use error::{Error, Result};
pub use hypercore::{blowup, classify_link, induced, link, suspend, Graph, Hypergraph, LinkClass};
pub use patterns::{make_pattern, PatternSpec};
