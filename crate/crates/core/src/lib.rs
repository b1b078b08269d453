//! Word-representable graphs.
//!
//! A word `w` over a vertex alphabet represents the graph in which `x` and
//! `y` are adjacent exactly when they alternate in `w`. This crate provides:
//!
//! - [`word`]: letters, words, alternation and the induced graph;
//! - [`graph`]: labeled graphs, the crown / complete / complete bipartite
//!   families and edge-list / DOT I/O;
//! - [`construct`]: explicit `⌈n/2⌉`-uniform words for crown graphs and the
//!   classic small-`n` fixtures;
//! - [`analyze`]: splittable sets, canonical shifts and the structural
//!   checks used by the crown lower bound;
//! - [`search`]: exact representation numbers of small graphs by exhaustive
//!   search with refutation certificates.

pub mod analyze;
pub mod construct;
pub mod error;
pub mod graph;
pub mod search;
pub mod word;

pub use error::{Error, Result};
pub use graph::Graph;
pub use word::{Letter, Word};
