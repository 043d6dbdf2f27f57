//! Exact maximum γ-quasi-clique search.
//!
//! A γ-quasi-clique is a vertex set in which every member is adjacent to at
//! least `γ·(|S|-1)` other members. The family is not closed under taking
//! subsets, which makes direct branch-and-bound awkward. This crate instead
//! reduces the problem to a short sequence of maximum k-plex problems (a
//! hereditary relaxation) and iterates `k` until it reaches a fixpoint.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and the
//! benchmark harness live in the `iterqc` crate.

#![no_std]

extern crate alloc;

mod bitset;
pub mod bounds;
pub mod budget;
mod error;
pub mod gamma;
pub mod gen;
pub mod graph;
pub mod iterqc;
pub mod kplex;
pub mod oracle;

pub use bounds::{get_bounds, reduce_graph, BoundsResult, Reduction};
pub use budget::{Budget, Unlimited};
pub use error::Error;
pub use gamma::Gamma;
pub use graph::{core_decompose, CoreInfo, Graph, VertexSet};
pub use iterqc::{
    basic_iterate, get_k, improved_iter_search, solve, IterTraceEntry, Mode, SolveOptions,
    SolveResult, SolveStats,
};
pub use kplex::{plex_brb, plex_heu, plex_search, PlexConfig, PlexOutcome};
