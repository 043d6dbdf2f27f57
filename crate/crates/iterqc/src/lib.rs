//! File formats, wall-clock budgets, reports, the benchmark harness and the
//! command-line front end around [`iterqc_core`].

pub mod bench;
pub mod cli;
pub mod clock;
pub mod io;
pub mod report;

pub use iterqc_core as core;
