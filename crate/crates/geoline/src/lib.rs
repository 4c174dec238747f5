//! File formats and the command-line front end for `geoline-core`.
//!
//! Partitions, network configs and graphs are JSON documents. Floats are
//! written with 17 significant digits so every document round-trips
//! exactly. Tabular commands can emit CSV instead.

// negated comparisons also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod document;
pub mod error;
pub mod json;
pub mod network_io;

mod cli;

pub use cli::{run, THREADS_ENV};
