//! Equilibrium partitions of a linear world `[-1, 1]` into states.
//!
//! Every locale on the line has identical land and labor. Lords draw
//! borders to trade off cheaper consumption (lower remoteness, which
//! favours larger states) against a governance cost proportional to state
//! size. Starting from the world geometric center, each state's size is
//! pinned down by a first-order condition, which gives a unique, mirror
//! symmetric partition.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! - [`model`]: parameters, remoteness, trade costs, welfare, numeraire.
//! - [`solver`]: the outward recursion, shocked variants and the audit.
//! - [`trade`]: gravity flows between states and fixed areas.
//! - [`migration`]: interstate labor flows under real-wage equalization.
//! - [`geopolitics`]: comparative statics, national opinion, separatism.
//! - [`network`]: pairwise-stable network formation over arbitrary geography.

#![no_std]
// negated comparisons also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod bisect;
mod error;
pub mod geopolitics;
pub(crate) mod math;
pub mod migration;
pub mod model;
pub mod network;
pub mod solver;
pub mod trade;

pub use error::{Error, Result};
pub use model::{ModelParams, NormalizationConstants, StateRecord, WelfareBundle};
pub use solver::{EquilibriumAudit, Partition};
