//! Orthogonal grid drawings of graphs, built by choosing a direction for
//! every edge with a SAT solver and then placing vertices on the grid.
//!
//! The loop in [`pipeline::run_sm`] asks the solver for a labeling that makes
//! a growing set of cycles complete. When no labeling exists it subdivides
//! the edge the refutation blames most; when a labeling exists but cannot be
//! drawn without bends it adds the offending cycles and asks again.

pub mod bench;
pub mod drawability;
pub mod encode;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod layout;
pub mod metrics;
pub mod pipeline;
pub mod shape;

pub use error::{Error, Result};
