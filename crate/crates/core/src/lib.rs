//! Spectral radius thresholds for fractional matchings, `{K2, {Ck}}`-factors
//! and star factors in graphs of given minimum degree.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bitset adjacency graphs, constructors, graph6 / edge-list IO,
//!   canonical forms and exhaustive enumeration of small graphs.
//! * [`spectral`]: shifted power iteration, Perron orbit values and quotient
//!   matrices of equitable partitions.
//! * [`factors`]: deficiency maximisation, fractional matching number and
//!   factor decisions with constructive certificates.
//! * [`extremal`]: the split graphs `K_s ∨ (K_{n-s-t} + tK_1)` and the
//!   three theorem thresholds built from them.
//! * [`verifier`]: exhaustive and sampled checks of the threshold theorems.
//! * [`cli`]: the `sfl` command-line front end.

pub mod cli;
pub mod error;
pub mod extremal;
pub mod factors;
pub mod graph;
pub mod spectral;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Graph, GraphStats, VertexSet};
