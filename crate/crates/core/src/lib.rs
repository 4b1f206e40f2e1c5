//! Solver toolkit for the Matching Augmentation Problem (MAP).
//!
//! A MAP instance is a multigraph whose edges weigh 0 ("light") or 1
//! ("heavy"), where the light edges form a matching `M`. The task is to pick
//! the fewest heavy edges `E'` such that `M ∪ E'` is 2-edge-connected.
//!
//! The crate implements the LP-based approximation:
//!
//! 1. [`cut_lp::solve_cut_lp`] computes an optimal extreme point `x*` of the
//!    cut relaxation with exact rational arithmetic and min-cut separation.
//! 2. [`dfs::guided_dfs`] runs a DFS on the support of `x*`, taking light
//!    edges first and otherwise the heavy edge with the largest `x*_e`.
//! 3. [`tap::optimal_uplink_cover`] augments the DFS tree with a minimum set
//!    of back edges (uplinks).
//!
//! [`pipeline::solve`] runs the three steps end to end. Ground truth for small
//! instances lives in [`oracle`], and [`toolkit`] provides instance files,
//! generators and the experiment runner used by the `maptool` binary.

pub mod cut_lp;
pub mod dfs;
mod error;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod rational;
mod simplex;
pub mod tap;
pub mod toolkit;

pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeVector, MapInstance, MultiGraph, VertexId, Weight};
pub use rational::Rational;
