//! Generalized graph splines over `Z/mZ`.
//!
//! A spline on an edge-labeled graph `(G, α)` assigns a value of `Z_m` to each
//! vertex so that the two ends of every edge differ by an element of the
//! edge's ideal. This crate computes minimal generating sets of the module of
//! splines, decides when only constant splines exist (with certificates), and
//! builds the dual graphs of Clough–Tocher refined rectangular grids.

pub mod error;
pub mod graph;
pub mod grids;
pub mod io;
pub mod par;
pub mod quotient;
pub mod rankone;
pub mod reduce;
pub mod ring;
pub mod solver;

pub use error::{Result, SplineError};
pub use graph::{LabeledEdge, LabeledGraph};
pub use par::Execution;
pub use rankone::{rank_one_zm, RankOneVerdict};
pub use ring::{Modulus, ZmElement, ZmIdeal};
pub use solver::{solve, Spline, SplineModule};
