//! Strong conflict-free vertex-connection (strong cfvc) colorability.
//!
//! A proper k-coloring of a connected graph is a *strong cfvc coloring* when
//! every pair of distinct vertices is joined by a shortest path on which some
//! color occurs exactly once; `svcfc(G)` is the least such k. This crate
//! provides:
//!
//! - [`graph`]: graph representation, text I/O, BFS shortest-path DAGs,
//!   false-twin partitions, greedy vertex covers, complete-bipartite
//!   recognition;
//! - [`verify`]: the polynomial-time coloring verifier with bad-pair
//!   reporting, plus an exhaustive path-enumeration oracle for testing;
//! - [`solver`]: exact exponential search, the vertex-cover-parameterized
//!   pipeline with twin kernelization and certificate lift-back, and
//!   `svcfc` computation;
//! - [`reduce`]: a compiler from positive NAE-SAT formulas to graph instances
//!   whose strong cfvc 3-colorability matches NAE-satisfiability, with
//!   mappings in both directions;
//! - [`fixtures`]: small built-in example instances.

#![forbid(unsafe_code)]

pub mod fixtures;
pub mod graph;
pub mod reduce;
pub mod rng;
pub mod solver;
pub mod verify;

pub use graph::{bfs_dag, diameter, false_twin_classes, greedy_vertex_cover, is_complete_bipartite, is_connected, Graph};
pub use solver::{solve_fpt, solve_k, svcfc_number, Decision, SolveConfig, SolveOutcome};
pub use verify::{verify_strong_cfvc, Coloring, VerificationReport};
