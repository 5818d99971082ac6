//! Kernelization toolkit for the d-Path Vertex Cover problem.
//!
//! Given a graph and a budget `k`, d-PVC asks whether deleting at most `k`
//! vertices leaves no path on `d` vertices. This crate provides:
//!
//! - [`graph`]: a simple undirected graph with stable vertex ids, plus the
//!   DIMACS-like text format in [`io`];
//! - [`paths`]: bounded d-path search and the greedy maximal path packing;
//! - [`matching`]: blossom maximum matching and matchings adjacent to a
//!   vertex;
//! - [`expansion`]: a constructive expansion lemma;
//! - [`kernel_small`]: the reduction-rule kernel for d ∈ {4, 5} with a
//!   quadratic edge bound, plus its structure audit;
//! - [`kernel_general`]: the marking-based kernel for 3 ≤ d ≤ 8;
//! - [`oracle`]: exact solvers used as ground truth;
//! - [`instances`]: seeded generators and the Vertex Cover transform;
//! - [`reference`]: independent brute-force checkers for the test suites.

pub mod error;
pub mod expansion;
pub mod forest;
pub mod graph;
pub mod instance;
pub mod instances;
pub mod io;
pub mod kernel_general;
pub mod kernel_small;
pub mod matching;
pub mod oracle;
pub mod paths;
pub mod reference;
pub mod stats;

pub use error::KernelError;
pub use graph::{Graph, GraphError, VertexId};
pub use instance::PvcInstance;
pub use stats::KernelStats;
