//! Treewidth approximation by recursive compression.
//!
//! The crate provides the graph and tree-decomposition primitives, balanced
//! separator routines, an exact oracle for small graphs, the dynamic
//! separator data structure over a nice decomposition, and the
//! approximation pipelines built on top of it.

pub mod exact;
pub mod generators;
pub mod decomposer;
pub mod graph;
pub mod separators;
pub mod tables;
pub mod td;

pub use graph::{Graph, GraphError, TwExceeds, VertexSet};
pub use td::{NiceTreeDecomposition, NodeKind, TreeDecomposition};
pub use tables::{DsConfig, DsError, Rebalance, DsState, SetName, StateSnapshot, Update, UpdateStats, WhatSep};
pub use decomposer::{approximate, approximate_with_stats, search_min_k, DecomposeError, DecomposeOutcome, DecomposerConfig, Mode, PartialResult};
