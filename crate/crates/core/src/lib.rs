//! Exact `(a, b)`-sparsity for simple graphs, count-matroid partitions, and
//! the decomposition of `(m, 0)`-sparse graphs into a forest plus an
//! `(m, 1 - 2m)`-sparse graph.

pub mod bench;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod matroid;
pub mod oracle;
pub mod params;
pub mod partition;
pub mod rational;
pub mod refine;
pub mod sparsity;

mod flow;
mod pebble;

pub use decompose::{decompose_ksw, verify_decomposition, CaseLabel, Decomposition};
pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, VertexSet};
pub use matroid::{make_oracle, CountMatroidOracle, Engine, ValidityClass};
pub use params::{SparsityCertificate, SparsityParams, Verdict};
pub use partition::{
    matroid_union_partition, partition_forest_plus, partition_sparse, PartitionResult,
};
pub use rational::Rational;
pub use refine::{brooks_refine, eliminate_triangles, find_bad_sets, ForestPartition};
