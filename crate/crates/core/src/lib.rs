//! Extreme sets trees of weighted undirected graphs and minimum-weight edge
//! connectivity augmentation built on top of them.

pub mod augment;
pub mod dsu;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hld;
pub mod laminar;
pub mod merge;
pub mod mincut;
pub mod oracle;
pub mod pipeline;
pub mod respect;
pub mod rng;
pub mod segtree;
pub mod selfcheck;
pub mod sparsify;
pub mod threshold;

pub use error::{Error, Result};
pub use graph::{contract, contract_each, cross_weight, cut_value, ContractionMap, Vertex, VertexSet, WeightedGraph};
pub use mincut::{steiner_mincut, steiner_mincut_fast};
pub use threshold::{Epsilon, Threshold};
