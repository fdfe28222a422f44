//! Dijoins, biases and directings of trees.
//!
//! A *dijoin* of a digraph is an edge set meeting every directed cut. This
//! crate decides when the edge set of a digraph splits into two dijoins
//! for two families of instances, via directings of an auxiliary tree that
//! meet a *bias* (a family of vertex sets with weak lattice closure).

pub mod bias;
pub mod bitset;
pub mod caterpillar;
pub mod digraph;
pub mod dot;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod guard;
pub mod harness;
pub mod instance;
pub mod planar;
pub mod solver;
pub mod tree;

pub use bitset::{BitSet, EdgeSet, VertexSet};
pub use digraph::{Digraph, Directing, Edge, EdgeId, VertexId};
pub use error::{Error, Result};
