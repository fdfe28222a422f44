use thiserror::Error;

use crate::bitset::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit set width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("{what} is {size}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// A brute-force scan was asked to exceed its cap. Raise the cap with
    /// the `DIJOIN_GUARD` environment variable.
    #[error("guard exceeded: {what} needs {size}, guard is {guard} (set DIJOIN_GUARD to raise)")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        guard: usize,
    },

    /// Malformed instance file; the message carries line and column.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("not a caterpillar")]
    NotCaterpillar,

    #[error("not a caterpillar subdivision")]
    NotCaterpillarSubdivision,

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid wedge: {0}")]
    InvalidWedge(String),

    #[error("graph is not planar")]
    NotPlanar,

    /// Some vertex set violates a required cut bound.
    #[error("hypothesis violated: {reason} (witness {witness})")]
    Hypothesis { reason: String, witness: VertexSet },

    /// An edge of S whose tree path is directed.
    #[error("hypothesis violated: tree path of edge {edge} is directed")]
    DirectedTreePath { edge: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no engine applies: {0}")]
    NoEngine(String),

    /// A postcondition check failed inside an algorithm. This indicates a
    /// bug, never a property of the input.
    #[error("internal check failed: {0}")]
    Internal(String),
}
