use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    /// An exhaustive search gave up before it could certify an answer.
    #[error("{what}: search budget of {budget} exhausted")]
    BudgetExceeded { what: &'static str, budget: u64 },

    /// The low-boundary partition could not meet its boundary target.
    #[error("partition contract failed: |boundary| = {boundary} exceeds {target} of {vertices} vertices")]
    PartitionContract {
        boundary: usize,
        vertices: usize,
        target: String,
    },

    #[error("node program did not halt within {max_rounds} rounds")]
    RoundLimit { max_rounds: usize },

    #[error("node {from} addressed a message to non-neighbor {to}")]
    InvalidRecipient { from: VertexId, to: VertexId },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
