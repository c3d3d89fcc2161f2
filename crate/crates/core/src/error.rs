use crate::graph::Topology;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid dimensions m={m}, n={n} for {topology}: {reason}")]
    Dimension {
        m: usize,
        n: usize,
        topology: Topology,
        reason: &'static str,
    },

    #[error("vertex ({row},{col}) is outside the {m}x{n} product")]
    VertexOutOfRange {
        row: usize,
        col: usize,
        m: usize,
        n: usize,
    },

    #[error("row {row} is out of range for m={m}")]
    RowOutOfRange { row: i64, m: usize },

    #[error("column {col} is out of range for a path with n={n}")]
    ColumnOutOfRange { col: i64, n: usize },

    #[error("operation requires a {expected} graph, got {found}")]
    WrongTopology { expected: Topology, found: Topology },

    #[error("sets belong to different graphs ({0:?} vs {1:?})")]
    DimensionMismatch((usize, usize), (usize, usize)),

    #[error("pattern {pattern} is undefined for t={t}, k={k}")]
    PatternRange {
        pattern: &'static str,
        t: i64,
        k: usize,
    },

    #[error("unsupported parameters m={m}, n={n}, {topology}: {reason}")]
    Unsupported {
        m: usize,
        n: usize,
        topology: Topology,
        reason: String,
    },

    #[error("no self-identifying code exists for this graph")]
    Infeasible,

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
