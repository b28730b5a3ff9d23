use thiserror::Error;

/// Errors raised anywhere in the coloring pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("repeated vertex in edge {edge}")]
    RepeatedVertex { edge: usize },

    #[error("vertex {vertex} out of range in edge {edge}")]
    VertexOutOfRange { edge: usize, vertex: usize },

    #[error("duplicate edge {edge} (same vertex set as edge {first})")]
    DuplicateEdge { edge: usize, first: usize },

    /// The linearity reduction collapsed an edge, which certifies that the
    /// input admits no 2-LO coloring.
    #[error("not 2-LO colorable witness: edge {edge} collapsed under forced merges")]
    NotTwoLoColorable { edge: usize },

    #[error("vertex {vertex} is not assigned a color")]
    Unassigned { vertex: usize },

    #[error("could not place {requested} linear edges (placed {placed} after {attempts} attempts)")]
    Generation {
        requested: usize,
        placed: usize,
        attempts: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "solver stalled after {iterations} iterations: norm residual {norm_residual:.3e}, edge residual {edge_residual:.3e}"
    )]
    Stalled {
        iterations: usize,
        norm_residual: f64,
        edge_residual: f64,
    },

    #[error("inconsistent gammas on edge {edge}: sum {sum} differs from -1 by more than {slack:.3e}")]
    InconsistentGammas { edge: usize, sum: f64, slack: f64 },

    #[error("set is not {kind} independent: edge {edge}")]
    NotIndependent { kind: &'static str, edge: usize },

    #[error("{stage}: retry budget of {budget} exhausted{}", witness.map(|e| format!(" (edge {e})")).unwrap_or_default())]
    RetryBudget {
        stage: &'static str,
        budget: usize,
        witness: Option<usize>,
    },

    #[error("{stage}: coloring is not valid on edge {edge}")]
    Validity { stage: &'static str, edge: usize },

    #[error("{stage}: no progress in an iteration")]
    Stagnation { stage: &'static str },

    #[error("instance too large for exhaustive search: {0}")]
    SizeGuard(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
