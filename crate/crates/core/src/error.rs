use thiserror::Error;

/// Errors raised by graph construction, edit operations and numeric routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("edge index {index} out of range ({edge_count} edges)")]
    EdgeOutOfRange { index: usize, edge_count: usize },

    #[error("invalid hypergraph: {0}")]
    Invalid(String),

    #[error("operation would empty edge {index}")]
    EmptiedEdge { index: usize },

    #[error("operation would duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("hypergraph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error(
        "eigensolve did not converge within {iterations} iterations \
         (rho estimate {rho}, residual {residual:e})"
    )]
    NoConvergence {
        iterations: usize,
        rho: f64,
        residual: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
