use thiserror::Error;

/// Errors raised by graph construction, the closure machinery and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("graph is disconnected: `{first}` and `{second}` lie in different components")]
    Disconnected { first: String, second: String },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A step of the pull-back construction produced something its proof
    /// rules out. Seeing this means a bug, not bad input.
    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
