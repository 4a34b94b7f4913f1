use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("line {line}: malformed edge `{text}`")]
    MalformedEdge { line: usize, text: String },

    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },

    #[error("endpoint {vertex} out of range for a graph on {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),

    #[error("size {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("unknown policy `{0}`")]
    UnknownPolicy(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("ordering is not a permutation of the {n} host vertices")]
    NotAPermutation { n: usize },

    #[error("node budget of {budget} expanded states exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("invalid set system: {0}")]
    InvalidSetSystem(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("revealed state does not embed into the host graph")]
    NotEmbeddable,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Size-limit and budget failures, as opposed to malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::BudgetExhausted { .. })
    }
}
