use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("vertex id must be non-empty")]
    EmptyVertexId,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(String),
    #[error("edge endpoint `{0}` is not a vertex")]
    UnknownEndpoint(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex `{id}` has negative weight {weight}")]
    NegativeWeight { id: String, weight: i64 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex set must be non-empty")]
    EmptyVertexSet,
    #[error("target vertex set must be non-empty")]
    EmptyTargetSet,
    #[error("divisor is negative away from the vertex set at {0:?}")]
    NotEffectiveAwayFrom(Vec<String>),
    #[error("firing script does not have minimum value 0")]
    NotNormalized,
    #[error("degrees differ: {left} vs {right}")]
    DegreeMismatch { left: String, right: String },
    #[error("vertex `{0}` belongs to the vertex set")]
    VertexInSet(String),
    #[error("divisor is non-zero outside the vertex set at {0:?}")]
    SupportViolation(Vec<String>),
    #[error("the divisor class is not special")]
    NotSpecialClass,
    #[error("the graph does not have the expected shape: {0}")]
    WrongGraph(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NoVertices => "NoVertices",
            Error::EmptyVertexId => "EmptyVertexId",
            Error::DuplicateVertexId(_) => "DuplicateVertexId",
            Error::UnknownEndpoint(_) => "UnknownEndpoint",
            Error::Disconnected => "Disconnected",
            Error::NegativeWeight { .. } => "NegativeWeight",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::EmptyVertexSet => "EmptyVertexSet",
            Error::EmptyTargetSet => "EmptyTargetSet",
            Error::NotEffectiveAwayFrom(_) => "NotEffectiveAwayFrom",
            Error::NotNormalized => "NotNormalized",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::VertexInSet(_) => "VertexInSet",
            Error::SupportViolation(_) => "SupportViolation",
            Error::NotSpecialClass => "NotSpecialClass",
            Error::WrongGraph(_) => "WrongGraph",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}
