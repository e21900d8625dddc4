use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("graph has {found} vertices, operation needs at least {needed}")]
    TooSmall { needed: usize, found: usize },

    #[error("{what}: {found} exceeds the configured limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        found: usize,
        limit: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coefficient does not fit in a machine integer after row scaling")]
    CoefficientOverflow,

    #[error("linear system is infeasible")]
    InfeasibleSystem,

    #[error("branch-and-bound node budget of {0} exhausted")]
    NodeBudgetExceeded(u64),

    #[error("graph is not l1-embeddable")]
    NotL1Graph,

    #[error("scale search hit the node budget before certifying any scale")]
    ScaleSearchInconclusive,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("certificate does not decompose the graph metric: {0}")]
    CertificateMismatch(String),

    #[error("realization uses {columns} columns at scale {scale}, more than scale*(diameter+1) = {allowed}")]
    SizeConditionViolated {
        columns: usize,
        scale: u64,
        allowed: u64,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("bad parameters for `{family}`: {message}")]
    BadParameters { family: String, message: String },

    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),

    #[error("fixture corrupt: {0}")]
    FixtureCorrupt(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn bad_params(family: &str, message: impl Into<String>) -> Self {
        Error::BadParameters {
            family: family.to_string(),
            message: message.into(),
        }
    }
}
