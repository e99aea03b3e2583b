use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("codec error: {0}")]
    Codec(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("capability limit: {0}")]
    Capability(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("degenerate input: {0}")]
    Degeneracy(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("fixture `{name}` failed revalidation: {reason}")]
    Fixture { name: String, reason: String },
    #[error("parse error at line {line}: {message} (`{text}`)")]
    Parse {
        line: usize,
        text: String,
        message: String,
    },
    #[error("decode error: {0}")]
    Decode(String),
    #[error("solver returned an invalid model: clause {clause} is falsified")]
    InvalidModel { clause: usize },
    #[error("no external SAT solver configured: set {0} or pass --solver-path")]
    SolverMissing(&'static str),
    #[error("external solver failed: {0}")]
    Solver(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
