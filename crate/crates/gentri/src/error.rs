use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown block kind `{0}`")]
    UnknownKind(String),
    #[error("gluing error: {0}")]
    Gluing(String),
    #[error("glued quiver is not connected: {0}")]
    Connectivity(String),
    #[error("invalid quiver: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("weight error: {0}")]
    Weight(String),
    #[error("not a triangulation quiver: {0}")]
    NotTriangulation(String),
    #[error("surface structure error: {0}")]
    Structure(String),
    #[error("stage mismatch: {0}")]
    Stage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
