use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("variable table: {0}")]
    Table(String),
    #[error("polynomials live over different variable tables")]
    TableMismatch,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("{0}")]
    Undefined(String),
    #[error("splitting precondition violated: {0}")]
    Precondition(String),
    #[error("stage {stage}: {source}")]
    Stage { stage: usize, source: Box<Error> },
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    #[error("internal identity failed: {0}")]
    Identity(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
