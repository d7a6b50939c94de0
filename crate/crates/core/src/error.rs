use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate action name `{0}`")]
    DuplicateAction(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("component {0} would become negative")]
    NegativeComponent(usize),
    #[error("invalid embedding witness: {0}")]
    InvalidWitness(String),
    #[error("generator {index} is not validated by a connecting run within bounds")]
    GeneratorNotValidated { index: usize },
    #[error("no bounded component certificate: {0}")]
    CertificateNotFound(String),
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}
