use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed circuit or mismatched register/word shapes.
    #[error("structural error: {0}")]
    Structural(String),

    /// Input data that violates a documented precondition (normalization, signs, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Out-of-range numeric parameter.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("compile error: {0}")]
    Compile(String),

    #[error("capacity error: circuit needs {qubits} qubits but the simulation budget is {budget}; use the analytic marginal path instead")]
    Capacity { qubits: usize, budget: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degenerate surrogate: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
