use thiserror::Error;

use crate::xor::XorConstraint;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{format} parse error at line {line}, column {column}: {message}")]
    Parse { format: &'static str, line: usize, column: usize, message: String },

    #[error("clause contains both {var} and -{var}")]
    Tautology { var: u32 },

    #[error("variable identifiers must be positive")]
    ZeroVariable,

    #[error("{what} exceeds cap: {actual} > {limit}")]
    CapExceeded { what: &'static str, limit: usize, actual: usize },

    #[error("XOR system is unsatisfiable ({} constraints sum to 0 = 1)", certificate.len())]
    Unsatisfiable { certificate: Vec<XorConstraint> },

    #[error("x2 precondition violated: {0}")]
    X2Precondition(X2Violation),

    #[error("constraint {0} is inconsistent (0 = 1) and has no clause view")]
    InconsistentConstraint(XorConstraint),

    #[error("constraint has {actual} variables, more than the allowed {limit}")]
    ConstraintTooLong { limit: usize, actual: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("circuit input {0} is unbound")]
    UnboundInput(String),

    #[error("invalid proof at step {step}: {reason}")]
    InvalidProof { step: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Which precondition of the two-constraint translation failed.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum X2Violation {
    #[error("constraints share {shared} variables, at least 2 are needed")]
    SharedTooSmall { shared: usize },
    #[error("the first constraint has no private variable")]
    FirstHasNoPrivate,
    #[error("the second constraint has no private variable")]
    SecondHasNoPrivate,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(format: &'static str, line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { format, line, column, message: message.into() }
    }

    pub(crate) fn cap(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::CapExceeded { what, limit, actual }
    }
}
