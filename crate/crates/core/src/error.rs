use thiserror::Error;

/// Errors raised by the Coxeter/Hurwitz engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero in field arithmetic")]
    DivisionByZero,
    #[error("word {0:?} does not encode a reflection")]
    NotAReflection(Vec<usize>),
    #[error("braid move {value} at position {position} is out of range for length {length}")]
    MoveOutOfRange {
        position: usize,
        value: i32,
        length: usize,
    },
    #[error("product of the factorization does not match the target")]
    ProductMismatch,
    #[error("factorization length {length} has the wrong parity or is shorter than rank {rank}")]
    ParityError { length: usize, rank: usize },
    #[error("factorizations have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("factorizations are not connected within {0} explored states")]
    NotConnected(usize),
    #[error("group enumeration exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
