use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse in GF(4)")]
    ZeroInverse,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("subspace is not invariant under the reverse permutation")]
    NotInvariant,

    #[error("invalid socle: {0}")]
    BadSocle(String),

    #[error("operation undefined for the zero code")]
    ZeroCode,

    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("{what} has size {size}, above the ceiling of {ceiling}")]
    TooLarge { what: String, size: String, ceiling: u64 },

    #[error("hat image of the socle is the zero code; the socle bound is undefined")]
    HatDegenerate,

    #[error("invalid DNA symbol {0:?}")]
    BadSymbol(char),
}

impl Error {
    pub(crate) fn out_of_range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }

    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            msg: msg.into(),
        }
    }
}
