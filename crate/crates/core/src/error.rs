use thiserror::Error;

/// Errors raised by the library. Axiom violations and failed lemma
/// conclusions are reported as data, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be at least {min}, got {got}")]
    OutOfDomain { min: u64, got: u64 },

    #[error("cannot factor {0}: cofactor beyond the trial-division bound is composite")]
    FactorizationLimit(u64),

    #[error("{function} is not defined at {x}")]
    NotInDomain { function: String, x: u64 },

    #[error("{0} is an order-key function and cannot enter arithmetic or distances")]
    OrderKeyInArithmetic(String),

    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("modulus {0} needs at least two distinct prime divisors")]
    TooFewPrimeDivisors(u64),

    #[error("missing value for prime power {0}")]
    MissingPrimePower(u64),

    #[error("value out of range: {0}")]
    RangeViolation(String),

    #[error("not a bijection: {0}")]
    NotABijection(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("empty window [{0}, {1}]")]
    EmptyWindow(i64, i64),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("checkpoint mismatch: {0}")]
    Checkpoint(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}
