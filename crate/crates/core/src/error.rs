use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus polynomial must be monic of degree at least one")]
    NonMonicModulus,
    #[error("polynomial is not squarefree over F_{0}")]
    NotSquarefree(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    Reducible(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix entries belong to different fields")]
    MixedFields,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("conductor {conductor} does not divide group order {order}")]
    BadConductor { conductor: u64, order: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("group has more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("cannot parse group descriptor: {0}")]
    Parse(String),
    #[error("character table schema error: {0}")]
    Schema(String),
    #[error("character table validation failed: {0}")]
    Validation(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
