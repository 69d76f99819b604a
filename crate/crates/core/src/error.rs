use thiserror::Error;

/// Errors raised by the algebra engine and the experiment drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    InvalidPrime(u64),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("q = {q} is not a power of the characteristic {p}")]
    InvalidQ { q: u64, p: u32 },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("polynomial is not homogeneous: it has terms in degrees {degrees:?}")]
    Inhomogeneous { degrees: Vec<u64> },
    #[error("invalid variable declaration: {0}")]
    InvalidVariable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("the quotient is not Artinian (dimension {dimension})")]
    NotArtinian { dimension: usize },
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("(J, z) is not primary to the irrelevant ideal (dimension {dimension})")]
    NotMPrimary { dimension: usize },
    #[error("elements are not contained in the ideal: {0}")]
    InvalidElements(String),
    #[error("no generic choice found after {attempts} attempts (seed {seed})")]
    GenericityFailure { seed: u64, attempts: usize },
    #[error("no nonzero Jacobian test-element candidates")]
    NoCandidates,
}

pub type Result<T> = std::result::Result<T, Error>;
