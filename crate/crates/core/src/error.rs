use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported field size p^e = {p}^{e} (cap is 2^20)")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("invalid field modulus: {0}")]
    BadModulus(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("element is not a square")]
    NonSquare,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("rank bound {r} out of range 0..={n}")]
    RankOutOfRange { r: usize, n: usize },
    #[error("half-minor size {0} must be odd and at most 9")]
    HalfMinorSize(usize),
    #[error("{what}: {needed} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
