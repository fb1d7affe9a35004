use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2 <= p < 2^31")]
    ModulusOutOfRange(u64),
    #[error("extension degree {degree} exceeds the supported maximum {max}")]
    ExtensionTooLarge { degree: usize, max: usize },
    #[error("invalid extension modulus: {0}")]
    InvalidModulus(String),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial does not split over the given field")]
    DoesNotSplit,
    #[error("band width {band} must be smaller than the matrix size {size}")]
    BandTooWide { band: usize, size: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("size {size} exceeds the cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("({0}, {1}) is outside the domain of the geometric mean map")]
    NotInDomain(u64, u64),
    #[error("an odd prime is required")]
    OddPrimeRequired,
    #[error("matrix is singular")]
    Singular,
    #[error("block {0} is singular")]
    SingularBlock(usize),
    #[error("automaton is not reversible; zero-sum eigenvalue combination {witness:?}")]
    NotReversible { witness: Vec<String> },
    #[error("internal verification failed: {0}")]
    InternalVerificationFailed(String),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
