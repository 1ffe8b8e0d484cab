use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("modulus degree {got} does not match extension degree {want}")]
    DegreeMismatch { want: usize, got: usize },
    #[error("field order {q} exceeds the configured limit {limit}")]
    FieldTooLarge { q: u128, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("enumeration size {size} exceeds cap {cap}")]
    EnumerationCapExceeded { size: u128, cap: u64 },
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: u128, cap: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the projective identity has no classification")]
    IdentityClass,
    #[error("characteristic polynomial is reducible")]
    ReducibleCharPoly,
    #[error("degree {n} is not divisible by the element order {order}")]
    NotDivisible { n: u64, order: u64 },
    #[error("missing value for divisor {0}")]
    MissingDivisorValue(u64),
    #[error("degree {0} is below the formula's range")]
    DegreeTooSmall(u64),
    #[error("count formula did not divide exactly (internal bug)")]
    NonIntegerResult,
    #[error("polynomial must be monic")]
    NonMonicInput,
    #[error("denominator of the fractional transformation vanishes")]
    DenominatorZero,
    #[error("integer overflow in exact arithmetic")]
    NumericOverflow,
    #[error("subgroup closure exceeded cap {0}")]
    ClosureCapExceeded(u64),
    #[error("parse error: {0}")]
    Parse(String),
}
