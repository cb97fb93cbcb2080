use thiserror::Error;

/// Errors raised by ring construction and the checks built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^62)")]
    PrimeTooLarge(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("characteristic {characteristic} too small: need 0 or a prime above {bound}")]
    CharacteristicTooSmall { characteristic: u64, bound: u64 },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("direction vector is zero")]
    ZeroVector,
    #[error("degree {degree} out of range (maximum {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("number of variables mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("ring is not Artinian in the computed range (hypersurface is singular)")]
    SingularRing,
    #[error("element lies in the ideal (its class is zero)")]
    AlphaInIdeal,
    #[error("coefficient denominator divisible by {0}")]
    PrimeReduction(u64),
    #[error("prime {prime} divides the required nonzero constant {value}")]
    PrimeDividesConstant { prime: u64, value: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
