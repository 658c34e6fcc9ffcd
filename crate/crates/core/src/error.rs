use thiserror::Error;

/// Errors raised by the library.
///
/// `TheoremViolation` and `ModeMismatch` signal that a mathematical invariant
/// failed at run time; everything else is a rejected input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{degree} exceeds the 2^63 encoding capacity")]
    TooLarge { p: u64, degree: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element does not belong to this field (expected {expected} residues mod {p})")]
    DimensionMismatch { expected: usize, p: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("code {code} out of range for a field of order {order}")]
    OutOfRange { code: u64, order: u64 },
    #[error("argument out of range: {0}")]
    ArgOutOfRange(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("linearized polynomial must have q-degree at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("sweep infeasible: {0}")]
    InfeasibleSweep(String),
    #[error("n = {n} lies outside the characterized range n <= {bound} for d = {d}")]
    OutsideTheoremRange { n: u32, d: u32, bound: u32 },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("enumeration modes disagree: {0}")]
    ModeMismatch(String),
}

impl Error {
    /// True for failures of a mathematical invariant rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_) | Error::ModeMismatch(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
