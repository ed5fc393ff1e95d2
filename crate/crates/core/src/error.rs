use alloc::string::String;
use core::fmt;

/// Errors raised by the arithmetic kernels and the criterion pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not a prime, or is too large for the word-sized kernels.
    NotPrime(u64),
    /// The field parameters are unusable (bad degree, oversized `q`, ...).
    InvalidField(String),
    /// The supplied modulus is not monic irreducible of the stated degree.
    ReducibleModulus,
    /// Operands belong to different fields.
    FieldMismatch,
    DivisionByZero,
    /// Polynomial division by a divisor that is not monic in the outer variable.
    NonMonicDivisor,
    /// A polynomial has higher `t`-degree than the requested expansion cap.
    DegreeExceedsCap {
        degree: usize,
        cap: usize,
    },
    /// Shapes of tuples, rows or points disagree.
    ShapeMismatch(String),
    /// A precomputed context does not cover the requested index.
    MissingData(String),
    /// Clearing denominators left a nontrivial denominator. Indicates a bug.
    Integrality(String),
    /// An enumeration or degree budget was exceeded.
    Budget(String),
    /// The requested precision cannot certify anything.
    Precision(String),
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not a supported prime"),
            Error::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            Error::ReducibleModulus => write!(f, "modulus is not monic irreducible"),
            Error::FieldMismatch => write!(f, "operands live in different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonMonicDivisor => write!(f, "divisor is not monic"),
            Error::DegreeExceedsCap { degree, cap } => {
                write!(f, "degree {degree} exceeds expansion cap {cap}")
            }
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::MissingData(msg) => write!(f, "missing data: {msg}"),
            Error::Integrality(msg) => write!(f, "integrality violated: {msg}"),
            Error::Budget(msg) => write!(f, "budget exceeded: {msg}"),
            Error::Precision(msg) => write!(f, "precision: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
