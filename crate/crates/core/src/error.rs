use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("operands live in different prime fields (p={0} and p={1})")]
    MixedField(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("multi-index length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("enumeration of {size} candidates exceeds the bound {bound}")]
    EnumerationTooLarge { size: u128, bound: u128 },
    #[error("search space of {size} points exceeds the bound {bound}")]
    SearchSpaceTooLarge { size: u128, bound: u128 },
    #[error("linear system with {0} unknowns exceeds the dimension bound")]
    DimensionTooLarge(usize),
    #[error("ideal is not differential")]
    NotDifferential,
    #[error("ideal is not proper")]
    NotProper,
    #[error("not a subspace ideal: {0}")]
    NotIdeal(String),
    #[error("algebra is not a quasifield")]
    NotQuasifield,
    #[error("residue field is not the prime field (dimension {0})")]
    ResidueNotPrimeField(usize),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid ring map: {0}")]
    InvalidRingMap(String),
    #[error("set of derivative variables is not closed under derivation: {0}")]
    NotDerivativeClosed(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
