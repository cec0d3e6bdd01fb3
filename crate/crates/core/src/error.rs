use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("exponent overflow (exponents are limited to 2^31)")]
    ExponentOverflow,

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured resource cap was hit. Never a wrong answer.
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("semigroup is not pure: {witness:?} lies in the lattice and the orthant but not in the semigroup")]
    NotPure { witness: Vec<u32> },

    #[error("exponent {exponents:?} lies outside the certified box [0,{bound}]")]
    BoxExceeded { exponents: Vec<u32>, bound: u32 },

    #[error("box too small: {0}")]
    BoxTooSmall(String),

    #[error("exponent {0:?} is not in the semigroup")]
    NotInSemigroup(Vec<u32>),

    #[error("radical hypothesis fails: {0}")]
    RadicalHypothesis(String),

    #[error("prime {p} divides a coefficient denominator")]
    PrimeExcluded { p: u64 },

    #[error("the subring has a nonzero toric ideal, so it is not a polynomial ring")]
    NonzeroToricIdeal,
}

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    /// Whether this error reports an exhausted resource rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::ResourceBound(_) | Error::BoxTooSmall(_) | Error::BoxExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
