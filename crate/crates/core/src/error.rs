use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("element {element} is not invertible (gcd with modulus {gcd})")]
    NonUnit { element: String, gcd: BigInt },

    #[error("element {element} is not invertible in {ring}")]
    NotInvertible { element: String, ring: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient truncation: need exponent {needed}, series known through {available}")]
    InsufficientTruncation { needed: i64, available: i64 },

    #[error("degenerate evaluation points: {0}; use durfee_gf_deriv or direct enumeration")]
    DegeneratePoints(String),

    #[error("target is not in the monomial class: {0}")]
    NotInClass(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
