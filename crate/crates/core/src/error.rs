use thiserror::Error;

use crate::exponent::QExponent;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two series from different exponent grids were combined.
    #[error("exponent denominators differ: {left} vs {right}")]
    DenominatorMismatch { left: i64, right: i64 },

    /// A coefficient was requested at or beyond the validity order.
    #[error("q-exponent {q_exp} is outside the validity order {order}")]
    OutOfValidity { q_exp: QExponent, order: QExponent },

    #[error("zeta exponent {zeta_exp} is not divisible by {n}")]
    NotDivisible { zeta_exp: i64, n: i64 },

    #[error("exponent {value} cannot be represented with denominator {den}")]
    NotRepresentable { value: QExponent, den: i64 },

    #[error("usage: {0}")]
    Usage(String),

    /// An internal consistency check failed; always indicates a bug.
    #[error("integrity: {0}")]
    Integrity(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
