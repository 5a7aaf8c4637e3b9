use thiserror::Error;

use crate::exactalg::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A geometric factor `1 - M` was sent to `1 - 1 = 0`.
    #[error("degenerate substitution: factor (1 - {0}) maps to zero")]
    DegenerateSubstitution(Monomial),

    #[error("geometric factor (1 - 1) is zero")]
    ZeroFactor,

    #[error("expression is not a power series in t: {0}")]
    NonTaylor(String),

    #[error("variable {0} is not bound to a value")]
    UnboundVariable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index {index} is not a power of {p}")]
    NotPrimePower { index: String, p: u64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
