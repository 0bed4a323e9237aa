use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not irreducible over Q")]
    Reducible(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient at degree {degree} is not invertible")]
    NotInvertible { degree: i64 },

    #[error("operands live over different differential rings")]
    RingMismatch,

    #[error("map does not commute with the derivations: {0}")]
    DerivationMismatch(String),

    #[error("precision too shallow: need degree {needed}, known down to {known}")]
    PrecisionTooShallow { needed: i64, known: i64 },

    #[error("operator degree {0} exceeds the supported top degree")]
    DegreeTooLarge(i64),

    #[error("linear system is {kind} at order {order}")]
    LinearSystem { order: i64, kind: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
