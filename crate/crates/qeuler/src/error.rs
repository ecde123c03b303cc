use thiserror::Error;

/// Errors produced by the exact, analytic and p-adic layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Evaluation hit a zero of the denominator. The offending denominator is
    /// reported in its canonical string form.
    #[error("pole: denominator {denominator} vanishes at the evaluation point")]
    Pole { denominator: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),

    #[error("cost budget exceeded: {0}")]
    Budget(String),

    #[error("insufficient p-adic precision: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
