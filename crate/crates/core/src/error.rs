use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole: {angle} = {value} is a singular point")]
    Pole { angle: &'static str, value: f64 },

    #[error("cannot combine expressions carrying different damping factors")]
    DampingMismatch,

    #[error("invalid quantum numbers (K={k}, l={l}, m={m}): need 0 <= l <= K and |m| <= l")]
    InvalidQuantumNumbers { k: i64, l: i64, m: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown Gegenbauer convention `{0}`")]
    UnknownConvention(String),

    #[error("unknown identity check `{0}`")]
    UnknownCheck(String),

    #[error("linear system is singular or inconsistent: {0}")]
    SingularSystem(String),

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),
}
