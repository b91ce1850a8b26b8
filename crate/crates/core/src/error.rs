use thiserror::Error;

/// Errors raised by the arithmetic, mutation and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("modulus {0} is not an odd prime below 2^32")]
    InvalidModulus(u64),
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),
    #[error("series precision must be at least 1")]
    ZeroPrecision,
    #[error("not a unit (constant term is zero)")]
    NotUnit,
    #[error("not a flat element (constant term is {0})")]
    NotFlat(String),
    #[error("log/exp over F_{p} need precision <= p, got {precision}")]
    CharPPrecision { p: u64, precision: usize },
    #[error("series has nonzero constant term")]
    NonzeroConstant,
    #[error("index {index} out of range for precision {precision}")]
    IndexOutOfRange { index: usize, precision: usize },
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("invalid dilogarithm parameters m={m}, w={w}: need 1 < m < w < 2m")]
    InvalidDilogParams { m: usize, w: usize },
    #[error("operation requires characteristic 0")]
    RequiresCharZero,
    #[error("operation requires an odd prime field")]
    RequiresPrimeField,
    #[error("exchange matrix: {0}")]
    InvalidMatrix(String),
    #[error("schedule: {0}")]
    InvalidSchedule(String),
    #[error("evaluation point invalid at step {step} (direction {direction}): {reason}")]
    InvalidPoint {
        step: usize,
        direction: usize,
        reason: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
