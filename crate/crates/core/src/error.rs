use thiserror::Error;

use crate::horseshoe::PlanePoint;

/// Errors raised by the core algorithms.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet needs at least two symbols, got {0}")]
    AlphabetTooSmall(usize),

    #[error("symbol {symbol} outside alphabet 1..={m}")]
    SymbolOutOfRange { symbol: u8, m: u8 },

    #[error("{0} must not be empty")]
    EmptyWord(&'static str),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("cylinder window [{start}, {end}] has the wrong orientation: {expected}")]
    WrongOrientation { start: i64, end: i64, expected: &'static str },

    #[error("sequences do not share a common {0} set")]
    NotInCommonSet(&'static str),

    #[error("degenerate pair: {0}")]
    Degenerate(&'static str),

    #[error("operation requires a universal sequence")]
    NotUniversal,

    #[error("point {point} escapes the horseshoe strips at step {step}")]
    Escapes { step: i64, point: PlanePoint },

    #[error("rectangle count 2^{exponent} exceeds the cap 2^{cap}")]
    RectangleCap { exponent: u32, cap: u32 },

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("block {0} was not found within the enumeration bound")]
    BlockNotFound(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
