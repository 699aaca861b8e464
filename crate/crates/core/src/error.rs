use thiserror::Error;

use crate::Scalar;

pub type Result<T> = std::result::Result<T, WalshError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalshError {
    #[error("resolution too coarse for level {level} (m = {m})")]
    ResolutionTooCoarse { level: u32, m: u32 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("resolution m = {m} exceeds the supported maximum {max}")]
    ResolutionTooFine { m: u32, max: u32 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid exponent p = {0}: must lie in [1, inf]")]
    InvalidExponent(f64),

    #[error("exponent p = {p} outside the admissible range {range}")]
    ExponentOutOfRange { p: f64, range: &'static str },

    #[error("undefined ratio: input is identically zero")]
    UndefinedRatio,

    #[error("lambda = {lambda} in (or too close to) closure of symbol range: distance {delta:e}")]
    InSpectrum { lambda: Scalar, delta: f64 },

    #[error("symbol does not tend to zero")]
    NotC0,

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("cutoffs must be strictly increasing and below {dim}")]
    InvalidCutoffs { dim: usize },
}
