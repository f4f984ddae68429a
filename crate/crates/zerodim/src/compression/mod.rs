//! Vertical data compression: recoding rectangles into self-synchronizing
//! blocks over a small alphabet, and a row-after-row codec over a
//! countable alphabet.

mod codec;
mod countable;
mod family;

use thiserror::Error;

pub use codec::{compress, decode, recode, CompressionMap, Decoded};
pub use countable::{
    decode_countable, encode_countable, parse_countable, write_countable, CountableCode, CountableLabeling,
};
pub use family::{build_family, CodeFamily};

use crate::arrays::ArrayError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressionError {
    #[error("entropy must be a finite nonnegative number, got {0}")]
    BadEntropy(String),
    #[error("alphabet size must be at least 2 and at most 10, got {0}")]
    BadEll(usize),
    #[error("marker length must be positive")]
    ZeroMarker,
    #[error("block length {n} is shorter than marker length {s} + 2")]
    TooShort { n: usize, s: usize },
    #[error("{needed} rectangles of length {length} but only {available} code blocks; increase k or the alphabet")]
    Capacity { length: usize, needed: usize, available: usize },
    #[error("rectangle at column {column} has no code block")]
    UnknownBlock { column: i64 },
    #[error("coded text loses synchronization at position {position}")]
    Desync { position: usize },
    #[error("window must start and end on row-{row} markers")]
    TruncatedWindow { row: usize },
    #[error("spacing precondition fails at row {row}: {reason}")]
    Spacing { row: usize, reason: String },
    #[error("sector between markers {left} and {right} of row {row} has no free slot")]
    FullSector { row: usize, left: i64, right: i64 },
    #[error("rectangle is missing from the labeling")]
    Unlabeled,
    #[error("countable decode failed at position {position}: {reason}")]
    CountableDecode { position: usize, reason: String },
    #[error("bad countable token `{0}`")]
    BadToken(String),
    #[error(transparent)]
    Array(#[from] ArrayError),
}

/// The least integer strictly larger than `2^h`. Values of `2^h` within
/// `1e-9` of an integer are treated as that integer, so that `h = log₂ 3`
/// gives 4 despite rounding.
pub fn choose_ell(h: f64) -> Result<usize, CompressionError> {
    if !h.is_finite() || h < 0.0 {
        return Err(CompressionError::BadEntropy(h.to_string()));
    }
    let x = h.exp2();
    let r = x.round();
    let base = if (x - r).abs() < 1e-9 { r } else { x.floor() };
    Ok(base as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_ell_examples() {
        assert_eq!(choose_ell(1.0).unwrap(), 3);
        assert_eq!(choose_ell(0.0).unwrap(), 2);
        assert_eq!(choose_ell(3f64.log2()).unwrap(), 4);
        assert_eq!(choose_ell(0.6942).unwrap(), 2);
        assert!(choose_ell(-0.5).is_err());
        assert!(choose_ell(f64::NAN).is_err());
    }
}
