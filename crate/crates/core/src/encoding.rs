//! Lowercase hex encoding used for all octet I/O.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid hex string: {0}")]
pub struct HexError(String);

pub fn to_hex(bytes: &[u8]) -> String {
    hex::encode(bytes)
}

/// Decodes a hex string. Surrounding whitespace is ignored and the empty
/// string decodes to no octets.
pub fn from_hex(s: &str) -> Result<Vec<u8>, HexError> {
    let s = s.trim();
    hex::decode(s).map_err(|e| HexError(format!("{s:?}: {e}")))
}
