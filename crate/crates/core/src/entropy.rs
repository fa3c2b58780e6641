//! Entropy sources consumed by reseeding.
//!
//! A deterministic stream hands out a fixed byte string front to back, which
//! is how known-answer tests feed entropy. The system stream draws from the
//! operating system.

use thiserror::Error;

use crate::encoding::{from_hex, HexError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EntropyError {
    #[error("entropy exhausted: requested {requested} octets, {available} available")]
    Exhausted { requested: usize, available: usize },
    #[error("system entropy source failed: {0}")]
    System(String),
    #[error(transparent)]
    Hex(#[from] HexError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntropyStream {
    Deterministic { bytes: Vec<u8>, pos: usize },
    System,
}

impl EntropyStream {
    pub fn deterministic(bytes: impl Into<Vec<u8>>) -> Self {
        EntropyStream::Deterministic {
            bytes: bytes.into(),
            pos: 0,
        }
    }

    pub fn from_hex(s: &str) -> Result<Self, EntropyError> {
        Ok(Self::deterministic(from_hex(s)?))
    }

    pub fn system() -> Self {
        EntropyStream::System
    }

    /// Octets left in a deterministic stream; `None` for the system source.
    pub fn remaining(&self) -> Option<usize> {
        match self {
            EntropyStream::Deterministic { bytes, pos } => Some(bytes.len() - pos),
            EntropyStream::System => None,
        }
    }

    /// Removes and returns the next `n` octets. On failure the stream is
    /// left as it was.
    pub fn take(&mut self, n: usize) -> Result<Vec<u8>, EntropyError> {
        match self {
            EntropyStream::Deterministic { bytes, pos } => {
                let available = bytes.len() - *pos;
                if n > available {
                    return Err(EntropyError::Exhausted {
                        requested: n,
                        available,
                    });
                }
                let out = bytes[*pos..*pos + n].to_vec();
                *pos += n;
                Ok(out)
            }
            EntropyStream::System => {
                let mut out = vec![0u8; n];
                getrandom::getrandom(&mut out).map_err(|e| EntropyError::System(e.to_string()))?;
                Ok(out)
            }
        }
    }
}
