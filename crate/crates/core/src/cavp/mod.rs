//! NIST CAVP HMAC_DRBG response files: parsing, serialization and a harness
//! that replays every case through [`crate::drbg`].

mod format;
mod harness;

pub use format::{parse, serialize};
pub use harness::{
    run_case, run_file, run_file_filtered, CaseOutcome, CaseResult, GroupSummary, Summary,
};

use thiserror::Error;

use crate::encoding::HexError;

/// The only mechanism the harness executes.
pub const SUPPORTED_MECHANISM: &str = "SHA-256";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CavpError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("unsupported mechanism {0:?}")]
    UnsupportedMechanism(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed line {0:?}")]
    Malformed(String),
    #[error(transparent)]
    Hex(#[from] HexError),
    #[error("field {0} appears outside a COUNT block")]
    FieldOutsideCase(String),
    #[error("group is missing header {0}")]
    MissingHeader(&'static str),
    #[error("header {key} has invalid value {value:?}")]
    BadHeaderValue { key: String, value: String },
    #[error("{field} has {actual_bits} bits, header declares {declared_bits}")]
    LengthMismatch {
        field: String,
        declared_bits: usize,
        actual_bits: usize,
    },
    #[error("duplicate COUNT = {0}")]
    DuplicateCount(u32),
    #[error("expected COUNT = {expected}, found {found}")]
    CountOutOfOrder { expected: u32, found: u32 },
    #[error("case is missing field {0}")]
    MissingField(&'static str),
    #[error("{field} appears {found} times, expected {expected}")]
    FieldCount {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("EntropyInputReseed and AdditionalInputReseed must appear together")]
    PartialReseed,
}

/// A bracketed header line: `[Tag]` or `[Key = Value]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Header {
    Tag(String),
    Param { key: String, value: String },
}

/// Bit lengths declared by a group's headers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DeclaredLens {
    pub entropy_input: usize,
    pub nonce: usize,
    pub personalization: usize,
    pub additional_input: usize,
    pub returned_bits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CavpFile {
    /// Comment lines (without the leading `#`) found before the first group.
    pub comments: Vec<String>,
    pub groups: Vec<CavpGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CavpGroup {
    /// The first parameterless bracket tag, e.g. `SHA-256`.
    pub mechanism: String,
    pub prediction_resistance: bool,
    pub lens: DeclaredLens,
    /// Every header line in file order, recognised or not.
    pub headers: Vec<Header>,
    pub cases: Vec<CavpCase>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReseedInput {
    pub entropy_input: Vec<u8>,
    pub additional_input: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CavpCase {
    pub count: u32,
    pub entropy_input: Vec<u8>,
    pub nonce: Vec<u8>,
    pub personalization: Vec<u8>,
    pub reseed: Option<ReseedInput>,
    /// One entry per generate call.
    pub additional_inputs: Vec<Vec<u8>>,
    /// One entry per generate call in prediction-resistance groups, else empty.
    pub entropy_pr: Vec<Vec<u8>>,
    pub returned_bits: Vec<u8>,
    /// Fields with names the harness does not use, in file order.
    pub extra: Vec<(String, Vec<u8>)>,
}

impl CavpFile {
    pub fn case_count(&self) -> usize {
        self.groups.iter().map(|g| g.cases.len()).sum()
    }
}

impl CavpGroup {
    pub fn is_supported(&self) -> bool {
        self.mechanism == SUPPORTED_MECHANISM
    }
}
