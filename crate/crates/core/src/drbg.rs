//! HMAC-DRBG with HMAC-SHA256, octet oriented.
//!
//! The state machine follows SP 800-90A section 10.1.2 with the request
//! limits Mbed TLS applies by default (1024 output octets per call, 256
//! octets of personalization or additional input). Reseeding is explicit:
//! [`DrbgState::generate`] reports [`DrbgError::ReseedRequired`] and only
//! [`DrbgState::generate_with_entropy`] pulls fresh entropy on its own.

use std::fmt;

use thiserror::Error;
use zeroize::Zeroize;

use crate::entropy::{EntropyError, EntropyStream};
use crate::prf::{hmac_sha256, DIGEST_LEN};

pub const SEED_LEN: usize = DIGEST_LEN;
pub const MAX_RESEED_INTERVAL: u64 = 1 << 48;
pub const DEFAULT_RESEED_INTERVAL: u64 = 10_000;
pub const DEFAULT_MAX_REQUEST: usize = 1024;
pub const DEFAULT_MAX_INPUT: usize = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrbgError {
    #[error("entropy input must not be empty")]
    EmptyEntropy,
    #[error("reseed required: counter {counter} exceeds interval {interval}")]
    ReseedRequired { counter: u64, interval: u64 },
    #[error("requested {requested} octets, limit is {max}")]
    OutputTooLong { requested: usize, max: usize },
    #[error("{what} is {len} octets, limit is {max}")]
    InputTooLong {
        what: &'static str,
        len: usize,
        max: usize,
    },
    #[error("reseed interval {0} outside 1..=2^48")]
    InvalidReseedInterval(u64),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
}

/// Size limits checked on every call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_output_len: usize,
    pub max_input_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_output_len: DEFAULT_MAX_REQUEST,
            max_input_len: DEFAULT_MAX_INPUT,
        }
    }
}

/// Administrative parameters fixed at instantiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DrbgConfig {
    /// Octets of entropy pulled from the stream on each automatic reseed.
    pub entropy_len: usize,
    pub prediction_resistance: bool,
    pub reseed_interval: u64,
    pub limits: Limits,
}

impl Default for DrbgConfig {
    fn default() -> Self {
        DrbgConfig {
            entropy_len: SEED_LEN,
            prediction_resistance: false,
            reseed_interval: DEFAULT_RESEED_INTERVAL,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenerateRequest {
    pub out_len: usize,
    pub additional_input: Vec<u8>,
}

impl GenerateRequest {
    pub fn new(out_len: usize) -> Self {
        GenerateRequest {
            out_len,
            additional_input: Vec::new(),
        }
    }

    pub fn with_additional_input(mut self, data: impl Into<Vec<u8>>) -> Self {
        self.additional_input = data.into();
        self
    }
}

/// Working state `(K, V, reseed_counter)` plus administrative fields.
///
/// Key and V are wiped when the state is dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct DrbgState {
    key: [u8; SEED_LEN],
    v: [u8; SEED_LEN],
    reseed_counter: u64,
    config: DrbgConfig,
}

impl fmt::Debug for DrbgState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DrbgState")
            .field("reseed_counter", &self.reseed_counter)
            .field("config", &self.config)
            .finish_non_exhaustive()
    }
}

impl Drop for DrbgState {
    fn drop(&mut self) {
        self.zeroize();
    }
}

impl DrbgState {
    /// Builds a state directly from its parts, bypassing seeding.
    pub fn from_parts(
        key: [u8; SEED_LEN],
        v: [u8; SEED_LEN],
        reseed_counter: u64,
        config: DrbgConfig,
    ) -> Result<Self, DrbgError> {
        check_interval(config.reseed_interval)?;
        Ok(DrbgState {
            key,
            v,
            reseed_counter,
            config,
        })
    }

    /// Seeds `(K, V) = update((0x00.., 0x01..), entropy || nonce || personalization)`.
    pub fn instantiate(
        entropy_input: &[u8],
        nonce: &[u8],
        personalization: &[u8],
        config: DrbgConfig,
    ) -> Result<Self, DrbgError> {
        if entropy_input.is_empty() {
            return Err(DrbgError::EmptyEntropy);
        }
        check_interval(config.reseed_interval)?;
        check_input("personalization string", personalization, &config.limits)?;
        let mut state = DrbgState {
            key: [0x00; SEED_LEN],
            v: [0x01; SEED_LEN],
            reseed_counter: 1,
            config,
        };
        let mut seed =
            Vec::with_capacity(entropy_input.len() + nonce.len() + personalization.len());
        seed.extend_from_slice(entropy_input);
        seed.extend_from_slice(nonce);
        seed.extend_from_slice(personalization);
        state.update(&seed);
        seed.zeroize();
        Ok(state)
    }

    pub fn key(&self) -> &[u8; SEED_LEN] {
        &self.key
    }

    pub fn v(&self) -> &[u8; SEED_LEN] {
        &self.v
    }

    pub fn reseed_counter(&self) -> u64 {
        self.reseed_counter
    }

    pub fn config(&self) -> &DrbgConfig {
        &self.config
    }

    pub fn set_prediction_resistance(&mut self, on: bool) {
        self.config.prediction_resistance = on;
    }

    /// The HMAC_DRBG update function. Admin fields are untouched.
    pub fn update(&mut self, provided_data: &[u8]) {
        let mut msg = Vec::with_capacity(SEED_LEN + 1 + provided_data.len());
        for round in [0x00u8, 0x01] {
            if round == 0x01 && provided_data.is_empty() {
                break;
            }
            msg.clear();
            msg.extend_from_slice(&self.v);
            msg.push(round);
            msg.extend_from_slice(provided_data);
            self.key = hmac_sha256(&self.key, &msg).0;
            self.v = hmac_sha256(&self.key, &self.v).0;
        }
        msg.zeroize();
    }

    /// Mixes `entropy_input || additional_input` into the state and resets
    /// the counter to 1.
    pub fn reseed(
        &mut self,
        entropy_input: &[u8],
        additional_input: &[u8],
    ) -> Result<(), DrbgError> {
        if entropy_input.is_empty() {
            return Err(DrbgError::EmptyEntropy);
        }
        check_input("additional input", additional_input, &self.config.limits)?;
        let mut seed = [entropy_input, additional_input].concat();
        self.update(&seed);
        seed.zeroize();
        self.reseed_counter = 1;
        Ok(())
    }

    /// Produces `req.out_len` octets. The state is left unchanged when an
    /// error is returned.
    pub fn generate(&mut self, req: &GenerateRequest) -> Result<Vec<u8>, DrbgError> {
        let limits = self.config.limits;
        if req.out_len > limits.max_output_len {
            return Err(DrbgError::OutputTooLong {
                requested: req.out_len,
                max: limits.max_output_len,
            });
        }
        check_input("additional input", &req.additional_input, &limits)?;
        if self.reseed_counter > self.config.reseed_interval {
            return Err(DrbgError::ReseedRequired {
                counter: self.reseed_counter,
                interval: self.config.reseed_interval,
            });
        }

        let add = &req.additional_input;
        if !add.is_empty() {
            self.update(add);
        }
        let mut out = Vec::with_capacity(req.out_len.next_multiple_of(SEED_LEN));
        while out.len() < req.out_len {
            self.v = hmac_sha256(&self.key, &self.v).0;
            out.extend_from_slice(&self.v);
        }
        out.truncate(req.out_len);
        self.update(add);
        self.reseed_counter += 1;
        Ok(out)
    }

    /// Generate with automatic reseeding from `stream` when prediction
    /// resistance is on or the reseed interval has passed. A reseed absorbs
    /// the request's additional input, which is then not used again.
    pub fn generate_with_entropy(
        &mut self,
        stream: &mut EntropyStream,
        req: &GenerateRequest,
    ) -> Result<Vec<u8>, DrbgError> {
        let needs_reseed =
            self.config.prediction_resistance || self.reseed_counter > self.config.reseed_interval;
        if !needs_reseed {
            return self.generate(req);
        }
        let limits = self.config.limits;
        if req.out_len > limits.max_output_len {
            return Err(DrbgError::OutputTooLong {
                requested: req.out_len,
                max: limits.max_output_len,
            });
        }
        check_input("additional input", &req.additional_input, &limits)?;

        let mut entropy = stream.take(self.config.entropy_len)?;
        let reseeded = self.reseed(&entropy, &req.additional_input);
        entropy.zeroize();
        reseeded?;
        self.generate(&GenerateRequest::new(req.out_len))
    }

    /// Overwrites key and V with zeros.
    pub fn zeroize(&mut self) {
        self.key.zeroize();
        self.v.zeroize();
    }
}

fn check_interval(interval: u64) -> Result<(), DrbgError> {
    if interval == 0 || interval > MAX_RESEED_INTERVAL {
        return Err(DrbgError::InvalidReseedInterval(interval));
    }
    Ok(())
}

fn check_input(what: &'static str, data: &[u8], limits: &Limits) -> Result<(), DrbgError> {
    if data.len() > limits.max_input_len {
        return Err(DrbgError::InputTooLong {
            what,
            len: data.len(),
            max: limits.max_input_len,
        });
    }
    Ok(())
}
