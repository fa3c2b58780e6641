//! Block-level model of HMAC-DRBG and the hybrid games of its
//! pseudorandomness argument, evaluated exactly at small block widths and by
//! Monte Carlo sampling otherwise.

mod check;
mod hybrid;
mod spec;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::block::{BitString, Block, MAX_BLOCK_BITS};
use crate::prf::{hmac_sha256, prf_small_with, HmacFn};
use crate::prob::Comp;

pub use check::{
    adjacent_distance, bad_event_probability, check_identical_until_bad, end_to_end_distance,
    run_lemmas, BadEventReport, EndToEnd, EvalSettings, IdenticalUntilBad, Lemma, LemmaReport,
    Quantity,
};
pub use hybrid::{
    f_oracle, gi_prf, gi_rb, gi_rb_bad, gi_rf, gi_rf_dups_bad, prf_adversary, random_func,
    rb_oracle, OracleTrace, PrfOracle, PrfOracleComp,
};
pub use spec::{
    choose_generate, g1_prg, g_ideal, g_real, gen_loop, generate_nov, generate_octets, generate_rb,
    generate_rb_intermediate, generate_spec, generate_v, gi_prg, instantiate_spec, oracle_map,
    rekey_input, zeroes,
};

/// Blocks produced by one Generate call.
pub type CallOutput = Vec<Block>;

/// Everything the adversary sees: one list per call.
pub type GameOutput = Vec<CallOutput>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("eta must be in 1..=256, got {0}")]
    BadEta(usize),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("unknown adversary {0:?}")]
    UnknownAdversary(String),
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
}

/// Generator state `(k, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KV {
    pub k: Block,
    pub v: Block,
}

type PrfFn = dyn Fn(&Block, &BitString) -> Block + Send + Sync;

/// The keyed function `f_k(x)` the generator is built from.
#[derive(Clone)]
pub struct Prf {
    name: String,
    f: Arc<PrfFn>,
}

impl Prf {
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(&Block, &BitString) -> Block + Send + Sync + 'static,
    ) -> Self {
        Prf {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// Truncated HMAC-SHA256 over length-prefixed encodings, usable at any
    /// width and injective on bit-string inputs.
    pub fn small(eta: usize) -> Self {
        Self::small_with(eta, hmac_sha256)
    }

    /// [`Prf::small`] over a substitute HMAC.
    pub fn small_with(eta: usize, hmac: HmacFn) -> Self {
        Prf::from_fn(format!("hmac-small-{eta}"), move |k, x| {
            prf_small_with(hmac, eta, k, x).expect("key width checked by the games")
        })
    }

    /// HMAC-SHA256 applied directly to octets: the real generator's PRF.
    /// Keys must be 256-bit blocks and inputs whole octets.
    pub fn hmac_sha256() -> Self {
        Prf::from_fn("hmac-sha256", |k, x| {
            let msg = x.as_octets().expect("HMAC inputs are whole octets");
            Block::from_octets(hmac_sha256(k.as_bytes(), msg).as_bytes())
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, k: &Block, x: &BitString) -> Block {
        (self.f)(k, x)
    }
}

impl fmt::Debug for Prf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prf({})", self.name)
    }
}

type AdversaryFn = dyn Fn(&GameOutput) -> Comp<bool> + Send + Sync;

/// A nonadaptive distinguisher over the full game output.
#[derive(Clone)]
pub struct Adversary {
    name: String,
    f: Arc<AdversaryFn>,
}

impl Adversary {
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(&GameOutput) -> Comp<bool> + Send + Sync + 'static,
    ) -> Self {
        Adversary {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn constant(b: bool) -> Self {
        Adversary::from_fn(format!("constant-{b}"), move |_| Comp::ret(b))
    }

    /// First bit of the first block; false if there is none.
    pub fn first_bit() -> Self {
        Adversary::from_fn("first-bit", |out| {
            let bit = out.iter().flatten().next().is_some_and(|b| b.bit(0));
            Comp::ret(bit)
        })
    }

    /// True iff two blocks anywhere in the output are equal.
    pub fn collision_detector() -> Self {
        Adversary::from_fn("collision", |out| {
            Comp::ret(has_duplicate(out.iter().flatten()))
        })
    }

    /// Looks up a built-in adversary by its name.
    pub fn by_name(name: &str) -> Result<Self, GameError> {
        match name {
            "constant-true" => Ok(Self::constant(true)),
            "constant-false" => Ok(Self::constant(false)),
            "first-bit" => Ok(Self::first_bit()),
            "collision" => Ok(Self::collision_detector()),
            _ => Err(GameError::UnknownAdversary(name.to_string())),
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 4] =
        ["constant-true", "constant-false", "first-bit", "collision"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn run(&self, out: &GameOutput) -> Comp<bool> {
        (self.f)(out)
    }
}

impl fmt::Debug for Adversary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Adversary({})", self.name)
    }
}

/// Whether some item occurs twice. Quadratic for short inputs, which is
/// all the games produce, to avoid allocating.
pub(crate) fn has_duplicate<'a, T: Eq + std::hash::Hash + 'a>(
    items: impl Iterator<Item = &'a T>,
) -> bool {
    let items: Vec<&T> = items.collect();
    if items.len() <= 32 {
        return (0..items.len()).any(|j| items[..j].contains(&items[j]));
    }
    let mut seen = HashSet::with_capacity(items.len());
    items.into_iter().any(|x| !seen.insert(x))
}

/// Everything a game is parameterised by.
#[derive(Debug, Clone)]
pub struct HybridParams {
    pub eta: usize,
    pub num_calls: usize,
    pub blocks_per_call: usize,
    pub prf: Prf,
    pub adversary: Adversary,
}

impl HybridParams {
    pub fn new(
        eta: usize,
        num_calls: usize,
        blocks_per_call: usize,
        prf: Prf,
        adversary: Adversary,
    ) -> Result<Self, GameError> {
        if eta == 0 || eta > MAX_BLOCK_BITS {
            return Err(GameError::BadEta(eta));
        }
        if num_calls == 0 {
            return Err(GameError::NotPositive("num_calls"));
        }
        if blocks_per_call == 0 {
            return Err(GameError::NotPositive("blocks_per_call"));
        }
        Ok(HybridParams {
            eta,
            num_calls,
            blocks_per_call,
            prf,
            adversary,
        })
    }

    /// Parameters using the truncated-HMAC PRF of width `eta`.
    pub fn small(
        eta: usize,
        num_calls: usize,
        blocks_per_call: usize,
        adversary: Adversary,
    ) -> Result<Self, GameError> {
        Self::new(eta, num_calls, blocks_per_call, Prf::small(eta), adversary)
    }

    /// `blocks_per_call` repeated `num_calls` times.
    pub fn request_list(&self) -> Vec<usize> {
        vec![self.blocks_per_call; self.num_calls]
    }

    /// `eta`, call count, blocks per call and adversary as report fields.
    pub fn describe(&self) -> String {
        format!(
            "eta={} num_calls={} blocks_per_call={} adversary={}",
            self.eta,
            self.num_calls,
            self.blocks_per_call,
            self.adversary.name()
        )
    }
}
