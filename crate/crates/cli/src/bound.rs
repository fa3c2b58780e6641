use std::io::Write;

use clap::Args;
use drbgkit::bounds::{
    pr_collisions, prf_advantage_hmac, total_bound, BoundInputs, Log2Quantity, HMAC_SHA256_BITS,
};
use num_bigint::BigUint;
use num_traits::One;

use crate::{usage, Outcome};

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Adversary resource exponent: time and space at most 2^t.
    #[arg(long)]
    pub t: u32,
    /// Number of generate calls, decimal or `2^k`.
    #[arg(long, value_parser = parse_count)]
    pub num_calls: BigUint,
    #[arg(long)]
    pub blocks_per_call: u64,
    #[arg(long, default_value_t = HMAC_SHA256_BITS)]
    pub eta: u32,
}

/// A non-negative integer written in decimal or as `2^k`.
pub fn parse_count(s: &str) -> Result<BigUint, String> {
    let s = s.trim();
    if let Some(k) = s.strip_prefix("2^") {
        let k: u32 = k
            .parse()
            .map_err(|e| format!("bad exponent in {s:?}: {e}"))?;
        return Ok(BigUint::one() << k);
    }
    s.parse().map_err(|e| format!("bad count {s:?}: {e}"))
}

fn line(out: &mut dyn Write, key: &str, q: &Log2Quantity) -> std::io::Result<()> {
    writeln!(out, "{key}={}", q.exact_string())?;
    writeln!(out, "{key}_log2={:.4}", q.log2)
}

pub fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Outcome {
    let inputs =
        BoundInputs::new(a.t, a.num_calls.clone(), a.blocks_per_call, a.eta).map_err(usage)?;
    let adv = prf_advantage_hmac(a.t).map_err(usage)?;
    let coll = Log2Quantity::new(pr_collisions(a.blocks_per_call, a.eta));
    let total = total_bound(&inputs);

    writeln!(
        out,
        "t={} num_calls={} blocks_per_call={} eta={}",
        a.t, a.num_calls, a.blocks_per_call, a.eta
    )?;
    writeln!(out, "prf_advantage={}", adv.symbolic())?;
    writeln!(out, "prf_advantage_log2={:.4}", adv.bound.log2)?;
    line(out, "pr_collisions", &coll)?;
    line(out, "bound", &total)?;
    if a.num_calls.is_one() {
        writeln!(
            out,
            "note=single generate call: the bound is one step of the hybrid argument"
        )?;
    }
    if inputs.eta_mismatch() {
        writeln!(
            out,
            "note=eta={} differs from the {}-bit output of HMAC-SHA256; the PRF term assumes 256-bit keys",
            a.eta, HMAC_SHA256_BITS
        )?;
    }
    if adv.is_vacuous() {
        writeln!(
            out,
            "note=the PRF advantage term is at least 1 for t >= 128, so the bound is vacuous"
        )?;
    }
    Ok(true)
}
