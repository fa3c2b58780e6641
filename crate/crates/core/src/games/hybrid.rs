use std::sync::Arc;

use super::spec::{fold_then, push, rekey_input};
use super::{generate_rb, generate_v, has_duplicate, GameOutput, HybridParams, KV};
use crate::block::{BitString, Block};
use crate::prob::{run_with_oracle, uniform_block, Comp, Oracle, OracleComp};

/// Every query made to an oracle, with its answer, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct OracleTrace {
    queries: Vec<(BitString, Block)>,
}

impl OracleTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn queries(&self) -> &[(BitString, Block)] {
        &self.queries
    }

    pub fn record(&self, x: BitString, y: Block) -> Self {
        let mut queries = self.queries.clone();
        queries.push((x, y));
        OracleTrace { queries }
    }

    /// The first answer given to `x`, if it was queried before.
    pub fn lookup(&self, x: &BitString) -> Option<Block> {
        self.queries.iter().find(|(q, _)| q == x).map(|(_, y)| *y)
    }

    /// The bad event: some input was queried twice.
    pub fn bad(&self) -> bool {
        has_duplicate(self.queries.iter().map(|(x, _)| x))
    }
}

/// Oracle answering PRF-style queries and keeping a trace.
pub type PrfOracle = Oracle<BitString, Block, OracleTrace>;

/// Computation that queries a [`PrfOracle`].
pub type PrfOracleComp<T> = OracleComp<BitString, Block, OracleTrace, T>;

/// Answers `f_k(x)`.
pub fn f_oracle(p: &HybridParams, k: Block) -> PrfOracle {
    let prf = p.prf.clone();
    Oracle::new(OracleTrace::new(), move |s: OracleTrace, x: BitString| {
        let y = prf.apply(&k, &x);
        Comp::ret((y, s.record(x, y)))
    })
}

/// A lazily sampled random function: a fresh uniform block per new input,
/// the cached answer for a repeated one.
pub fn random_func(p: &HybridParams) -> PrfOracle {
    let eta = p.eta;
    Oracle::new(OracleTrace::new(), move |s: OracleTrace, x: BitString| {
        if let Some(y) = s.lookup(&x) {
            return Comp::ret((y, s.record(x, y)));
        }
        uniform_block(eta).map(move |y| (y, s.record(x.clone(), y)))
    })
}

/// A fresh uniform block for every query, repeated or not.
pub fn rb_oracle(p: &HybridParams) -> PrfOracle {
    let eta = p.eta;
    Oracle::new(OracleTrace::new(), move |s: OracleTrace, x: BitString| {
        uniform_block(eta).map(move |y| (y, s.record(x.clone(), y)))
    })
}

fn gen_loop_oracle(v: Block, n: usize) -> PrfOracleComp<(Vec<Block>, Block)> {
    if n == 0 {
        return OracleComp::ret((Vec::new(), v));
    }
    OracleComp::query(v.to_bits()).bind(move |v1| {
        gen_loop_oracle(v1, n - 1).map(move |(rest, last)| {
            let mut bits = Vec::with_capacity(n);
            bits.push(v1);
            bits.extend(rest);
            (bits, last)
        })
    })
}

// Generate without the trailing v update, every PRF application replaced by
// a query. The new key is the oracle's answer on v || zeroes.
fn generate_nov_oracle(v: Block, n: usize) -> PrfOracleComp<(Vec<Block>, KV)> {
    gen_loop_oracle(v, n).bind(|(bits, v1)| {
        OracleComp::query(rekey_input(&v1)).map(move |k| (bits.clone(), KV { k, v: v1 }))
    })
}

fn generate_v_oracle(v: Block, n: usize) -> PrfOracleComp<(Vec<Block>, KV)> {
    OracleComp::query(v.to_bits()).bind(move |v1| generate_nov_oracle(v1, n))
}

/// The PRF adversary built from hybrid `i`: calls before `i` produce uniform
/// blocks, call `i` sends every PRF application to the oracle, later calls
/// use the concrete PRF under the key the oracle produced. The adversary
/// sees all output.
///
/// The key sampled by the generator before call `i` is never used (call `i`
/// rekeys through the oracle), so it is not sampled here.
pub fn prf_adversary(p: &HybridParams, i: usize) -> PrfOracleComp<bool> {
    let requests = p.request_list();
    let split = i.min(requests.len());
    let eta = p.eta;

    let q = p.clone();
    let rb_step = Arc::new(move |v: Block, n: usize| {
        generate_rb(&q, n).map(move |bits| {
            let last = bits.last().copied().unwrap_or(v);
            (bits, last)
        })
    });
    let pre: Comp<(GameOutput, Block)> = fold_then(
        uniform_block(eta).map(|v| (Vec::new(), v)),
        rb_step,
        &requests[..split],
        Arc::new(|outs, v| Comp::ret((outs, v))),
    );

    let adv = p.adversary.clone();
    if split == requests.len() {
        return OracleComp::lift(pre.bind(move |(outs, _)| adv.run(&outs)));
    }

    let n = requests[split];
    let rest = requests[split + 1..].to_vec();
    let q = p.clone();
    OracleComp::lift(pre).bind(move |(outs, v)| {
        let call = if i == 0 {
            generate_nov_oracle(v, n)
        } else {
            generate_v_oracle(v, n)
        };
        let (q, rest, adv) = (q.clone(), rest.clone(), adv.clone());
        call.bind(move |(bits, kv)| {
            let r = q.clone();
            let adv = adv.clone();
            OracleComp::lift(fold_then(
                Comp::ret((push(&outs, bits), kv)),
                Arc::new(move |kv: KV, n| generate_v(&r, &kv, n)),
                &rest,
                Arc::new(move |all: GameOutput, _| adv.run(&all)),
            ))
        })
    })
}

/// Hybrid `i` with call `i` keyed by a fresh uniform key.
pub fn gi_prf(p: &HybridParams, i: usize) -> Comp<bool> {
    let q = p.clone();
    uniform_block(p.eta)
        .bind(move |k| run_with_oracle(&prf_adversary(&q, i), &f_oracle(&q, k)).map(|(b, _)| b))
}

/// Hybrid `i` with call `i` answered by a random function, plus the bad flag.
pub fn gi_rf_dups_bad(p: &HybridParams, i: usize) -> Comp<(bool, bool)> {
    run_with_oracle(&prf_adversary(p, i), &random_func(p)).map(|(b, t)| (b, t.bad()))
}

/// Hybrid `i` with call `i` answered by fresh random blocks, plus the bad flag.
pub fn gi_rb_bad(p: &HybridParams, i: usize) -> Comp<(bool, bool)> {
    run_with_oracle(&prf_adversary(p, i), &rb_oracle(p)).map(|(b, t)| (b, t.bad()))
}

pub fn gi_rf(p: &HybridParams, i: usize) -> Comp<bool> {
    gi_rf_dups_bad(p, i).map(|(b, _)| b)
}

pub fn gi_rb(p: &HybridParams, i: usize) -> Comp<bool> {
    gi_rb_bad(p, i).map(|(b, _)| b)
}
