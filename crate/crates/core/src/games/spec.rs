use std::sync::Arc;

use super::{GameOutput, HybridParams, KV};
use crate::block::{BitString, Block};
use crate::prob::{uniform_block, Comp, Value};

pub(crate) type StepFn<O, St> = Arc<dyn Fn(St, usize) -> Comp<(O, St)> + Send + Sync>;
pub(crate) type FinishFn<O, St, U> = Arc<dyn Fn(Vec<O>, St) -> Comp<U> + Send + Sync>;

pub(crate) fn push<O: Clone>(xs: &[O], x: O) -> Vec<O> {
    let mut out = xs.to_vec();
    out.push(x);
    out
}

/// Left-to-right stateful fold of `step` over `requests`, starting from the
/// (possibly random) `init` and handing the outputs and final state to
/// `finish`.
///
/// Each prefix is enumerated to a merged table before the next step runs,
/// and the last step feeds `finish` directly, so only small intermediate
/// tables are ever materialized.
pub(crate) fn fold_then<O: Value, St: Value, U: Value>(
    init: Comp<(Vec<O>, St)>,
    step: StepFn<O, St>,
    requests: &[usize],
    finish: FinishFn<O, St, U>,
) -> Comp<U> {
    let Some((&last, prefix)) = requests.split_last() else {
        return init.bind(move |(outs, s)| finish(outs, s));
    };
    let acc = prefix.iter().fold(init, |acc, &n| {
        let step = step.clone();
        acc.bind(move |(outs, s)| step(s, n).map(move |(o, s2)| (push(&outs, o), s2)))
    });
    acc.bind(move |(outs, s)| {
        let finish = finish.clone();
        step(s, last).bind(move |(o, s2)| finish(push(&outs, o), s2))
    })
}

/// Runs `step` over `requests` from `init`, collecting the outputs.
pub fn oracle_map<O: Value, St: Value>(
    step: impl Fn(St, usize) -> Comp<(O, St)> + Send + Sync + 'static,
    init: St,
    requests: &[usize],
) -> Comp<(Vec<O>, St)> {
    fold_then(
        Comp::ret((Vec::new(), init)),
        Arc::new(step),
        requests,
        Arc::new(|outs, s| Comp::ret((outs, s))),
    )
}

/// The eight zero bits appended to `v` when rekeying with no additional data.
pub fn zeroes() -> BitString {
    BitString::zeros(8)
}

/// `v || zeroes`.
pub fn rekey_input(v: &Block) -> BitString {
    v.to_bits().concat(&zeroes())
}

/// `n` chained applications `v <- f_k(v)`, returning every intermediate
/// value and the last one.
pub fn gen_loop(p: &HybridParams, k: &Block, v: &Block, n: usize) -> (Vec<Block>, Block) {
    let mut out = Vec::with_capacity(n);
    let mut v = *v;
    for _ in 0..n {
        v = p.prf.apply(k, &v.to_bits());
        out.push(v);
    }
    (out, v)
}

fn generate_det(p: &HybridParams, kv: &KV, n: usize) -> (Vec<Block>, KV) {
    let (bits, v1) = gen_loop(p, &kv.k, &kv.v, n);
    let k = p.prf.apply(&kv.k, &rekey_input(&v1));
    let v = p.prf.apply(&k, &v1.to_bits());
    (bits, KV { k, v })
}

fn generate_nov_det(p: &HybridParams, kv: &KV, n: usize) -> (Vec<Block>, KV) {
    let (bits, v1) = gen_loop(p, &kv.k, &kv.v, n);
    let k = p.prf.apply(&kv.k, &rekey_input(&v1));
    (bits, KV { k, v: v1 })
}

fn generate_v_det(p: &HybridParams, kv: &KV, n: usize) -> (Vec<Block>, KV) {
    let v1 = p.prf.apply(&kv.k, &kv.v.to_bits());
    generate_nov_det(p, &KV { k: kv.k, v: v1 }, n)
}

/// Generate with the state update inlined: the block loop, then
/// `k' = f_k(v' || zeroes)` and `v'' = f_k'(v')`.
pub fn generate_spec(p: &HybridParams, state: &KV, n: usize) -> Comp<(Vec<Block>, KV)> {
    Comp::ret(generate_det(p, state, n))
}

/// Generate without the trailing `v` update.
pub fn generate_nov(p: &HybridParams, state: &KV, n: usize) -> Comp<(Vec<Block>, KV)> {
    Comp::ret(generate_nov_det(p, state, n))
}

/// Generate that first updates `v` and then skips the trailing update.
pub fn generate_v(p: &HybridParams, state: &KV, n: usize) -> Comp<(Vec<Block>, KV)> {
    Comp::ret(generate_v_det(p, state, n))
}

/// `n` independent uniform blocks.
pub fn generate_rb(p: &HybridParams, n: usize) -> Comp<Vec<Block>> {
    let eta = p.eta;
    (0..n).fold(Comp::ret(Vec::new()), move |acc, _| {
        acc.bind(move |xs: Vec<Block>| uniform_block(eta).map(move |b| push(&xs, b)))
    })
}

/// Uniform blocks together with a fresh state: `k` is uniform and `v` is
/// the last block produced (the input `v` if there are none).
pub fn generate_rb_intermediate(p: &HybridParams, state: &KV, n: usize) -> Comp<(Vec<Block>, KV)> {
    let (eta, v0) = (p.eta, state.v);
    generate_rb(p, n).bind(move |bits| {
        let v = bits.last().copied().unwrap_or(v0);
        uniform_block(eta).map(move |k| (bits.clone(), KV { k, v }))
    })
}

/// Uniform, independent `k` and `v`.
pub fn instantiate_spec(p: &HybridParams) -> Comp<KV> {
    let eta = p.eta;
    uniform_block(eta).bind(move |k| uniform_block(eta).map(move |v| KV { k, v }))
}

fn adversary_finish<St: Value>(p: &HybridParams) -> FinishFn<Vec<Block>, St, bool> {
    let adv = p.adversary.clone();
    Arc::new(move |outs: GameOutput, _| adv.run(&outs))
}

/// The real experiment: instantiate, run every request through Generate,
/// hand the outputs to the adversary.
pub fn g_real(p: &HybridParams) -> Comp<bool> {
    let q = p.clone();
    fold_then(
        instantiate_spec(p).map(|kv| (Vec::new(), kv)),
        Arc::new(move |kv: KV, n| generate_spec(&q, &kv, n)),
        &p.request_list(),
        adversary_finish(p),
    )
}

/// The ideal experiment: every request answered with uniform blocks.
pub fn g_ideal(p: &HybridParams) -> Comp<bool> {
    let q = p.clone();
    fold_then(
        Comp::ret((Vec::new(), ())),
        Arc::new(move |(), n| generate_rb(&q, n).map(|b| (b, ()))),
        &p.request_list(),
        adversary_finish(p),
    )
}

/// The real experiment with the `v` update moved to the start of each call:
/// the first call uses [`generate_nov`], later ones [`generate_v`].
pub fn g1_prg(p: &HybridParams) -> Comp<bool> {
    let requests = p.request_list();
    let first = requests[0];
    let (q, r) = (p.clone(), p.clone());
    let init = instantiate_spec(p)
        .bind(move |kv| generate_nov(&q, &kv, first))
        .map(|(bits, kv)| (vec![bits], kv));
    fold_then(
        init,
        Arc::new(move |kv: KV, n| generate_v(&r, &kv, n)),
        &requests[1..],
        adversary_finish(p),
    )
}

/// One call of hybrid `i`: uniform output before call `i`, the real
/// (rearranged) generator from call `i` on.
pub fn choose_generate(
    p: &HybridParams,
    i: usize,
    calls_so_far: usize,
    state: &KV,
    n: usize,
) -> Comp<(Vec<Block>, (usize, KV))> {
    let next = calls_so_far + 1;
    let c = if calls_so_far < i {
        generate_rb_intermediate(p, state, n)
    } else if calls_so_far == 0 {
        generate_nov(p, state, n)
    } else {
        generate_v(p, state, n)
    };
    c.map(move |(bits, kv)| (bits, (next, kv)))
}

/// Hybrid `i`.
pub fn gi_prg(p: &HybridParams, i: usize) -> Comp<bool> {
    let q = p.clone();
    fold_then(
        instantiate_spec(p).map(|kv| (Vec::new(), (0usize, kv))),
        Arc::new(move |(calls, kv): (usize, KV), n| choose_generate(&q, i, calls, &kv, n)),
        &p.request_list(),
        adversary_finish(p),
    )
}

/// [`generate_spec`] at `eta = 256` with HMAC-SHA256 as the PRF, the output
/// blocks concatenated to octets.
pub fn generate_octets(state: &KV, n: usize) -> (Vec<u8>, KV) {
    assert_eq!(state.k.eta(), 256, "octet generation needs 256-bit blocks");
    let p = HybridParams::new(
        256,
        1,
        1,
        super::Prf::hmac_sha256(),
        super::Adversary::constant(true),
    )
    .expect("valid parameters");
    let (bits, kv) = generate_det(&p, state, n);
    (
        bits.iter().flat_map(|b| b.as_bytes().to_vec()).collect(),
        kv,
    )
}
