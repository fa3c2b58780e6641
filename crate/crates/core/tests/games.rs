use drbgkit::block::{BitString, Block};
use drbgkit::bounds::{birthday_exact, pr_collisions};
use drbgkit::games::*;
use drbgkit::prf::prf_small;
use drbgkit::prob::{Comp, Distribution, Dyadic, OracleComp};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

// Brute-force reference: every game below is re-derived by looping over all
// random bit strings and simulating the generator directly, with no use of
// the Comp machinery.

type Adv = fn(&GameOutput) -> bool;

fn collision(out: &GameOutput) -> bool {
    let all: Vec<&Block> = out.iter().flatten().collect();
    (0..all.len()).any(|i| (0..i).any(|j| all[i] == all[j]))
}

fn first_bit(out: &GameOutput) -> bool {
    out.first()
        .and_then(|c| c.first())
        .is_some_and(|b| b.bit(0))
}

struct Bits {
    eta: usize,
    idx: u64,
}

impl Bits {
    fn next(&mut self) -> Block {
        let b = Block::from_u64(self.eta, self.idx & ((1 << self.eta) - 1));
        self.idx >>= self.eta;
        b
    }

    fn take(&mut self, n: usize) -> Vec<Block> {
        (0..n).map(|_| self.next()).collect()
    }
}

fn f(k: &Block, x: &BitString) -> Block {
    prf_small(k.eta(), k, x).unwrap()
}

fn rekey(v: &Block) -> BitString {
    v.to_bits().concat(&BitString::zeros(8))
}

fn chain(k: &Block, v: &mut Block, n: usize) -> Vec<Block> {
    (0..n)
        .map(|_| {
            *v = f(k, &v.to_bits());
            *v
        })
        .collect()
}

/// Pr[pred] over all `2^bits` random strings.
fn brute(bits: usize, eta: usize, mut run: impl FnMut(&mut Bits) -> bool) -> Dyadic {
    let count = (0..1u64 << bits)
        .filter(|&idx| run(&mut Bits { eta, idx }))
        .count();
    Dyadic::new(count as u128, bits as u32)
}

fn brute_real(eta: usize, nc: usize, b: usize, adv: Adv) -> Dyadic {
    brute(2 * eta, eta, |r| {
        let (mut k, mut v) = (r.next(), r.next());
        let mut outs = vec![];
        for _ in 0..nc {
            outs.push(chain(&k, &mut v, b));
            k = f(&k, &rekey(&v));
            v = f(&k, &v.to_bits());
        }
        adv(&outs)
    })
}

fn brute_ideal(eta: usize, nc: usize, b: usize, adv: Adv) -> Dyadic {
    brute(eta * nc * b, eta, |r| {
        adv(&(0..nc).map(|_| r.take(b)).collect())
    })
}

fn brute_hybrid(eta: usize, nc: usize, b: usize, i: usize, adv: Adv) -> Dyadic {
    let bits = eta * (2 + i.min(nc) * (b + 1));
    brute(bits, eta, |r| {
        let (mut k, mut v) = (r.next(), r.next());
        let mut outs = vec![];
        for j in 0..nc {
            if j < i {
                let bs = r.take(b);
                v = *bs.last().unwrap();
                k = r.next();
                outs.push(bs);
                continue;
            }
            if j > 0 {
                v = f(&k, &v.to_bits());
            }
            outs.push(chain(&k, &mut v, b));
            k = f(&k, &rekey(&v));
        }
        adv(&outs)
    })
}

/// `(Pr[answer], Pr[bad])` of hybrid `i` with call `i` answered by random
/// blocks (`cache = false`) or a random function (`cache = true`).
fn brute_oracle_game(
    eta: usize,
    nc: usize,
    b: usize,
    i: usize,
    adv: Adv,
    cache: bool,
) -> (Dyadic, Dyadic) {
    let answers = b + 1 + usize::from(i > 0);
    let bits = eta * (1 + i * b + answers);
    let mut bad_count = 0u64;
    let pr = brute(bits, eta, |r| {
        let mut v = r.next();
        let mut outs: GameOutput = (0..i).map(|_| r.take(b)).collect();
        if let Some(last) = outs.last() {
            v = *last.last().unwrap();
        }
        let mut trace: Vec<(BitString, Block)> = vec![];
        let mut ask = |x: BitString, r: &mut Bits| {
            let fresh = r.next();
            let y = match trace.iter().find(|(q, _)| *q == x) {
                Some((_, y)) if cache => *y,
                _ => fresh,
            };
            trace.push((x, y));
            y
        };
        if i > 0 {
            v = ask(v.to_bits(), r);
        }
        let mut bs = vec![];
        for _ in 0..b {
            v = ask(v.to_bits(), r);
            bs.push(v);
        }
        let mut k = ask(rekey(&v), r);
        outs.push(bs);
        for _ in i + 1..nc {
            v = f(&k, &v.to_bits());
            outs.push(chain(&k, &mut v, b));
            k = f(&k, &rekey(&v));
        }
        let inputs: Vec<&BitString> = trace.iter().map(|(x, _)| x).collect();
        if (0..inputs.len()).any(|a| (0..a).any(|c| inputs[a] == inputs[c])) {
            bad_count += 1;
        }
        adv(&outs)
    });
    (pr, Dyadic::new(bad_count as u128, bits as u32))
}

fn params(eta: usize, nc: usize, b: usize, adv: Adversary) -> HybridParams {
    HybridParams::small(eta, nc, b, adv).unwrap()
}

fn pr(c: &Comp<bool>) -> Dyadic {
    c.exact_dist().unwrap().pr_true()
}

fn small_configs() -> Vec<(usize, usize, usize)> {
    let mut v = vec![];
    for eta in 1..=2 {
        for nc in 1..=3 {
            for b in 1..=2 {
                v.push((eta, nc, b));
            }
        }
    }
    v.extend([(3, 1, 1), (3, 1, 2), (3, 2, 1)]);
    v
}

#[test]
fn real_and_ideal_match_brute_force() {
    for (eta, nc, b) in small_configs() {
        for (adv, a) in [
            (collision as Adv, Adversary::collision_detector()),
            (first_bit, Adversary::first_bit()),
        ] {
            let p = params(eta, nc, b, a);
            assert_eq!(
                pr(&g_real(&p)),
                brute_real(eta, nc, b, adv),
                "real {eta} {nc} {b}"
            );
            assert_eq!(
                pr(&g_ideal(&p)),
                brute_ideal(eta, nc, b, adv),
                "ideal {eta} {nc} {b}"
            );
        }
    }
}

#[test]
fn hybrids_match_brute_force() {
    for (eta, nc, b) in small_configs() {
        if eta * (2 + nc * (b + 1)) > 20 {
            continue;
        }
        for i in 0..=nc {
            let p = params(eta, nc, b, Adversary::collision_detector());
            assert_eq!(
                pr(&gi_prg(&p, i)),
                brute_hybrid(eta, nc, b, i, collision),
                "hybrid {i} at {eta} {nc} {b}"
            );
        }
    }
}

#[test]
fn oracle_games_match_brute_force() {
    for (eta, nc, b) in small_configs() {
        for i in 0..nc {
            let bits = eta * (1 + i * b + b + 1 + usize::from(i > 0));
            if bits > 20 {
                continue;
            }
            let p = params(eta, nc, b, Adversary::collision_detector());
            let rb = gi_rb_bad(&p, i).exact_dist().unwrap();
            let rf = gi_rf_dups_bad(&p, i).exact_dist().unwrap();
            let (rb_pr, rb_bad) = brute_oracle_game(eta, nc, b, i, collision, false);
            let (rf_pr, rf_bad) = brute_oracle_game(eta, nc, b, i, collision, true);
            let at = format!("i={i} at {eta} {nc} {b}");
            assert_eq!(rb.pr(|x| x.0), rb_pr, "rb {at}");
            assert_eq!(rb.pr(|x| x.1), rb_bad, "rb bad {at}");
            assert_eq!(rf.pr(|x| x.0), rf_pr, "rf {at}");
            assert_eq!(rf.pr(|x| x.1), rf_bad, "rf bad {at}");
        }
    }
}

#[test]
fn gen_loop_unrolls() {
    let p = params(4, 1, 1, Adversary::constant(true));
    let (k, v) = (Block::from_u64(4, 9), Block::from_u64(4, 3));
    assert_eq!(gen_loop(&p, &k, &v, 0), (vec![], v));
    let v1 = f(&k, &v.to_bits());
    let v2 = f(&k, &v1.to_bits());
    assert_eq!(gen_loop(&p, &k, &v, 2), (vec![v1, v2], v2));
}

#[test]
fn generate_spec_is_deterministic_update_composition() {
    let p = params(5, 1, 1, Adversary::constant(true));
    let kv = KV {
        k: Block::from_u64(5, 17),
        v: Block::from_u64(5, 30),
    };
    let d = generate_spec(&p, &kv, 3).exact_dist().unwrap();
    assert_eq!(d.support_len(), 1);
    let (bits, next) = d.iter().next().unwrap().0.clone();
    assert_eq!(bits.len(), 3);
    let mut v = kv.v;
    let expect = chain(&kv.k, &mut v, 3);
    let k2 = f(&kv.k, &rekey(&v));
    assert_eq!(bits, expect);
    assert_eq!(
        next,
        KV {
            k: k2,
            v: f(&k2, &v.to_bits())
        }
    );
}

#[test]
fn generate_variants_relate() {
    let p = params(6, 1, 1, Adversary::constant(true));
    let kv = KV {
        k: Block::from_u64(6, 41),
        v: Block::from_u64(6, 7),
    };
    let moved = KV {
        k: kv.k,
        v: f(&kv.k, &kv.v.to_bits()),
    };
    let a = generate_v(&p, &kv, 2).exact_dist().unwrap();
    let b = generate_nov(&p, &moved, 2).exact_dist().unwrap();
    assert_eq!(a, b);
    // noV keeps the last chained block as v.
    let ((bits, s), _) = generate_nov(&p, &kv, 2)
        .exact_dist()
        .unwrap()
        .iter()
        .next()
        .map(|(x, p)| (x.clone(), p.clone()))
        .unwrap();
    assert_eq!(s.v, *bits.last().unwrap());
}

#[test]
fn random_blocks_are_uniform() {
    let p = params(1, 1, 1, Adversary::constant(true));
    let d = generate_rb(&p, 1).exact_dist().unwrap();
    assert_eq!(
        d,
        Distribution::uniform_over([vec![Block::from_u64(1, 0)], vec![Block::from_u64(1, 1)]])
    );
    let p = params(2, 1, 1, Adversary::constant(true));
    let d = generate_rb(&p, 3).exact_dist().unwrap();
    assert_eq!(d.support_len(), 64);
    assert!(d.iter().all(|(_, q)| *q == Dyadic::pow2_neg(6)));
    let first = d.map(|bs| bs[0]);
    assert!(first.iter().all(|(_, q)| *q == Dyadic::pow2_neg(2)));
}

#[test]
fn intermediate_state_is_fresh() {
    let p = params(2, 1, 1, Adversary::constant(true));
    let kv = KV {
        k: Block::from_u64(2, 0),
        v: Block::from_u64(2, 0),
    };
    let d = generate_rb_intermediate(&p, &kv, 2).exact_dist().unwrap();
    assert_eq!(d.support_len(), 64);
    assert_eq!(d.pr(|(bits, s)| s.v == bits[1]), Dyadic::one());
    assert!(d
        .map(|(_, s)| s.k)
        .iter()
        .all(|(_, q)| *q == Dyadic::pow2_neg(2)));
}

#[test]
fn instantiate_is_uniform_product() {
    let p = params(2, 1, 1, Adversary::constant(true));
    let d = instantiate_spec(&p).exact_dist().unwrap();
    assert_eq!(d.support_len(), 16);
    let k = d.map(|s| s.k);
    let v = d.map(|s| s.v);
    for (s, q) in d.iter() {
        assert_eq!(*q, &k.prob(&s.k) * &v.prob(&s.v));
    }
}

#[test]
fn oracle_map_folds_left_to_right() {
    let step = |s: u32, n: usize| Comp::ret((s * 10 + n as u32, s + 1));
    assert_eq!(
        oracle_map(step, 5, &[]).exact_dist().unwrap(),
        Distribution::point((vec![], 5))
    );
    assert_eq!(
        oracle_map(step, 5, &[3]).exact_dist().unwrap(),
        Distribution::point((vec![53], 6))
    );

    let p = params(2, 1, 1, Adversary::constant(true));
    let q = p.clone();
    let rstep = move |kv: KV, n: usize| generate_rb_intermediate(&q, &kv, n);
    let kv0 = KV {
        k: Block::from_u64(2, 1),
        v: Block::from_u64(2, 2),
    };
    let folded = oracle_map(rstep.clone(), kv0, &[1, 2])
        .exact_dist()
        .unwrap();
    let manual = rstep(kv0, 1)
        .bind(move |(a, s)| rstep(s, 2).map(move |(b, s2)| (vec![a.clone(), b], s2)))
        .exact_dist()
        .unwrap();
    assert_eq!(folded, manual);
}

#[test]
fn constant_adversary_games() {
    for b in [true, false] {
        let p = params(2, 2, 2, Adversary::constant(b));
        let want = if b { Dyadic::one() } else { Dyadic::zero() };
        for c in [
            g_real(&p),
            g_ideal(&p),
            g1_prg(&p),
            gi_prg(&p, 1),
            gi_prf(&p, 1),
            gi_rf(&p, 0),
            gi_rb(&p, 1),
        ] {
            assert_eq!(pr(&c), want);
        }
    }
    assert_eq!(
        Adversary::constant(true).run(&vec![]).exact_dist().unwrap(),
        Distribution::point(true)
    );
}

#[test]
fn first_bit_against_ideal_is_half() {
    for (eta, nc, b) in [(1, 1, 1), (2, 2, 2), (3, 1, 2)] {
        let p = params(eta, nc, b, Adversary::first_bit());
        assert_eq!(pr(&g_ideal(&p)), Dyadic::new(1, 1));
    }
    assert_eq!(pr(&Adversary::first_bit().run(&vec![])), Dyadic::zero());
}

#[test]
fn collision_detector_has_advantage_at_eta_2() {
    let p = params(2, 2, 1, Adversary::collision_detector());
    let real = pr(&g_real(&p));
    assert_eq!(real, brute_real(2, 2, 1, collision));
    assert_ne!(real, pr(&g_ideal(&p)));
    assert!(
        Adversary::collision_detector()
            .run(&vec![])
            .exact_dist()
            .unwrap()
            == Distribution::point(false)
    );
    assert!(!Adversary::collision_detector()
        .run(&vec![vec![], vec![]])
        .sample(0));
}

#[test]
fn every_game_has_the_request_shape() {
    for (nc, b) in [(1, 1), (2, 2), (3, 1)] {
        let shape = Adversary::from_fn("shape", move |out: &GameOutput| {
            Comp::ret(out.len() == nc && out.iter().all(|c| c.len() == b))
        });
        let p = params(2, nc, b, shape);
        let mut games = vec![g_real(&p), g_ideal(&p), g1_prg(&p)];
        for i in 0..=nc {
            games.push(gi_prg(&p, i));
        }
        for i in 0..nc {
            games.extend([gi_prf(&p, i), gi_rf(&p, i), gi_rb(&p, i)]);
        }
        for c in games {
            assert_eq!(pr(&c), Dyadic::one());
        }
    }
}

#[test]
fn single_call_g1_is_nov_only() {
    let p = params(2, 1, 2, Adversary::collision_detector());
    let q = p.clone();
    let direct = instantiate_spec(&p)
        .bind(move |kv| generate_nov(&q, &kv, 2))
        .map(|(bits, _)| collision(&vec![bits]));
    assert_eq!(pr(&g1_prg(&p)), pr(&direct));
}

#[test]
fn choose_generate_branches() {
    let p = params(2, 3, 1, Adversary::constant(true));
    let kv = KV {
        k: Block::from_u64(2, 1),
        v: Block::from_u64(2, 2),
    };
    let d = |i, calls| choose_generate(&p, i, calls, &kv, 1).exact_dist().unwrap();
    let nov = generate_nov(&p, &kv, 1)
        .exact_dist()
        .unwrap()
        .map(|(b, s)| (b.clone(), (1, *s)));
    let v = generate_v(&p, &kv, 1)
        .exact_dist()
        .unwrap()
        .map(|(b, s)| (b.clone(), (3, *s)));
    assert_eq!(d(0, 0), nov);
    assert_eq!(d(2, 2), v);
    assert_eq!(d(3, 2).support_len(), 16);
    assert_eq!(d(1, 0).support_len(), 16);
}

#[test]
fn first_and_last_hybrids() {
    for (nc, b) in [(1, 1), (2, 2), (3, 1)] {
        let p = params(2, nc, b, Adversary::collision_detector());
        assert_eq!(
            gi_prg(&p, 0).exact_dist().unwrap(),
            g1_prg(&p).exact_dist().unwrap()
        );
        assert_eq!(
            gi_prg(&p, nc).exact_dist().unwrap(),
            g_ideal(&p).exact_dist().unwrap()
        );
        assert_eq!(
            g_real(&p).exact_dist().unwrap(),
            g1_prg(&p).exact_dist().unwrap()
        );
    }
}

fn two_queries(x: BitString) -> PrfOracleComp<(Block, Block)> {
    let y = x.clone();
    OracleComp::query(x).bind(move |a| OracleComp::query(y.clone()).map(move |b| (a, b)))
}

#[test]
fn oracle_behaviour() {
    let p = params(1, 1, 1, Adversary::constant(true));
    let x = Block::from_u64(1, 1).to_bits();

    let rf = drbgkit::prob::run_with_oracle(&two_queries(x.clone()), &random_func(&p))
        .exact_dist()
        .unwrap();
    assert_eq!(rf.pr(|((a, b), _)| a == b), Dyadic::one());
    assert_eq!(rf.pr(|(_, t)| t.bad()), Dyadic::one());

    let rb = drbgkit::prob::run_with_oracle(&two_queries(x.clone()), &rb_oracle(&p))
        .exact_dist()
        .unwrap()
        .map(|(ab, _)| *ab);
    let blocks = [Block::from_u64(1, 0), Block::from_u64(1, 1)];
    let pairs: Vec<_> = blocks
        .iter()
        .flat_map(|a| blocks.iter().map(move |b| (*a, *b)))
        .collect();
    assert_eq!(rb, Distribution::uniform_over(pairs));

    let k = Block::from_u64(1, 0);
    let fo = drbgkit::prob::run_with_oracle(&two_queries(x.clone()), &f_oracle(&p, k))
        .exact_dist()
        .unwrap();
    assert_eq!(fo.support_len(), 1);
    let y = f(&k, &x);
    assert_eq!(
        fo.pr(|((a, b), t)| *a == y && *b == y && t.queries().len() == 2),
        Dyadic::one()
    );
}

#[test]
fn prf_adversary_instantiations_are_the_oracle_games() {
    let p = params(2, 2, 2, Adversary::collision_detector());
    for i in 0..2 {
        let via_rb =
            drbgkit::prob::run_with_oracle(&prf_adversary(&p, i), &rb_oracle(&p)).map(|(b, _)| b);
        assert_eq!(pr(&via_rb), pr(&gi_rb(&p, i)));
        assert_eq!(pr(&gi_prg(&p, i)), pr(&gi_prf(&p, i)));
        assert_eq!(pr(&gi_prg(&p, i + 1)), pr(&gi_rb(&p, i)));
    }
}

#[test]
fn identical_until_bad_at_desk_scale() {
    let s = EvalSettings::default();
    for adv in [Adversary::collision_detector(), Adversary::first_bit()] {
        let p = params(2, 2, 2, adv);
        for i in 0..2 {
            let c = check_identical_until_bad(&p, i, &s);
            assert!(
                c.bad_same() && c.no_bad_same() && c.distance_within_bad(),
                "{c:?}"
            );
            assert!(c.pr_bad.is_exact());
        }
    }
    let c = check_identical_until_bad(&params(2, 2, 2, Adversary::constant(true)), 1, &s);
    assert_eq!(c.distance, Quantity::Exact(Dyadic::zero()));
    assert!(c.all_pass());
}

fn dyadic_of(r: &BigRational) -> Dyadic {
    let den = r.denom().magnitude().clone();
    assert_eq!(den.count_ones(), 1);
    Dyadic::from_big(r.numer().magnitude().clone(), (den.bits() - 1) as u32)
}

#[test]
fn bad_event_matches_birthday_closed_form() {
    let s = EvalSettings::default();
    for (eta, nc, b) in [(2, 2, 2), (3, 2, 1), (4, 1, 2), (4, 2, 1)] {
        let p = params(eta, nc, b, Adversary::constant(true));
        for i in 0..nc {
            let r = bad_event_probability(&p, i, &s);
            let samples = b as u64 + u64::from(i > 0);
            let closed = birthday_exact(samples, &(BigUint::one() << eta));
            assert_eq!(r.closed_form, closed);
            assert_eq!(
                r.probability,
                Quantity::Exact(dyadic_of(&closed)),
                "{eta} {nc} {b} i={i}"
            );
            assert!(r.within_bound);
            assert_eq!(r.bound.to_ratio(), pr_collisions(b as u64, eta as u32));
        }
    }
}

#[test]
fn bad_event_at_eta_8_is_sampled_and_bounded() {
    let p = params(8, 2, 2, Adversary::constant(true));
    let s = EvalSettings {
        trials: 20_000,
        seed: 11,
        ..EvalSettings::default()
    };
    let r = bad_event_probability(&p, 1, &s);
    assert!(!r.probability.is_exact());
    assert_eq!(r.bound, Dyadic::new(9, 8));
    assert!(r.within_bound);
    let closed: f64 = 766.0 / 65536.0;
    let (lo, hi) = r.probability.interval();
    assert!(lo <= closed && closed <= hi, "{lo} {hi}");
}

#[test]
fn zero_block_calls_never_collide() {
    let mut p = params(2, 2, 1, Adversary::constant(true));
    p.blocks_per_call = 0;
    for i in 0..2 {
        let d = gi_rb_bad(&p, i).exact_dist().unwrap();
        assert_eq!(d.pr(|x| x.1), Dyadic::zero());
    }
}

#[test]
fn adjacent_distances() {
    let s = EvalSettings::default();
    let p = params(2, 2, 2, Adversary::constant(false));
    assert_eq!(
        adjacent_distance(&p, 0, &s),
        Quantity::Exact(Dyadic::zero())
    );
    let p = params(2, 2, 2, Adversary::collision_detector());
    assert_eq!(
        adjacent_distance(&p, 2, &s),
        Quantity::Exact(Dyadic::zero())
    );
    assert_eq!(
        adjacent_distance(&p, 5, &s),
        Quantity::Exact(Dyadic::zero())
    );
    for i in 0..2 {
        let d = adjacent_distance(&p, i, &s);
        let via = pr(&gi_prf(&p, i)).abs_diff(&pr(&gi_rb(&p, i)));
        assert_eq!(d, Quantity::Exact(via));
    }
}

#[test]
fn end_to_end_certificates() {
    let s = EvalSettings::default();
    let e = end_to_end_distance(&params(2, 2, 2, Adversary::collision_detector()), &s);
    assert!(e.verdict);
    assert_eq!(e.adjacent.len(), 2);
    assert!(e.distance.is_exact());
    let e = end_to_end_distance(&params(2, 2, 2, Adversary::constant(true)), &s);
    assert_eq!(e.distance, Quantity::Exact(Dyadic::zero()));
    let e = end_to_end_distance(&params(2, 1, 2, Adversary::collision_detector()), &s);
    assert_eq!(e.distance, e.adjacent[0]);
}

#[test]
fn lemma_suite_exact_for_small_parameters() {
    let s = EvalSettings::default();
    for (eta, nc, b) in small_configs() {
        for adv in [Adversary::collision_detector(), Adversary::first_bit()] {
            let p = params(eta, nc, b, adv);
            for r in run_lemmas(&p, &Lemma::ALL, &s) {
                assert!(r.exact && r.verdict, "{}", r.record());
            }
        }
    }
}

#[test]
fn lemma_reports_cover_every_index() {
    let p = params(2, 3, 1, Adversary::collision_detector());
    let r = run_lemmas(
        &p,
        &[Lemma::GiProgEquivPrfOracle, Lemma::HybridArgument],
        &EvalSettings::default(),
    );
    assert_eq!(r.len(), 4);
    assert_eq!(
        r.iter().filter_map(|x| x.i).collect::<Vec<_>>(),
        vec![0, 1, 2]
    );
    let rec = r[0].record();
    assert!(rec.starts_with("lemma=Gi_prog_equiv_prf_oracle eta=2 num_calls=3 blocks_per_call=1 adversary=collision i=0 mode=exact verdict=pass lhs="), "{rec}");
}

#[test]
fn large_eta_falls_back_to_sampling() {
    let p = params(16, 2, 2, Adversary::collision_detector());
    let s = EvalSettings {
        trials: 2_000,
        seed: 5,
        ..EvalSettings::default()
    };
    let r = run_lemmas(&p, &Lemma::ALL, &s);
    assert!(
        r.iter().all(|x| !x.exact),
        "{:?}",
        r.iter().map(|x| x.record()).collect::<Vec<_>>()
    );
    assert!(
        r.iter().all(|x| x.verdict),
        "{:?}",
        r.iter().map(|x| x.record()).collect::<Vec<_>>()
    );
    assert!(r[0].record().contains("mode=monte-carlo"));
}

#[test]
fn forced_sampling_agrees_with_enumeration() {
    let p = params(2, 2, 1, Adversary::collision_detector());
    let exact = run_lemmas(&p, &[Lemma::GenerateMoveVUpdate], &EvalSettings::default());
    let mc = run_lemmas(
        &p,
        &[Lemma::GenerateMoveVUpdate],
        &EvalSettings {
            force_monte_carlo: true,
            trials: 5_000,
            ..EvalSettings::default()
        },
    );
    assert!(exact[0].exact && !mc[0].exact && mc[0].verdict);
}

#[test]
fn lemma_names_parse() {
    for l in Lemma::ALL {
        assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
    }
    assert_eq!(
        "Gi_normal_prf_eq".parse::<Lemma>().unwrap(),
        Lemma::GiProgEquivPrfOracle
    );
    assert_eq!(
        "Gi_normal_rb_eq".parse::<Lemma>().unwrap(),
        Lemma::GiProgEquivRbOracle
    );
    assert_eq!(
        "nope".parse::<Lemma>(),
        Err(GameError::UnknownLemma("nope".into()))
    );
    assert_eq!(Lemma::EQUALITIES.len() + Lemma::INEQUALITIES.len(), 10);
}

#[test]
fn params_validation() {
    let a = Adversary::constant(true);
    assert_eq!(
        HybridParams::small(0, 1, 1, a.clone()).err(),
        Some(GameError::BadEta(0))
    );
    assert_eq!(
        HybridParams::small(257, 1, 1, a.clone()).err(),
        Some(GameError::BadEta(257))
    );
    assert_eq!(
        HybridParams::small(2, 0, 1, a.clone()).err(),
        Some(GameError::NotPositive("num_calls"))
    );
    assert_eq!(
        HybridParams::small(2, 1, 0, a).err(),
        Some(GameError::NotPositive("blocks_per_call"))
    );
    assert_eq!(
        params(2, 3, 2, Adversary::first_bit()).request_list(),
        vec![2, 2, 2]
    );
    for name in Adversary::BUILTIN_NAMES {
        assert_eq!(Adversary::by_name(name).unwrap().name(), name);
    }
    assert!(Adversary::by_name("psychic").is_err());
}
