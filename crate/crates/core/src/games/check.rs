use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::{
    g1_prg, g_ideal, g_real, gi_prf, gi_prg, gi_rb_bad, gi_rf_dups_bad, GameError, HybridParams,
};
use crate::bounds::{birthday_exact, render_rational};
use crate::prob::{estimate_pr_true, Comp, Dyadic, ProbError, Value, DEFAULT_ENUMERATION_CAP};

/// A probability (or distance) that is either exact or a Monte Carlo
/// estimate with a 99% interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Exact(Dyadic),
    Estimated { estimate: f64, lo: f64, hi: f64 },
}

impl Quantity {
    pub fn is_exact(&self) -> bool {
        matches!(self, Quantity::Exact(_))
    }

    pub fn exact(&self) -> Option<&Dyadic> {
        match self {
            Quantity::Exact(d) => Some(d),
            Quantity::Estimated { .. } => None,
        }
    }

    pub fn estimate(&self) -> f64 {
        match self {
            Quantity::Exact(d) => d.to_f64(),
            Quantity::Estimated { estimate, .. } => *estimate,
        }
    }

    /// `(lo, hi)`; a point for exact values.
    pub fn interval(&self) -> (f64, f64) {
        match self {
            Quantity::Exact(d) => (d.to_f64(), d.to_f64()),
            Quantity::Estimated { lo, hi, .. } => (*lo, *hi),
        }
    }

    pub fn abs_diff(&self, other: &Quantity) -> Quantity {
        if let (Quantity::Exact(a), Quantity::Exact(b)) = (self, other) {
            return Quantity::Exact(a.abs_diff(b));
        }
        let ((alo, ahi), (blo, bhi)) = (self.interval(), other.interval());
        Quantity::Estimated {
            estimate: (self.estimate() - other.estimate()).abs(),
            lo: (alo - bhi).max(blo - ahi).max(0.0),
            hi: (ahi - blo).max(bhi - alo),
        }
    }

    pub fn add(&self, other: &Quantity) -> Quantity {
        if let (Quantity::Exact(a), Quantity::Exact(b)) = (self, other) {
            return Quantity::Exact(a + b);
        }
        let ((alo, ahi), (blo, bhi)) = (self.interval(), other.interval());
        Quantity::Estimated {
            estimate: self.estimate() + other.estimate(),
            lo: alo + blo,
            hi: ahi + bhi,
        }
    }

    pub fn scale(&self, n: usize) -> Quantity {
        self.mul(&Quantity::Exact(Dyadic::new(n as u128, 0)))
    }

    fn mul(&self, other: &Quantity) -> Quantity {
        if let (Quantity::Exact(a), Quantity::Exact(b)) = (self, other) {
            return Quantity::Exact(a * b);
        }
        let ((alo, ahi), (blo, bhi)) = (self.interval(), other.interval());
        Quantity::Estimated {
            estimate: self.estimate() * other.estimate(),
            lo: alo * blo,
            hi: ahi * bhi,
        }
    }

    pub fn max(&self, other: &Quantity) -> Quantity {
        if let (Quantity::Exact(a), Quantity::Exact(b)) = (self, other) {
            return Quantity::Exact(a.max(b).clone());
        }
        let ((alo, ahi), (blo, bhi)) = (self.interval(), other.interval());
        Quantity::Estimated {
            estimate: self.estimate().max(other.estimate()),
            lo: alo.max(blo),
            hi: ahi.max(bhi),
        }
    }

    /// `self <= other`, exactly when both are exact, otherwise as
    /// consistency of the intervals.
    pub fn le(&self, other: &Quantity) -> bool {
        match (self, other) {
            (Quantity::Exact(a), Quantity::Exact(b)) => a <= b,
            _ => self.interval().0 <= other.interval().1,
        }
    }

    /// Equality, exactly when both are exact, otherwise as overlap of the
    /// intervals.
    pub fn same(&self, other: &Quantity) -> bool {
        match (self, other) {
            (Quantity::Exact(a), Quantity::Exact(b)) => a == b,
            _ => {
                let ((alo, ahi), (blo, bhi)) = (self.interval(), other.interval());
                alo <= bhi && blo <= ahi
            }
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(d) => write!(f, "{d}"),
            Quantity::Estimated { estimate, lo, hi } => write!(f, "{estimate:.6}[{lo:.6},{hi:.6}]"),
        }
    }
}

/// How games are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalSettings {
    /// Enumeration budget; beyond it the game is sampled instead.
    pub cap: u64,
    pub trials: u64,
    pub seed: u64,
    /// Sample even when enumeration would fit.
    pub force_monte_carlo: bool,
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            cap: DEFAULT_ENUMERATION_CAP,
            trials: 10_000,
            seed: 0,
            force_monte_carlo: false,
        }
    }
}

type Event<T> = fn(&T) -> bool;

/// Merging of equal intermediate values lets enumeration handle paths that
/// draw somewhat more than `log2(cap)` random bits, but not arbitrarily
/// more. Paths beyond this margin go straight to sampling rather than
/// spending the whole budget first.
pub const MERGE_SLACK_BITS: u64 = 8;

fn worth_enumerating<T: Value>(c: &Comp<T>, settings: &EvalSettings) -> bool {
    let budget_bits = 63 - settings.cap.max(1).leading_zeros() as u64;
    c.path_bits(settings.seed) <= budget_bits + MERGE_SLACK_BITS
}

/// Probabilities of `events` under `c`, from one exact enumeration when it
/// fits the cap, otherwise one Monte Carlo estimate per event.
pub(crate) fn evaluate<T: Value>(
    c: &Comp<T>,
    events: &[Event<T>],
    settings: &EvalSettings,
) -> Vec<Quantity> {
    if !settings.force_monte_carlo && worth_enumerating(c, settings) {
        match c.exact_dist_capped(settings.cap) {
            Ok(d) => return events.iter().map(|e| Quantity::Exact(d.pr(e))).collect(),
            Err(ProbError::CapExceeded { .. }) => {}
            Err(e) => panic!("game evaluation failed: {e}"),
        }
    }
    events
        .iter()
        .map(|&e| {
            let est = estimate_pr_true(&c.map(move |x| e(&x)), settings.trials, settings.seed);
            Quantity::Estimated {
                estimate: est.estimate,
                lo: est.lo,
                hi: est.hi,
            }
        })
        .collect()
}

fn pr_true(c: &Comp<bool>, settings: &EvalSettings) -> Quantity {
    evaluate(c, &[|b| *b], settings).remove(0)
}

/// Probabilities read off a game that also reports the bad flag.
#[derive(Debug, Clone, PartialEq)]
struct BadStats {
    answer: Quantity,
    bad: Quantity,
    true_no_bad: Quantity,
    false_no_bad: Quantity,
}

fn bad_stats(c: &Comp<(bool, bool)>, settings: &EvalSettings) -> BadStats {
    let mut q = evaluate(
        c,
        &[
            |x| x.0,
            |x| x.1,
            |x| *x == (true, false),
            |x| *x == (false, false),
        ],
        settings,
    )
    .into_iter();
    let mut next = || q.next().expect("four events");
    BadStats {
        answer: next(),
        bad: next(),
        true_no_bad: next(),
        false_no_bad: next(),
    }
}

/// `(1 + blocksPerCall)^2 / 2^eta`.
fn collision_bound(p: &HybridParams) -> Dyadic {
    let b = 1 + p.blocks_per_call as u128;
    Dyadic::new(b * b, p.eta as u32)
}

/// The named checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    GenerateMoveVUpdate,
    GRealIsFirstHybrid,
    GIdealIsLastHybrid,
    GiProgEquivPrfOracle,
    GiProgEquivRbOracle,
    GiRbRfReturnBadSame,
    GiRbRfNoBadSame,
    GiRbRfIdenticalUntilBad,
    GiPrBadEventCollisions,
    HybridArgument,
    GiAdjacentHybridsClose,
    GRealIdealClose,
}

impl Lemma {
    pub const ALL: [Lemma; 12] = [
        Lemma::GenerateMoveVUpdate,
        Lemma::GRealIsFirstHybrid,
        Lemma::GIdealIsLastHybrid,
        Lemma::GiProgEquivPrfOracle,
        Lemma::GiProgEquivRbOracle,
        Lemma::GiRbRfReturnBadSame,
        Lemma::GiRbRfNoBadSame,
        Lemma::GiRbRfIdenticalUntilBad,
        Lemma::GiPrBadEventCollisions,
        Lemma::HybridArgument,
        Lemma::GiAdjacentHybridsClose,
        Lemma::GRealIdealClose,
    ];

    /// The distribution equalities.
    pub const EQUALITIES: [Lemma; 7] = [
        Lemma::GenerateMoveVUpdate,
        Lemma::GRealIsFirstHybrid,
        Lemma::GIdealIsLastHybrid,
        Lemma::GiProgEquivPrfOracle,
        Lemma::GiProgEquivRbOracle,
        Lemma::GiRbRfReturnBadSame,
        Lemma::GiRbRfNoBadSame,
    ];

    /// The fundamental lemma, the collision bound and the telescoping sum.
    pub const INEQUALITIES: [Lemma; 3] = [
        Lemma::GiRbRfIdenticalUntilBad,
        Lemma::GiPrBadEventCollisions,
        Lemma::HybridArgument,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::GenerateMoveVUpdate => "Generate_move_v_update",
            Lemma::GRealIsFirstHybrid => "G_real_is_first_hybrid",
            Lemma::GIdealIsLastHybrid => "G_ideal_is_last_hybrid",
            Lemma::GiProgEquivPrfOracle => "Gi_prog_equiv_prf_oracle",
            Lemma::GiProgEquivRbOracle => "Gi_prog_equiv_rb_oracle",
            Lemma::GiRbRfReturnBadSame => "Gi_rb_rf_return_bad_same",
            Lemma::GiRbRfNoBadSame => "Gi_rb_rf_no_bad_same",
            Lemma::GiRbRfIdenticalUntilBad => "Gi_rb_rf_identical_until_bad",
            Lemma::GiPrBadEventCollisions => "Gi_Pr_bad_event_collisions",
            Lemma::HybridArgument => "hybrid_argument",
            Lemma::GiAdjacentHybridsClose => "Gi_adjacent_hybrids_close",
            Lemma::GRealIdealClose => "G_real_ideal_close",
        }
    }

    /// Whether the check is stated per hybrid index.
    pub fn per_index(self) -> bool {
        matches!(
            self,
            Lemma::GiProgEquivPrfOracle
                | Lemma::GiProgEquivRbOracle
                | Lemma::GiRbRfReturnBadSame
                | Lemma::GiRbRfNoBadSame
                | Lemma::GiRbRfIdenticalUntilBad
                | Lemma::GiPrBadEventCollisions
                | Lemma::GiAdjacentHybridsClose
        )
    }

    fn games(self, i: usize, num_calls: usize) -> Vec<GameId> {
        use GameId::*;
        match self {
            Lemma::GenerateMoveVUpdate => vec![Real, G1],
            Lemma::GRealIsFirstHybrid => vec![G1, Prg(0)],
            Lemma::GIdealIsLastHybrid => vec![Ideal, Prg(num_calls)],
            Lemma::GiProgEquivPrfOracle => vec![Prg(i), Prf(i)],
            Lemma::GiProgEquivRbOracle => vec![Prg(i + 1), RbBad(i)],
            Lemma::GiRbRfReturnBadSame
            | Lemma::GiRbRfNoBadSame
            | Lemma::GiRbRfIdenticalUntilBad => {
                vec![RfBad(i), RbBad(i)]
            }
            Lemma::GiPrBadEventCollisions => vec![RbBad(i)],
            Lemma::HybridArgument => (0..=num_calls).map(Prg).collect(),
            Lemma::GiAdjacentHybridsClose => vec![Prg(i), Prg(i + 1), Prf(i), RfBad(i), RbBad(i)],
            Lemma::GRealIdealClose => {
                let mut g = vec![Real, Ideal];
                g.extend((0..num_calls).flat_map(|j| [Prf(j), RfBad(j)]));
                g
            }
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = GameError;

    /// Accepts the canonical names; `Gi_normal_prf_eq` and `Gi_normal_rb_eq`
    /// name the same checks as the two `Gi_prog_equiv_*` lemmas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Gi_normal_prf_eq" => return Ok(Lemma::GiProgEquivPrfOracle),
            "Gi_normal_rb_eq" => return Ok(Lemma::GiProgEquivRbOracle),
            _ => {}
        }
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| GameError::UnknownLemma(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum GameId {
    Real,
    Ideal,
    G1,
    Prg(usize),
    Prf(usize),
    RfBad(usize),
    RbBad(usize),
}

#[derive(Debug, Clone)]
enum GameValue {
    Plain(Quantity),
    Bad(BadStats),
}

fn compute(p: &HybridParams, id: GameId, settings: &EvalSettings) -> GameValue {
    match id {
        GameId::Real => GameValue::Plain(pr_true(&g_real(p), settings)),
        GameId::Ideal => GameValue::Plain(pr_true(&g_ideal(p), settings)),
        GameId::G1 => GameValue::Plain(pr_true(&g1_prg(p), settings)),
        GameId::Prg(i) => GameValue::Plain(pr_true(&gi_prg(p, i), settings)),
        GameId::Prf(i) => GameValue::Plain(pr_true(&gi_prf(p, i), settings)),
        GameId::RfBad(i) => GameValue::Bad(bad_stats(&gi_rf_dups_bad(p, i), settings)),
        GameId::RbBad(i) => GameValue::Bad(bad_stats(&gi_rb_bad(p, i), settings)),
    }
}

/// Game values shared between checks, computed in parallel.
struct Games(HashMap<GameId, GameValue>);

impl Games {
    fn compute(
        p: &HybridParams,
        ids: impl IntoIterator<Item = GameId>,
        settings: &EvalSettings,
    ) -> Self {
        let mut ids: Vec<GameId> = ids.into_iter().collect();
        ids.sort();
        ids.dedup();
        Games(
            ids.into_par_iter()
                .map(|id| (id, compute(p, id, settings)))
                .collect(),
        )
    }

    /// `Pr[true]` of a boolean game, or of the answer of a bad-flag game.
    fn pr(&self, id: GameId) -> &Quantity {
        match &self.0[&id] {
            GameValue::Plain(q) => q,
            GameValue::Bad(s) => &s.answer,
        }
    }

    fn bad(&self, id: GameId) -> &BadStats {
        match &self.0[&id] {
            GameValue::Bad(s) => s,
            GameValue::Plain(_) => unreachable!("{id:?} has no bad flag"),
        }
    }

    fn all_exact(&self) -> bool {
        self.0.values().all(|v| match v {
            GameValue::Plain(q) => q.is_exact(),
            GameValue::Bad(s) => s.answer.is_exact() && s.bad.is_exact(),
        })
    }
}

/// Outcome of one check at one parameter set (and hybrid index).
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub params: String,
    pub i: Option<usize>,
    pub exact: bool,
    pub verdict: bool,
    pub values: Vec<(&'static str, String)>,
}

impl LemmaReport {
    /// One `key=value` record.
    pub fn record(&self) -> String {
        let mut s = format!("lemma={} {}", self.lemma, self.params);
        if let Some(i) = self.i {
            s.push_str(&format!(" i={i}"));
        }
        s.push_str(if self.exact {
            " mode=exact"
        } else {
            " mode=monte-carlo"
        });
        s.push_str(if self.verdict {
            " verdict=pass"
        } else {
            " verdict=fail"
        });
        for (k, v) in &self.values {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

fn report(
    lemma: Lemma,
    p: &HybridParams,
    i: Option<usize>,
    games: &Games,
    verdict: bool,
    values: Vec<(&'static str, String)>,
) -> LemmaReport {
    LemmaReport {
        lemma,
        params: p.describe(),
        i,
        exact: games.all_exact(),
        verdict,
        values,
    }
}

fn equality(
    lemma: Lemma,
    p: &HybridParams,
    i: Option<usize>,
    g: &Games,
    a: &Quantity,
    b: &Quantity,
) -> LemmaReport {
    report(
        lemma,
        p,
        i,
        g,
        a.same(b),
        vec![("lhs", a.to_string()), ("rhs", b.to_string())],
    )
}

/// Closed-form `Pr[bad]` in hybrid `i` with the random-block oracle: call
/// `i` queries its starting `v` (plus, for `i > 0`, the pre-updated `v`)
/// and all but the last chained block, every one independent and uniform.
/// The rekey input is longer and cannot collide.
fn bad_closed_form(p: &HybridParams, i: usize) -> BigRational {
    if i >= p.num_calls {
        return BigRational::from_integer(0.into());
    }
    let distinct_inputs = p.blocks_per_call as u64 + u64::from(i > 0);
    birthday_exact(distinct_inputs, &(BigUint::one() << p.eta))
}

fn check_one(lemma: Lemma, p: &HybridParams, i: usize, g: &Games) -> LemmaReport {
    use GameId::*;
    let n = p.num_calls;
    let coll = Quantity::Exact(collision_bound(p));
    match lemma {
        Lemma::GenerateMoveVUpdate => equality(lemma, p, None, g, g.pr(Real), g.pr(G1)),
        Lemma::GRealIsFirstHybrid => equality(lemma, p, None, g, g.pr(G1), g.pr(Prg(0))),
        Lemma::GIdealIsLastHybrid => equality(lemma, p, None, g, g.pr(Ideal), g.pr(Prg(n))),
        Lemma::GiProgEquivPrfOracle => equality(lemma, p, Some(i), g, g.pr(Prg(i)), g.pr(Prf(i))),
        Lemma::GiProgEquivRbOracle => {
            equality(lemma, p, Some(i), g, g.pr(Prg(i + 1)), g.pr(RbBad(i)))
        }
        Lemma::GiRbRfReturnBadSame => equality(
            lemma,
            p,
            Some(i),
            g,
            &g.bad(RbBad(i)).bad,
            &g.bad(RfBad(i)).bad,
        ),
        Lemma::GiRbRfNoBadSame => {
            let (rb, rf) = (g.bad(RbBad(i)), g.bad(RfBad(i)));
            let ok = rb.true_no_bad.same(&rf.true_no_bad) && rb.false_no_bad.same(&rf.false_no_bad);
            report(
                lemma,
                p,
                Some(i),
                g,
                ok,
                vec![
                    ("rb_true_no_bad", rb.true_no_bad.to_string()),
                    ("rf_true_no_bad", rf.true_no_bad.to_string()),
                    ("rb_false_no_bad", rb.false_no_bad.to_string()),
                    ("rf_false_no_bad", rf.false_no_bad.to_string()),
                ],
            )
        }
        Lemma::GiRbRfIdenticalUntilBad => {
            let c = identical_until_bad(g.bad(RfBad(i)), g.bad(RbBad(i)));
            report(
                lemma,
                p,
                Some(i),
                g,
                c.distance.le(&c.pr_bad),
                vec![
                    ("distance", c.distance.to_string()),
                    ("pr_bad", c.pr_bad.to_string()),
                ],
            )
        }
        Lemma::GiPrBadEventCollisions => {
            let pr_bad = &g.bad(RbBad(i)).bad;
            let closed = bad_closed_form(p, i);
            let matches_closed = pr_bad.exact().is_none_or(|d| d.to_ratio() == closed);
            report(
                lemma,
                p,
                Some(i),
                g,
                pr_bad.le(&coll) && matches_closed,
                vec![
                    ("pr_bad", pr_bad.to_string()),
                    ("bound", coll.to_string()),
                    ("closed_form", render_rational(&closed)),
                ],
            )
        }
        Lemma::HybridArgument => {
            let e = telescope(p, g);
            report(
                lemma,
                p,
                None,
                g,
                e.verdict,
                vec![
                    ("distance", e.distance.to_string()),
                    ("sum_adjacent", e.sum.to_string()),
                    ("max_adjacent", e.max.to_string()),
                ],
            )
        }
        Lemma::GiAdjacentHybridsClose => {
            let d = g.pr(Prg(i)).abs_diff(g.pr(Prg(i + 1)));
            let prf_adv = g.pr(Prf(i)).abs_diff(g.pr(RfBad(i)));
            let pr_bad = &g.bad(RbBad(i)).bad;
            let via_bad = prf_adv.add(pr_bad);
            let via_bound = prf_adv.add(&coll);
            report(
                lemma,
                p,
                Some(i),
                g,
                d.le(&via_bad) && via_bad.le(&via_bound),
                vec![
                    ("distance", d.to_string()),
                    ("prf_advantage", prf_adv.to_string()),
                    ("pr_bad", pr_bad.to_string()),
                    ("bound", via_bound.to_string()),
                ],
            )
        }
        Lemma::GRealIdealClose => {
            let d = g.pr(Real).abs_diff(g.pr(Ideal));
            let max_adv = (0..n)
                .map(|j| g.pr(Prf(j)).abs_diff(g.pr(RfBad(j))))
                .reduce(|a, b| a.max(&b))
                .expect("num_calls > 0");
            let bound = max_adv.add(&coll).scale(n);
            report(
                lemma,
                p,
                None,
                g,
                d.le(&bound),
                vec![
                    ("distance", d.to_string()),
                    ("max_prf_advantage", max_adv.to_string()),
                    ("pr_collisions", coll.to_string()),
                    ("bound", bound.to_string()),
                ],
            )
        }
    }
}

/// Runs `lemmas` at `p` for every admissible hybrid index (`0..numCalls`
/// for the per-index checks), sharing game evaluations between them.
pub fn run_lemmas(p: &HybridParams, lemmas: &[Lemma], settings: &EvalSettings) -> Vec<LemmaReport> {
    let jobs: Vec<(Lemma, usize)> = lemmas
        .iter()
        .flat_map(|&l| {
            let range = if l.per_index() { 0..p.num_calls } else { 0..1 };
            range.map(move |i| (l, i))
        })
        .collect();
    let games = Games::compute(
        p,
        jobs.iter().flat_map(|&(l, i)| l.games(i, p.num_calls)),
        settings,
    );
    jobs.into_iter()
        .map(|(l, i)| check_one(l, p, i, &games))
        .collect()
}

/// The three parts of the identical-until-bad argument for one index.
#[derive(Debug, Clone, PartialEq)]
pub struct IdenticalUntilBad {
    pub pr_bad_rb: Quantity,
    pub pr_bad_rf: Quantity,
    /// `Pr[(a, false)]` for `a = true, false`, random-block then
    /// random-function oracle.
    pub no_bad_rb: [Quantity; 2],
    pub no_bad_rf: [Quantity; 2],
    pub distance: Quantity,
    pub pr_bad: Quantity,
}

impl IdenticalUntilBad {
    pub fn bad_same(&self) -> bool {
        self.pr_bad_rb.same(&self.pr_bad_rf)
    }

    pub fn no_bad_same(&self) -> bool {
        self.no_bad_rb[0].same(&self.no_bad_rf[0]) && self.no_bad_rb[1].same(&self.no_bad_rf[1])
    }

    pub fn distance_within_bad(&self) -> bool {
        self.distance.le(&self.pr_bad)
    }

    pub fn all_pass(&self) -> bool {
        self.bad_same() && self.no_bad_same() && self.distance_within_bad()
    }
}

fn identical_until_bad(rf: &BadStats, rb: &BadStats) -> IdenticalUntilBad {
    IdenticalUntilBad {
        pr_bad_rb: rb.bad.clone(),
        pr_bad_rf: rf.bad.clone(),
        no_bad_rb: [rb.true_no_bad.clone(), rb.false_no_bad.clone()],
        no_bad_rf: [rf.true_no_bad.clone(), rf.false_no_bad.clone()],
        distance: rf.answer.abs_diff(&rb.answer),
        pr_bad: rb.bad.clone(),
    }
}

/// Compares hybrid `i` under the random-function and random-block oracles.
pub fn check_identical_until_bad(
    p: &HybridParams,
    i: usize,
    settings: &EvalSettings,
) -> IdenticalUntilBad {
    let g = Games::compute(p, [GameId::RfBad(i), GameId::RbBad(i)], settings);
    identical_until_bad(g.bad(GameId::RfBad(i)), g.bad(GameId::RbBad(i)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BadEventReport {
    pub probability: Quantity,
    pub bound: Dyadic,
    /// Birthday-collision probability of the independent inputs of call `i`.
    pub closed_form: BigRational,
    pub within_bound: bool,
}

/// `Pr[bad]` in hybrid `i` with the random-block oracle.
pub fn bad_event_probability(
    p: &HybridParams,
    i: usize,
    settings: &EvalSettings,
) -> BadEventReport {
    let probability = bad_stats(&gi_rb_bad(p, i), settings).bad;
    let bound = collision_bound(p);
    BadEventReport {
        within_bound: probability.le(&Quantity::Exact(bound.clone())),
        probability,
        bound,
        closed_form: bad_closed_form(p, i),
    }
}

/// `|Pr[hybrid i] - Pr[hybrid i+1]|`.
pub fn adjacent_distance(p: &HybridParams, i: usize, settings: &EvalSettings) -> Quantity {
    let g = Games::compute(p, [GameId::Prg(i), GameId::Prg(i + 1)], settings);
    g.pr(GameId::Prg(i)).abs_diff(g.pr(GameId::Prg(i + 1)))
}

/// The real/ideal distance with its hybrid certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct EndToEnd {
    pub distance: Quantity,
    pub adjacent: Vec<Quantity>,
    pub sum: Quantity,
    pub max: Quantity,
    /// `distance <= sum <= numCalls * max`.
    pub verdict: bool,
}

fn telescope(p: &HybridParams, g: &Games) -> EndToEnd {
    let n = p.num_calls;
    let adjacent: Vec<Quantity> = (0..n)
        .map(|i| g.pr(GameId::Prg(i)).abs_diff(g.pr(GameId::Prg(i + 1))))
        .collect();
    let sum = adjacent[1..]
        .iter()
        .fold(adjacent[0].clone(), |a, b| a.add(b));
    let max = adjacent[1..]
        .iter()
        .fold(adjacent[0].clone(), |a, b| a.max(b));
    let distance = g.pr(GameId::Prg(0)).abs_diff(g.pr(GameId::Prg(n)));
    let verdict = distance.le(&sum) && sum.le(&max.scale(n));
    EndToEnd {
        distance,
        adjacent,
        sum,
        max,
        verdict,
    }
}

/// `|Pr[g_real] - Pr[g_ideal]|` with the per-hybrid distances. The hybrid
/// chain runs from the first hybrid to the last; the end-to-end distance is
/// taken on the real and ideal games themselves.
pub fn end_to_end_distance(p: &HybridParams, settings: &EvalSettings) -> EndToEnd {
    let ids = [GameId::Real, GameId::Ideal]
        .into_iter()
        .chain((0..=p.num_calls).map(GameId::Prg));
    let g = Games::compute(p, ids, settings);
    let mut e = telescope(p, &g);
    e.distance = g.pr(GameId::Real).abs_diff(g.pr(GameId::Ideal));
    e.verdict = e.distance.le(&e.sum) && e.sum.le(&e.max.scale(p.num_calls));
    e
}
