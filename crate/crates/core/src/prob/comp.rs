use std::hash::Hash;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rustc_hash::FxHashMap;
use thiserror::Error;

use super::{Distribution, Dyadic};
use crate::block::{Block, MAX_BLOCK_BITS};

/// Default bound on branch expansions during exact enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbError {
    #[error("exact enumeration needs more than {cap} branch expansions")]
    CapExceeded { cap: u64 },
    #[error("uniform sample width {0} outside 1..=256")]
    BadWidth(usize),
}

/// Outcome types a computation can produce.
pub trait Value: Clone + Eq + Hash + Send + Sync + 'static {}

impl<T: Clone + Eq + Hash + Send + Sync + 'static> Value for T {}

/// Seeded sampling stream (ChaCha8, seeded from a 64-bit value).
pub struct Sampler {
    rng: ChaCha8Rng,
    drawn: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            drawn: 0,
        }
    }

    /// `w` fresh bits as a block.
    pub fn block(&mut self, w: usize) -> Block {
        let mut buf = [0u8; 32];
        let n = w.div_ceil(8);
        self.rng.fill_bytes(&mut buf[..n]);
        self.drawn += w as u64;
        Block::from_prefix(w, &buf)
    }

    /// Random bits handed out so far.
    pub fn bits_drawn(&self) -> u64 {
        self.drawn
    }
}

pub(crate) struct Ctx {
    expansions: u64,
    cap: u64,
}

type Sink<'a, T> = dyn FnMut(T, Dyadic) + 'a;

trait Node<T>: Send + Sync {
    /// Feeds every outcome with its path probability (scaled by `w`) to `sink`.
    fn eval(&self, w: &Dyadic, ctx: &mut Ctx, sink: &mut Sink<'_, T>) -> Result<(), ProbError>;
    fn sample(&self, rng: &mut Sampler) -> T;

    /// The outcome, when the computation is a point mass known without
    /// evaluation.
    fn point(&self) -> Option<T> {
        None
    }
}

/// A finite probabilistic computation built from uniform sampling.
pub struct Comp<T>(Arc<dyn Node<T>>);

impl<T> Clone for Comp<T> {
    fn clone(&self) -> Self {
        Comp(self.0.clone())
    }
}

struct Ret<T>(T);

impl<T: Value> Node<T> for Ret<T> {
    fn eval(&self, w: &Dyadic, _: &mut Ctx, sink: &mut Sink<'_, T>) -> Result<(), ProbError> {
        sink(self.0.clone(), w.clone());
        Ok(())
    }

    fn sample(&self, _: &mut Sampler) -> T {
        self.0.clone()
    }

    fn point(&self) -> Option<T> {
        Some(self.0.clone())
    }
}

struct Uniform(usize);

impl Node<Block> for Uniform {
    fn eval(&self, w: &Dyadic, ctx: &mut Ctx, sink: &mut Sink<'_, Block>) -> Result<(), ProbError> {
        let width = self.0;
        let fanout = if width < 64 { 1u64 << width } else { u64::MAX };
        ctx.expansions = ctx.expansions.saturating_add(fanout);
        if width >= 64 || ctx.expansions > ctx.cap {
            return Err(ProbError::CapExceeded { cap: ctx.cap });
        }
        let p = w.shr(width as u32);
        for value in 0..fanout {
            sink(Block::from_u64(width, value), p.clone());
        }
        Ok(())
    }

    fn sample(&self, rng: &mut Sampler) -> Block {
        rng.block(self.0)
    }
}

struct MapNode<S, T> {
    inner: Comp<S>,
    f: Arc<dyn Fn(S) -> T + Send + Sync>,
}

impl<S: Value, T: Value> Node<T> for MapNode<S, T> {
    fn eval(&self, w: &Dyadic, ctx: &mut Ctx, sink: &mut Sink<'_, T>) -> Result<(), ProbError> {
        let f = &self.f;
        self.inner.0.eval(w, ctx, &mut |s, p| sink(f(s), p))
    }

    fn sample(&self, rng: &mut Sampler) -> T {
        (self.f)(self.inner.0.sample(rng))
    }

    fn point(&self) -> Option<T> {
        self.inner.0.point().map(|s| (self.f)(s))
    }
}

struct BindNode<S, T> {
    inner: Comp<S>,
    f: Arc<dyn Fn(S) -> Comp<T> + Send + Sync>,
}

impl<S: Value, T: Value> Node<T> for BindNode<S, T> {
    // The first computation is enumerated to a merged table, so the
    // continuation runs once per distinct intermediate value.
    fn eval(&self, w: &Dyadic, ctx: &mut Ctx, sink: &mut Sink<'_, T>) -> Result<(), ProbError> {
        if let Some(s) = self.inner.0.point() {
            return (self.f)(s).0.eval(w, ctx, sink);
        }
        let mut table: FxHashMap<S, Dyadic> = FxHashMap::default();
        self.inner.0.eval(&Dyadic::one(), ctx, &mut |s, p| {
            *table.entry(s).or_default() += &p;
        })?;
        for (s, p) in table {
            (self.f)(s).0.eval(&(w * &p), ctx, sink)?;
        }
        Ok(())
    }

    fn sample(&self, rng: &mut Sampler) -> T {
        (self.f)(self.inner.0.sample(rng)).0.sample(rng)
    }
}

/// `w` uniform bits as a block.
pub fn uniform(w: usize) -> Result<Comp<Block>, ProbError> {
    if w == 0 || w > MAX_BLOCK_BITS {
        return Err(ProbError::BadWidth(w));
    }
    Ok(Comp(Arc::new(Uniform(w))))
}

/// Uniform block of a width already known to be valid.
pub(crate) fn uniform_block(w: usize) -> Comp<Block> {
    uniform(w).expect("block width validated by caller")
}

/// A fair coin.
pub fn coin() -> Comp<bool> {
    uniform_block(1).map(|b| b.bit(0))
}

impl<T: Value> Comp<T> {
    pub fn ret(x: T) -> Self {
        Comp(Arc::new(Ret(x)))
    }

    pub fn map<U: Value>(&self, f: impl Fn(T) -> U + Send + Sync + 'static) -> Comp<U> {
        Comp(Arc::new(MapNode {
            inner: self.clone(),
            f: Arc::new(f),
        }))
    }

    pub fn bind<U: Value>(&self, f: impl Fn(T) -> Comp<U> + Send + Sync + 'static) -> Comp<U> {
        Comp(Arc::new(BindNode {
            inner: self.clone(),
            f: Arc::new(f),
        }))
    }

    /// Exact distribution with the default enumeration cap.
    pub fn exact_dist(&self) -> Result<Distribution<T>, ProbError> {
        self.exact_dist_capped(DEFAULT_ENUMERATION_CAP)
    }

    /// Exact distribution, failing once more than `cap` sampled branches
    /// have been expanded.
    pub fn exact_dist_capped(&self, cap: u64) -> Result<Distribution<T>, ProbError> {
        let mut ctx = Ctx { expansions: 0, cap };
        let mut table: FxHashMap<T, Dyadic> = FxHashMap::default();
        self.0.eval(&Dyadic::one(), &mut ctx, &mut |x, p| {
            *table.entry(x).or_default() += &p;
        })?;
        Ok(Distribution::from_table(table))
    }

    /// Draws one outcome using the stream seeded by `seed`.
    pub fn sample(&self, seed: u64) -> T {
        self.sample_with(&mut Sampler::new(seed))
    }

    pub fn sample_with(&self, rng: &mut Sampler) -> T {
        self.0.sample(rng)
    }

    /// Random bits drawn along the path sampled with `seed`.
    pub fn path_bits(&self, seed: u64) -> u64 {
        let mut rng = Sampler::new(seed);
        self.0.sample(&mut rng);
        rng.bits_drawn()
    }
}

/// Sequences a list of computations, collecting their results in order.
pub fn sequence<T: Value>(comps: Vec<Comp<T>>) -> Comp<Vec<T>> {
    comps.into_iter().fold(Comp::ret(Vec::new()), |acc, c| {
        acc.bind(move |xs: Vec<T>| {
            c.map(move |x| {
                let mut xs = xs.clone();
                xs.push(x);
                xs
            })
        })
    })
}

/// Maps a probabilistic function over a list.
pub fn comp_map<A: Clone, T: Value>(items: &[A], f: impl Fn(&A) -> Comp<T>) -> Comp<Vec<T>> {
    sequence(items.iter().map(f).collect())
}
