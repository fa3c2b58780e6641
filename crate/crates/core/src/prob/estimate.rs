use rayon::prelude::*;
use statrs::distribution::{Beta, ContinuousCDF};

use super::{Comp, Sampler};

/// Two-sided confidence level of reported intervals.
pub const CONFIDENCE: f64 = 0.99;

/// Minimum number of trials accepted by [`estimate_pr_true`].
pub const MIN_TRIALS: u64 = 100;

/// Monte Carlo estimate of `Pr[c = true]` with an exact (Clopper-Pearson)
/// 99% interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageEstimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
}

impl AdvantageEstimate {
    pub fn contains(&self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }
}

/// Clopper-Pearson interval for `x` successes in `n` trials.
pub fn clopper_pearson(x: u64, n: u64, confidence: f64) -> (f64, f64) {
    let alpha = 1.0 - confidence;
    let (xf, nf) = (x as f64, n as f64);
    let lo = if x == 0 {
        0.0
    } else {
        beta_quantile(xf, nf - xf + 1.0, alpha / 2.0)
    };
    let hi = if x == n {
        1.0
    } else {
        beta_quantile(xf + 1.0, nf - xf, 1.0 - alpha / 2.0)
    };
    (lo, hi)
}

// statrs' own inverse stops at about 1e-5; bisecting its CDF to the
// limit of f64 resolution is cheap and far tighter.
fn beta_quantile(a: f64, b: f64, p: f64) -> f64 {
    let dist = Beta::new(a, b).expect("valid shape");
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dist.cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Runs `trials` independent samples of `c`, trial `j` seeded with
/// `seed + j`, so the result does not depend on scheduling.
///
/// Panics if `trials` is below [`MIN_TRIALS`].
pub fn estimate_pr_true(c: &Comp<bool>, trials: u64, seed: u64) -> AdvantageEstimate {
    assert!(
        trials >= MIN_TRIALS,
        "need at least {MIN_TRIALS} trials, got {trials}"
    );
    let successes = (0..trials)
        .into_par_iter()
        .filter(|j| c.sample_with(&mut Sampler::new(seed.wrapping_add(*j))))
        .count() as u64;
    let (lo, hi) = clopper_pearson(successes, trials, CONFIDENCE);
    AdvantageEstimate {
        successes,
        trials,
        estimate: successes as f64 / trials as f64,
        lo,
        hi,
    }
}
