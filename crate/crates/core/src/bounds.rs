//! Concrete security arithmetic for HMAC-DRBG: the HMAC PRF advantage
//! estimate, the collision term, the end-to-end bound and an exact
//! birthday-collision oracle. All values are exact rationals; base-2
//! logarithms are for presentation.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// HMAC-SHA256 output width; the natural `eta` for the real construction.
pub const HMAC_SHA256_BITS: u32 = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("resource exponent t = {0} must be below 256")]
    BadT(u32),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
}

/// An exact non-negative rational together with its base-2 logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct Log2Quantity {
    pub value: BigRational,
    /// `-inf` for zero.
    pub log2: f64,
}

impl Log2Quantity {
    pub fn new(value: BigRational) -> Self {
        let log2 = log2_rational(&value);
        Log2Quantity { value, log2 }
    }

    /// The exact value rendered as `p/2^k` when the denominator is a power
    /// of two, otherwise as `p/q`.
    pub fn exact_string(&self) -> String {
        render_rational(&self.value)
    }
}

impl fmt::Display for Log2Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (log2 = {:.4})", self.exact_string(), self.log2)
    }
}

/// `log2(n / d)` from the top 64 bits of numerator and denominator.
fn log2_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    fn split(x: &BigInt) -> (f64, i64) {
        let mag = x.abs().to_biguint().expect("non-negative");
        let bits = mag.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (mag >> shift as u64).to_u64().expect("fits in 64 bits") as f64;
        (top.log2(), shift)
    }
    let (ln, sn) = split(r.numer());
    let (ld, sd) = split(r.denom());
    (ln - ld) + (sn - sd) as f64
}

pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    let den = r.denom().magnitude();
    if den.count_ones() == 1 {
        format!("{}/2^{}", r.numer(), den.bits() - 1)
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> BigRational {
    let m = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

/// The HMAC PRF advantage estimate for an adversary running in time and
/// space `2^t`: `2^(2t-256) + 2^(t-255)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrfAdvantage {
    pub t: u32,
    pub bound: Log2Quantity,
}

impl PrfAdvantage {
    /// The bound says nothing once it reaches 1, i.e. for `t >= 128`.
    pub fn is_vacuous(&self) -> bool {
        self.bound.value >= BigRational::one()
    }

    /// The two exponents, `(2t - 256, t - 255)`.
    pub fn exponents(&self) -> (i64, i64) {
        let t = self.t as i64;
        (2 * t - 256, t - 255)
    }

    /// Symbolic rendering, e.g. `2^-100 + 2^-177`.
    pub fn symbolic(&self) -> String {
        let (a, b) = self.exponents();
        format!("2^{a} + 2^{b}")
    }
}

pub fn prf_advantage_hmac(t: u32) -> Result<PrfAdvantage, BoundsError> {
    if t >= 256 {
        return Err(BoundsError::BadT(t));
    }
    let (a, b) = (2 * t as i64 - 256, t as i64 - 255);
    Ok(PrfAdvantage {
        t,
        bound: Log2Quantity::new(pow2(a) + pow2(b)),
    })
}

/// `(1 + b)^2 / 2^eta`.
pub fn pr_collisions(blocks_per_call: u64, eta: u32) -> BigRational {
    let n = BigInt::from(1 + blocks_per_call);
    BigRational::from_integer(&n * &n) * pow2(-(eta as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInputs {
    pub t: u32,
    pub num_calls: BigUint,
    pub blocks_per_call: u64,
    pub eta: u32,
}

impl BoundInputs {
    pub fn new(
        t: u32,
        num_calls: impl Into<BigUint>,
        blocks_per_call: u64,
        eta: u32,
    ) -> Result<Self, BoundsError> {
        let num_calls = num_calls.into();
        if t >= 256 {
            return Err(BoundsError::BadT(t));
        }
        if num_calls.is_zero() {
            return Err(BoundsError::NotPositive("num_calls"));
        }
        if blocks_per_call == 0 {
            return Err(BoundsError::NotPositive("blocks_per_call"));
        }
        if eta == 0 {
            return Err(BoundsError::NotPositive("eta"));
        }
        Ok(BoundInputs {
            t,
            num_calls,
            blocks_per_call,
            eta,
        })
    }

    /// True when `eta` differs from the HMAC-SHA256 output width.
    pub fn eta_mismatch(&self) -> bool {
        self.eta != HMAC_SHA256_BITS
    }
}

/// `numCalls * (prf_advantage_hmac(t) + pr_collisions(b, eta))`.
pub fn total_bound(inputs: &BoundInputs) -> Log2Quantity {
    let adv = prf_advantage_hmac(inputs.t)
        .expect("t validated")
        .bound
        .value;
    let per_call = adv + pr_collisions(inputs.blocks_per_call, inputs.eta);
    let n = BigRational::from_integer(BigInt::from(inputs.num_calls.clone()));
    Log2Quantity::new(n * per_call)
}

/// Probability that `samples` independent uniform draws from a set of
/// size `space` are not all distinct.
pub fn birthday_exact(samples: u64, space: &BigUint) -> BigRational {
    assert!(!space.is_zero(), "space must be at least 1");
    if samples <= 1 {
        return BigRational::zero();
    }
    if BigUint::from(samples) > *space {
        return BigRational::one();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..samples {
        num *= space - BigUint::from(j);
        den *= space;
    }
    BigRational::one() - BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn advantage_at_78() {
        let a = prf_advantage_hmac(78).unwrap();
        assert_eq!(a.bound.value, pow2(-100) + pow2(-177));
        assert_eq!(a.symbolic(), "2^-100 + 2^-177");
        assert!(!a.is_vacuous());
    }

    #[test]
    fn advantage_at_zero_and_monotone() {
        assert_eq!(
            prf_advantage_hmac(0).unwrap().bound.value,
            pow2(-256) + pow2(-255)
        );
        let lo = prf_advantage_hmac(10).unwrap().bound.value;
        let hi = prf_advantage_hmac(20).unwrap().bound.value;
        assert!(lo < hi);
    }

    #[test]
    fn advantage_becomes_vacuous_at_128() {
        assert!(!prf_advantage_hmac(127).unwrap().is_vacuous());
        assert!(prf_advantage_hmac(128).unwrap().is_vacuous());
        assert_eq!(prf_advantage_hmac(256), Err(BoundsError::BadT(256)));
    }

    #[test]
    fn collision_term() {
        assert_eq!(
            pr_collisions(10, 128),
            BigRational::from_integer(121.into()) * pow2(-128)
        );
        assert_eq!(pr_collisions(0, 9), pow2(-9));
        assert_eq!(
            pr_collisions(10, 256),
            BigRational::from_integer(121.into()) * pow2(-256)
        );
        assert_eq!(render_rational(&pr_collisions(10, 128)), "121/2^128");
    }

    #[test]
    fn worked_example_is_about_2_to_minus_52() {
        let inputs = BoundInputs::new(78, BigUint::one() << 48u32, 10, 128).unwrap();
        let b = total_bound(&inputs);
        assert!((b.log2 + 52.0).abs() < 0.1, "{}", b.log2);
        assert!(inputs.eta_mismatch());
    }

    #[test]
    fn single_call_and_doubling() {
        let one = total_bound(&BoundInputs::new(40, 1u32, 3, 64).unwrap());
        let per_call = prf_advantage_hmac(40).unwrap().bound.value + pr_collisions(3, 64);
        assert_eq!(one.value, per_call);
        let four = total_bound(&BoundInputs::new(40, 4u32, 3, 64).unwrap());
        let eight = total_bound(&BoundInputs::new(40, 8u32, 3, 64).unwrap());
        assert_eq!(
            eight.value,
            four.value * BigRational::from_integer(2.into())
        );
    }

    #[test]
    fn birthday_values() {
        assert_eq!(
            birthday_exact(1, &BigUint::from(256u32)),
            BigRational::zero()
        );
        assert_eq!(birthday_exact(0, &BigUint::from(1u32)), BigRational::zero());
        // 1 - 255*254/256^2, evaluated by hand.
        assert_eq!(birthday_exact(3, &BigUint::from(256u32)), r(766, 65536));
        assert_eq!(birthday_exact(2, &BigUint::from(2u32)), r(1, 2));
        assert_eq!(birthday_exact(5, &BigUint::from(4u32)), BigRational::one());
    }

    #[test]
    fn birthday_within_union_bound() {
        for eta in 1..=16u32 {
            let space = BigUint::one() << eta;
            for b in 0..=16u64 {
                assert!(
                    birthday_exact(b + 1, &space) <= pr_collisions(b, eta),
                    "b={b} eta={eta}"
                );
            }
        }
    }

    #[test]
    fn log2_is_accurate() {
        let q = Log2Quantity::new(r(3, 1) * pow2(-300));
        assert!((q.log2 - (3f64.log2() - 300.0)).abs() < 1e-12);
        assert_eq!(
            Log2Quantity::new(BigRational::zero()).log2,
            f64::NEG_INFINITY
        );
        assert_eq!(q.exact_string(), "3/2^300");
    }

    #[test]
    fn input_validation() {
        assert_eq!(
            BoundInputs::new(256, 1u32, 1, 1),
            Err(BoundsError::BadT(256))
        );
        assert_eq!(
            BoundInputs::new(1, 0u32, 1, 1),
            Err(BoundsError::NotPositive("num_calls"))
        );
        assert_eq!(
            BoundInputs::new(1, 1u32, 0, 1),
            Err(BoundsError::NotPositive("blocks_per_call"))
        );
        assert_eq!(
            BoundInputs::new(1, 1u32, 1, 0),
            Err(BoundsError::NotPositive("eta"))
        );
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn total_bound_monotonicity(t in 0u32..200, n in 1u64..1000, b in 1u64..50, eta in 1u32..300) {
                let base = total_bound(&BoundInputs::new(t, n, b, eta).unwrap()).value;
                prop_assert!(total_bound(&BoundInputs::new(t + 1, n, b, eta).unwrap()).value > base);
                prop_assert!(total_bound(&BoundInputs::new(t, n + 1, b, eta).unwrap()).value > base);
                prop_assert!(total_bound(&BoundInputs::new(t, n, b + 1, eta).unwrap()).value > base);
                prop_assert!(total_bound(&BoundInputs::new(t, n, b, eta + 1).unwrap()).value < base);
            }
        }
    }
}
