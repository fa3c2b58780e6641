//! Exact non-negative dyadic rationals `m / 2^e`.
//!
//! Every probability produced by uniform bit sampling is dyadic, so this
//! is an exact representation. Values that fit use a `u128` mantissa; the
//! rest fall back to big integers.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    Small(u128),
    Big(BigUint),
}

/// `mant / 2^exp`, kept normalized (odd mantissa, or zero with exponent 0).
#[derive(Clone)]
pub struct Dyadic {
    mant: Repr,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: Repr::Small(0),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: Repr::Small(1),
            exp: 0,
        }
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Dyadic {
            mant: Repr::Small(1),
            exp: k,
        }
    }

    /// `m / 2^e`.
    pub fn new(m: u128, e: u32) -> Self {
        Dyadic {
            mant: Repr::Small(m),
            exp: e,
        }
        .normalized()
    }

    pub fn from_big(m: BigUint, e: u32) -> Self {
        Dyadic {
            mant: Repr::Big(m),
            exp: e,
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        match &self.mant {
            Repr::Small(m) => *m == 0,
            Repr::Big(m) => m.is_zero(),
        }
    }

    /// Mantissa and exponent of the normalized form.
    pub fn parts(&self) -> (BigUint, u32) {
        (self.big_mant(), self.exp)
    }

    fn big_mant(&self) -> BigUint {
        match &self.mant {
            Repr::Small(m) => BigUint::from(*m),
            Repr::Big(m) => m.clone(),
        }
    }

    fn normalized(self) -> Self {
        match self.mant {
            Repr::Small(0) => Dyadic::zero(),
            Repr::Small(m) => {
                let tz = m.trailing_zeros().min(self.exp);
                Dyadic {
                    mant: Repr::Small(m >> tz),
                    exp: self.exp - tz,
                }
            }
            Repr::Big(m) => {
                if m.is_zero() {
                    return Dyadic::zero();
                }
                let tz = (m.trailing_zeros().unwrap_or(0) as u32).min(self.exp);
                let m = m >> tz;
                let mant = match m.to_u128() {
                    Some(s) => Repr::Small(s),
                    None => Repr::Big(m),
                };
                Dyadic {
                    mant,
                    exp: self.exp - tz,
                }
            }
        }
    }

    /// Multiplies by `2^-k`.
    pub fn shr(&self, k: u32) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// `|self - other|`.
    pub fn abs_diff(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        let a = self.big_mant() << (e - self.exp);
        let b = other.big_mant() << (e - other.exp);
        let d = if a >= b { a - b } else { b - a };
        Dyadic::from_big(d, e)
    }

    pub fn to_ratio(&self) -> BigRational {
        let num = self.big_mant();
        let den = BigUint::one() << self.exp;
        BigRational::new(num.into(), den.into())
    }

    pub fn to_f64(&self) -> f64 {
        match &self.mant {
            Repr::Small(m) => *m as f64 * (-(self.exp as f64)).exp2(),
            Repr::Big(m) => {
                let bits = m.bits() as i64;
                let shift = (bits - 64).max(0) as u64;
                let top = (m >> shift).to_u64().unwrap_or(u64::MAX) as f64;
                top * (shift as f64 - self.exp as f64).exp2()
            }
        }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.exp == other.exp
            && match (&self.mant, &other.mant) {
                (Repr::Small(a), Repr::Small(b)) => a == b,
                _ => self.big_mant() == other.big_mant(),
            }
    }
}

impl Eq for Dyadic {}

impl Hash for Dyadic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exp.hash(state);
        match &self.mant {
            Repr::Small(m) => m.hash(state),
            Repr::Big(m) => m.hash(state),
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let (sa, sb) = (e - self.exp, e - other.exp);
        if let (Repr::Small(a), Repr::Small(b)) = (&self.mant, &other.mant) {
            if sa < 128 && sb < 128 && a.leading_zeros() >= sa && b.leading_zeros() >= sb {
                return (a << sa).cmp(&(b << sb));
            }
        }
        (self.big_mant() << sa).cmp(&(other.big_mant() << sb))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.max(rhs.exp);
        if let (Repr::Small(a), Repr::Small(b)) = (&self.mant, &rhs.mant) {
            let (sa, sb) = (e - self.exp, e - rhs.exp);
            if sa < 127 && sb < 127 && a.leading_zeros() > sa + 1 && b.leading_zeros() > sb + 1 {
                return Dyadic {
                    mant: Repr::Small((a << sa) + (b << sb)),
                    exp: e,
                }
                .normalized();
            }
        }
        let a = self.big_mant() << (e - self.exp);
        let b = rhs.big_mant() << (e - rhs.exp);
        Dyadic::from_big(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        let exp = self.exp + rhs.exp;
        if let (Repr::Small(a), Repr::Small(b)) = (&self.mant, &rhs.mant) {
            if let Some(m) = a.checked_mul(*b) {
                return Dyadic {
                    mant: Repr::Small(m),
                    exp,
                }
                .normalized();
            }
        }
        Dyadic::from_big(self.big_mant() * rhs.big_mant(), exp)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> std::iter::Sum<&'a Dyadic> for Dyadic {
    fn sum<I: Iterator<Item = &'a Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| &acc + x)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.big_mant())
        } else {
            write!(f, "{}/2^{}", self.big_mant(), self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
