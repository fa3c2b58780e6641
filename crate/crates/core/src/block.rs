//! Fixed-width blocks and variable-length bit strings.
//!
//! Bits are stored most-significant-first: bit 0 of a block is the high bit
//! of its first octet. Unused trailing bits are always zero, so derived
//! equality and hashing agree with bitwise equality.

use std::fmt;

use smallvec::{smallvec, SmallVec};

/// Largest supported block width in bits.
pub const MAX_BLOCK_BITS: usize = 256;

/// A bit vector of fixed width `eta` (1..=256).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    eta: u16,
    bytes: [u8; 32],
}

impl Block {
    /// The all-zero block of width `eta`.
    ///
    /// Panics if `eta` is zero or above [`MAX_BLOCK_BITS`].
    pub fn zero(eta: usize) -> Self {
        assert!(
            (1..=MAX_BLOCK_BITS).contains(&eta),
            "block width {eta} out of range"
        );
        Block {
            eta: eta as u16,
            bytes: [0; 32],
        }
    }

    /// Builds a block whose big-endian integer value is `value`.
    ///
    /// Only the low `eta` bits of `value` are used; `eta` must be at most 64.
    pub fn from_u64(eta: usize, value: u64) -> Self {
        assert!(eta <= 64, "from_u64 needs eta <= 64, got {eta}");
        let mut b = Block::zero(eta);
        for j in 0..eta {
            if (value >> (eta - 1 - j)) & 1 == 1 {
                b.set_bit(j, true);
            }
        }
        b
    }

    /// Takes the first `eta` bits of `bytes`.
    pub fn from_prefix(eta: usize, bytes: &[u8]) -> Self {
        let mut b = Block::zero(eta);
        let n = eta.div_ceil(8);
        assert!(bytes.len() >= n, "need {n} octets for a {eta}-bit block");
        b.bytes[..n].copy_from_slice(&bytes[..n]);
        b.clear_tail();
        b
    }

    /// Builds a block from whole octets; the width is `8 * bytes.len()`.
    pub fn from_octets(bytes: &[u8]) -> Self {
        Block::from_prefix(bytes.len() * 8, bytes)
    }

    pub fn eta(&self) -> usize {
        self.eta as usize
    }

    /// The significant octets, `ceil(eta / 8)` of them.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes[..self.eta().div_ceil(8)]
    }

    pub fn bit(&self, j: usize) -> bool {
        assert!(j < self.eta());
        self.bytes[j / 8] >> (7 - j % 8) & 1 == 1
    }

    fn set_bit(&mut self, j: usize, on: bool) {
        let mask = 1u8 << (7 - j % 8);
        if on {
            self.bytes[j / 8] |= mask;
        } else {
            self.bytes[j / 8] &= !mask;
        }
    }

    fn clear_tail(&mut self) {
        let eta = self.eta();
        let full = eta / 8;
        if eta % 8 != 0 {
            self.bytes[full] &= 0xffu8 << (8 - eta % 8);
            self.bytes[full + 1..].fill(0);
        } else {
            self.bytes[full..].fill(0);
        }
    }

    /// Big-endian integer value; `eta` must be at most 64.
    pub fn to_u64(&self) -> u64 {
        assert!(self.eta() <= 64, "to_u64 needs eta <= 64");
        (0..self.eta()).fold(0u64, |acc, j| (acc << 1) | self.bit(j) as u64)
    }

    pub fn to_bits(&self) -> BitString {
        BitString {
            len: self.eta(),
            bytes: SmallVec::from_slice(self.as_bytes()),
        }
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eta() <= 16 {
            write!(f, "Block(")?;
            for j in 0..self.eta() {
                write!(f, "{}", self.bit(j) as u8)?;
            }
            write!(f, ")")
        } else {
            write!(f, "Block<{}>({})", self.eta, hex::encode(self.as_bytes()))
        }
    }
}

/// A variable-length bit sequence, the input type of the block-level PRF.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    len: usize,
    bytes: SmallVec<[u8; 40]>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            bytes: smallvec![0; len.div_ceil(8)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = BitString::zeros(bits.len());
        for (j, &b) in bits.iter().enumerate() {
            if b {
                s.bytes[j / 8] |= 1 << (7 - j % 8);
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, j: usize) -> bool {
        assert!(j < self.len);
        self.bytes[j / 8] >> (7 - j % 8) & 1 == 1
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 1 << (7 - self.len % 8);
        }
        self.len += 1;
    }

    pub fn concat(mut self, other: &BitString) -> Self {
        if self.len % 8 == 0 {
            self.bytes.extend_from_slice(&other.bytes);
            self.len += other.len;
        } else {
            for j in 0..other.len {
                self.push(other.bit(j));
            }
        }
        self
    }

    /// Packed octets when the length is a whole number of octets.
    pub fn as_octets(&self) -> Option<&[u8]> {
        (self.len % 8 == 0).then_some(&self.bytes[..])
    }

    /// Packs the bits into octets, left-padding with zero bits so the last
    /// bit of the sequence is the low bit of the last octet.
    pub fn to_right_aligned_octets(&self) -> Vec<u8> {
        let pad = (8 - self.len % 8) % 8;
        let mut out = vec![0u8; (self.len + pad) / 8];
        for j in 0..self.len {
            if self.bit(j) {
                let k = j + pad;
                out[k / 8] |= 1 << (7 - k % 8);
            }
        }
        out
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString[")?;
        for j in 0..self.len {
            write!(f, "{}", self.bit(j) as u8)?;
        }
        write!(f, "]")
    }
}

impl From<&Block> for BitString {
    fn from(b: &Block) -> Self {
        b.to_bits()
    }
}
