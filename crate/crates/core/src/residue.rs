use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An integer residue modulo `2^bits` (1 <= bits <= 63).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntResidue {
    value: u64,
    bits: u32,
}

impl IntResidue {
    pub const MAX_BITS: u32 = 63;

    /// Reduces `value` modulo `2^bits`.
    pub fn new(value: u64, bits: u32) -> IntResidue {
        assert!(
            (1..=Self::MAX_BITS).contains(&bits),
            "residue precision {bits} outside 1..=63"
        );
        IntResidue {
            value: value & mask(bits),
            bits,
        }
    }

    /// Residue of a signed integer.
    pub fn from_i64(value: i64, bits: u32) -> IntResidue {
        IntResidue::new(value as u64, bits)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        1u64 << self.bits
    }

    /// Reduction to a coarser modulus `2^bits`.
    pub fn reduce(self, bits: u32) -> Result<IntResidue> {
        if bits == 0 || bits > self.bits {
            return Err(Error::Config(format!(
                "cannot reduce a residue mod 2^{} to mod 2^{bits}",
                self.bits
            )));
        }
        Ok(IntResidue::new(self.value, bits))
    }

    /// 2-adic valuation, or `None` when the residue is zero (valuation at
    /// least `bits`).
    pub fn valuation(self) -> Option<u32> {
        (self.value != 0).then(|| self.value.trailing_zeros())
    }

    pub fn is_unit(self) -> bool {
        self.value & 1 == 1
    }

    pub fn mul(self, other: IntResidue) -> IntResidue {
        let bits = self.bits.min(other.bits);
        IntResidue::new(self.value.wrapping_mul(other.value), bits)
    }
}

impl fmt::Display for IntResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.value, self.bits)
    }
}

#[inline]
pub(crate) fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inverse of an odd number modulo `2^bits` by Newton iteration.
pub(crate) fn inverse_mod_pow2(odd: u64, bits: u32) -> u64 {
    debug_assert!(odd & 1 == 1);
    // x = odd is correct to 3 bits; each step doubles the precision
    let mut x = odd;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(odd.wrapping_mul(x)));
    }
    x & mask(bits)
}
