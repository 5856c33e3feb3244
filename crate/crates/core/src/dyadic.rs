//! Exact values of the form `0` or `2^-e`.
//!
//! Every distance, opacity, and complexity in this crate is one of these, so
//! nothing here ever touches floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

/// Largest exponent a [`DyadicDistance`] may carry.
pub const MAX_EXPONENT: u32 = i32::MAX as u32;

/// A distance between words: either zero or `2^-e` with `e >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DyadicDistance {
    Zero,
    Pow2Inv(u32),
}

impl DyadicDistance {
    /// `2^-e`, or `None` when `e` exceeds [`MAX_EXPONENT`].
    pub fn pow2_inv(e: usize) -> Option<Self> {
        u32::try_from(e)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .map(DyadicDistance::Pow2Inv)
    }

    pub fn is_zero(self) -> bool {
        matches!(self, DyadicDistance::Zero)
    }

    /// The exponent `e` of `2^-e`, `None` for zero.
    pub fn exponent(self) -> Option<u32> {
        match self {
            DyadicDistance::Zero => None,
            DyadicDistance::Pow2Inv(e) => Some(e),
        }
    }

    pub fn numer(self) -> BigUint {
        match self {
            DyadicDistance::Zero => BigUint::from(0u32),
            DyadicDistance::Pow2Inv(_) => BigUint::from(1u32),
        }
    }

    /// Denominator in lowest terms; zero is written `0/1`.
    pub fn denom(self) -> BigUint {
        match self {
            DyadicDistance::Zero => BigUint::from(1u32),
            DyadicDistance::Pow2Inv(e) => BigUint::from(1u32) << e,
        }
    }

    /// Multiplies by two. `Pow2Inv(0)` has nowhere to go and returns `None`.
    pub fn double(self) -> Option<Self> {
        match self {
            DyadicDistance::Zero => Some(DyadicDistance::Zero),
            DyadicDistance::Pow2Inv(0) => None,
            DyadicDistance::Pow2Inv(e) => Some(DyadicDistance::Pow2Inv(e - 1)),
        }
    }

    /// Divides by two.
    pub fn halve(self) -> Option<Self> {
        match self {
            DyadicDistance::Zero => Some(DyadicDistance::Zero),
            DyadicDistance::Pow2Inv(e) if e < MAX_EXPONENT => Some(DyadicDistance::Pow2Inv(e + 1)),
            DyadicDistance::Pow2Inv(_) => None,
        }
    }
}

impl Ord for DyadicDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        use DyadicDistance::*;
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, Pow2Inv(_)) => Ordering::Less,
            (Pow2Inv(_), Zero) => Ordering::Greater,
            // a larger exponent is a smaller value
            (Pow2Inv(a), Pow2Inv(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for DyadicDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicDistance::Zero => f.write_str("0"),
            DyadicDistance::Pow2Inv(0) => f.write_str("1"),
            DyadicDistance::Pow2Inv(_) => write!(f, "1/{}", self.denom()),
        }
    }
}
