//! Arbitrary-precision integers with an inline machine-word fast path.
//!
//! Almost every coefficient that shows up in structure constants and in the
//! elimination steps is a small integer, so values are kept in an `i64` until
//! an operation overflows, at which point they move to a heap `BigInt`.
//! Results that fit back into an `i64` are always demoted, which keeps the
//! representation canonical: two equal integers have the same variant.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(Box::new(BigInt::from(v))),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn add(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_add(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_i128(*a as i128 + *b as i128),
            },
            _ => Int::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn sub(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_sub(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_i128(*a as i128 - *b as i128),
            },
            _ => Int::from_big(self.to_big() - other.to_big()),
        }
    }

    pub fn mul(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_i128(*a as i128 * *b as i128),
            },
            _ => Int::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(a) => match a.checked_neg() {
                Some(v) => Int::Small(v),
                None => Int::from_i128(-(*a as i128)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact division; the caller guarantees `other` divides `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_i128(*a as i128 / *b as i128),
            },
            _ => Int::from_big(self.to_big() / other.to_big()),
        }
    }

    /// Non-negative gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                match i64::try_from(x) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::from_big(BigInt::from(x)),
                }
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Int {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.trim_start_matches(['+', '-']).bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid integer literal '{s}'"));
        }
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::Small(v));
        }
        s.parse::<BigInt>()
            .map(Int::from_big)
            .map_err(|e| format!("invalid integer literal '{s}': {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::Small(i64::MAX).add(&Int::ONE);
        assert!(matches!(big, Int::Big(_)));
        let back = big.sub(&Int::ONE);
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = Int::Small(1 << 40).mul(&Int::Small(1 << 40));
        assert_eq!(sq.div_exact(&Int::Small(1 << 40)), Int::Small(1 << 40));
    }

    #[test]
    fn gcd_and_parse() {
        assert_eq!(Int::Small(-12).gcd(&Int::Small(18)), Int::Small(6));
        assert_eq!(Int::ZERO.gcd(&Int::ZERO), Int::ZERO);
        let x: Int = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(x.to_string(), "123456789012345678901234567890");
        assert!("12a".parse::<Int>().is_err());
        assert_eq!(Int::Small(i64::MIN).neg().neg(), Int::Small(i64::MIN));
    }
}
