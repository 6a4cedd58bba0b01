use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, ParseBigIntError, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A nonnegative count of arbitrary size.
///
/// Serializes as a decimal string so that consumers never see a lossy
/// floating-point or 64-bit value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::from(1u8))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.0.clone())
    }

    /// Converts a signed value, returning `None` when it is negative.
    pub fn from_bigint(value: BigInt) -> Option<Self> {
        value.to_biguint().map(BigCount)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

macro_rules! from_unsigned {
    ($($t:ty),*) => {$(
        impl From<$t> for BigCount {
            fn from(v: $t) -> Self {
                BigCount(BigUint::from(v))
            }
        }
    )*};
}
from_unsigned!(u8, u16, u32, u64, u128, usize);

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<BigUint>().map(BigCount)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl Mul<u64> for &BigCount {
    type Output = BigCount;
    fn mul(self, rhs: u64) -> BigCount {
        BigCount(&self.0 * rhs)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a BigCount> for BigCount {
    fn sum<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl Serialize for BigCount {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_bigint_is_rejected() {
        assert!(BigCount::from_bigint(BigInt::from(-1)).is_none());
        assert_eq!(BigCount::from_bigint(BigInt::from(7)).unwrap(), 7u64);
    }

    #[test]
    fn json_is_a_decimal_string() {
        let big: BigCount = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"123456789012345678901234567890\"");
        let back: BigCount = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
    }
}
