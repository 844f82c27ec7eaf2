//! Exact counts and Gaussian binomial coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact non-negative integer of unbounded size. Serializes as a decimal
/// string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> BigCount {
        BigCount(BigUint::zero())
    }

    pub fn one() -> BigCount {
        BigCount(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl std::ops::Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl std::iter::Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(BigCount)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `q^e` as a big integer.
pub(crate) fn big_pow(q: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// `[y]_q = (q^y - 1)/(q - 1)`.
fn q_integer(y: u32, q: u64) -> BigUint {
    (big_pow(q, y) - 1u32) / (q - 1)
}

/// `[x]_q! = [1]_q · [2]_q ⋯ [x]_q`, with `[0]_q! = 1`.
fn q_factorial(x: u32, q: u64) -> BigUint {
    (1..=x).map(|y| q_integer(y, q)).product()
}

/// Number of `t`-dimensional subspaces of an `m`-dimensional space over
/// GF(q), as `[m]_q! / ([t]_q! [m-t]_q!)`. Returns zero when `t > m`.
pub fn gaussian_binomial(m: u32, t: u32, q: u64) -> BigCount {
    assert!(q >= 2, "q must be a prime power");
    if t > m {
        return BigCount::zero();
    }
    let num = q_factorial(m, q);
    let den = q_factorial(t, q) * q_factorial(m - t, q);
    debug_assert!((&num % &den).is_zero());
    BigCount(num / den)
}

/// Signed-argument variant used by the counting formulas: zero whenever an
/// argument is negative or `t > m`.
pub(crate) fn qbinom4(m: i64, t: i64) -> BigUint {
    if m < 0 || t < 0 || t > m {
        BigUint::zero()
    } else {
        gaussian_binomial(m as u32, t as u32, 4).into_inner()
    }
}
