//! Exact values in the extended half-line `[0, ∞]`.
//!
//! Every distance in the crate is an [`ExtValue`]: either a non-negative
//! rational kept in lowest terms or the single top element `inf`. Together
//! with `min` and `+` these form the tropical (min-plus) semiring whose
//! additive identity is `inf` and whose multiplicative identity is `0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    // Variant order matters: every finite value sorts below `Inf`.
    Finite(BigRational),
    Inf,
}

/// A point of `[0, ∞]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtValue(Repr);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseExtValueError {
    #[error("empty value token")]
    Empty,
    #[error("invalid value token `{0}`")]
    Invalid(String),
    #[error("negative value `{0}`")]
    Negative(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue(Repr::Finite(BigRational::zero()))
    }

    pub fn inf() -> Self {
        ExtValue(Repr::Inf)
    }

    pub fn integer(n: u64) -> Self {
        ExtValue(Repr::Finite(BigRational::from_integer(BigInt::from(n))))
    }

    /// The rational `num / den`, reduced.
    ///
    /// Panics if `den` is zero.
    pub fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtValue(Repr::Finite(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Wraps a rational, rejecting negative values.
    pub fn from_rational(r: BigRational) -> Option<Self> {
        if r.is_negative() {
            None
        } else {
            Some(ExtValue(Repr::Finite(r)))
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self.0, Repr::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Finite(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Inf => None,
        }
    }

    /// The larger of two values.
    pub fn max_with(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// The smaller of two values.
    pub fn min_with(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl Default for ExtValue {
    fn default() -> Self {
        ExtValue::zero()
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (&self.0, &rhs.0) {
            (Repr::Finite(a), Repr::Finite(b)) => ExtValue(Repr::Finite(a + b)),
            _ => ExtValue::inf(),
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        &self + &rhs
    }
}

/// `u + v`; `inf` is absorbing.
pub fn ext_add(u: &ExtValue, v: &ExtValue) -> ExtValue {
    u + v
}

pub fn ext_min(u: &ExtValue, v: &ExtValue) -> ExtValue {
    u.min_with(v)
}

pub fn ext_leq(u: &ExtValue, v: &ExtValue) -> bool {
    u.cmp(v) != Ordering::Greater
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Inf => f.write_str("inf"),
            Repr::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

fn parse_natural(token: &str, whole: &str) -> Result<BigInt, ParseExtValueError> {
    if token.starts_with('-') {
        return Err(ParseExtValueError::Negative(whole.to_string()));
    }
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseExtValueError::Invalid(whole.to_string()));
    }
    BigInt::parse_bytes(token.as_bytes(), 10)
        .ok_or_else(|| ParseExtValueError::Invalid(whole.to_string()))
}

impl FromStr for ExtValue {
    type Err = ParseExtValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseExtValueError::Empty);
        }
        if s == "inf" {
            return Ok(ExtValue::inf());
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_natural(n, s)?, parse_natural(d, s)?),
            None => (parse_natural(s, s)?, BigInt::from(1)),
        };
        if den.sign() == Sign::NoSign {
            return Err(ParseExtValueError::ZeroDenominator(s.to_string()));
        }
        Ok(ExtValue(Repr::Finite(BigRational::new(num, den))))
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let token = String::deserialize(deserializer)?;
        token.parse().map_err(serde::de::Error::custom)
    }
}
