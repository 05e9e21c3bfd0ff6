//! Exact arithmetic on the extended real line.
//!
//! Finite values are arbitrary-precision rationals kept in reduced form, so
//! every identity checked elsewhere in the crate is an exact equality. Addition
//! is partial: `+inf + -inf` is not defined and surfaces as
//! [`Error::IllPosed`](crate::Error::IllPosed) instead of a NaN-like value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of ℝ ∪ {−∞, +∞}.
///
/// Variant order matches the order of the extended line, so the derived
/// `Ord` is the usual total order (`BigRational` compares by value).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtReal {
    MinusInf,
    Finite(BigRational),
    PlusInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtReal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        ExtReal::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(q) if q.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            ExtReal::MinusInf => false,
            ExtReal::Finite(q) => !q.is_negative(),
            ExtReal::PlusInf => true,
        }
    }

    pub fn is_nonpositive(&self) -> bool {
        match self {
            ExtReal::MinusInf => true,
            ExtReal::Finite(q) => !q.is_positive(),
            ExtReal::PlusInf => false,
        }
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Well-posed addition.
    pub fn add(&self, other: &ExtReal) -> Result<ExtReal> {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
            (PlusInf, MinusInf) | (MinusInf, PlusInf) => Err(Error::IllPosed),
            (PlusInf, _) | (_, PlusInf) => Ok(PlusInf),
            (MinusInf, _) | (_, MinusInf) => Ok(MinusInf),
        }
    }

    /// `self - other`, defined unless both sides are the same infinity.
    pub fn sub(&self, other: &ExtReal) -> Result<ExtReal> {
        self.add(&-other)
    }

    /// Sum of a finite sequence; ill-posed exactly when both infinities occur.
    pub fn sum<'a, I>(xs: I) -> Result<ExtReal>
    where
        I: IntoIterator<Item = &'a ExtReal>,
    {
        let mut finite = BigRational::zero();
        let mut plus = false;
        let mut minus = false;
        for x in xs {
            match x {
                ExtReal::Finite(q) => finite += q,
                ExtReal::PlusInf => plus = true,
                ExtReal::MinusInf => minus = true,
            }
        }
        match (plus, minus) {
            (true, true) => Err(Error::IllPosed),
            (true, false) => Ok(ExtReal::PlusInf),
            (false, true) => Ok(ExtReal::MinusInf),
            (false, false) => Ok(ExtReal::Finite(finite)),
        }
    }

    /// Product with a rational scalar under the integration convention
    /// `(±∞)·0 = 0`.
    pub fn scale(&self, factor: &BigRational) -> ExtReal {
        match self {
            ExtReal::Finite(q) => ExtReal::Finite(q * factor),
            _ if factor.is_zero() => ExtReal::zero(),
            inf if factor.is_positive() => inf.clone(),
            inf => -inf,
        }
    }

    /// Division by a strictly positive rational; infinities keep their sign.
    pub fn div_positive(&self, divisor: &BigRational) -> Result<ExtReal> {
        if !divisor.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "divisor must be positive, got {divisor}"
            )));
        }
        Ok(match self {
            ExtReal::Finite(q) => ExtReal::Finite(q / divisor),
            inf => inf.clone(),
        })
    }

    /// Positive part `max(x, 0)`.
    pub fn positive_part(&self) -> ExtReal {
        std::cmp::max(self.clone(), ExtReal::zero())
    }

    /// Negative part `max(-x, 0)`.
    pub fn negative_part(&self) -> ExtReal {
        std::cmp::max(-self, ExtReal::zero())
    }
}

impl Default for ExtReal {
    fn default() -> Self {
        ExtReal::zero()
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        -&self
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            ExtReal::MinusInf => ExtReal::PlusInf,
            ExtReal::Finite(q) => ExtReal::Finite(-q),
            ExtReal::PlusInf => ExtReal::MinusInf,
        }
    }
}

impl From<BigRational> for ExtReal {
    fn from(q: BigRational) -> Self {
        ExtReal::Finite(q)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::from_int(n)
    }
}

impl PartialEq<BigRational> for ExtReal {
    fn eq(&self, other: &BigRational) -> bool {
        self.as_finite() == Some(other)
    }
}

impl PartialOrd<BigRational> for ExtReal {
    fn partial_cmp(&self, other: &BigRational) -> Option<Ordering> {
        Some(match self {
            ExtReal::MinusInf => Ordering::Less,
            ExtReal::Finite(q) => q.cmp(other),
            ExtReal::PlusInf => Ordering::Greater,
        })
    }
}

/// Canonical rational text: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"` or `"p/q"` (sign on the numerator only). Non-reduced input is
/// accepted and reduced.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) if d.starts_with(['+', '-']) => return Err(bad()),
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::MinusInf => f.write_str("-inf"),
            ExtReal::Finite(q) => f.write_str(&format_rational(q)),
            ExtReal::PlusInf => f.write_str("+inf"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+inf" | "inf" => Ok(ExtReal::PlusInf),
            "-inf" => Ok(ExtReal::MinusInf),
            other => parse_rational(other).map(ExtReal::Finite),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
