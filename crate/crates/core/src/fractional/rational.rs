//! Exact rationals serialized as `"p/q"` strings.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(x: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    /// The exact value of a finite float.
    pub fn from_f64(x: f64) -> Result<Rational> {
        BigRational::from_float(x)
            .map(Rational)
            .ok_or_else(|| Error::InvalidParameter(format!("non-finite value {x}")))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl Deref for Rational {
    type Target = BigRational;

    fn deref(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(x: BigRational) -> Rational {
        Rational(x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::InvalidParameter(format!("bad rational `{s}`"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(Rational::from_integer(3).to_string(), "3/1");
        assert_eq!(Rational::new(14, 4).to_string(), "7/2");
        assert_eq!(Rational::new(1, -2).to_string(), "-1/2");
        assert_eq!("7/2".parse::<Rational>().unwrap(), Rational::new(7, 2));
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::from_integer(5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let r = Rational::new(5, 2);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"5/2\"");
        assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), r);
        assert_eq!(Rational::from_f64(0.375).unwrap(), Rational::new(3, 8));
        assert_eq!(Rational::new(7, 2).to_f64(), 3.5);
    }
}
