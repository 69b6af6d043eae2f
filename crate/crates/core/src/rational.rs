//! Arbitrary-precision rationals in canonical form.
//!
//! `Rational` wraps [`num_rational::BigRational`] and guarantees the reduced
//! representation (gcd of numerator and denominator is 1, denominator
//! positive, zero is `0/1`). The text form is `"p/q"`, shortened to `"p"`
//! for integers, and that form is also the JSON encoding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        Self::from_bigints(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Parses `"p"` or `"p/q"` with optional signs on either part.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = s.split('/');
        let numer = parts.next().ok_or_else(|| bad(s))?;
        let numer = BigInt::from_str(numer).map_err(|_| bad(s))?;
        let denom = match parts.next() {
            None => BigInt::one(),
            Some(d) => BigInt::from_str(d).map_err(|_| bad(s))?,
        };
        if parts.next().is_some() {
            return Err(bad(s));
        }
        Self::from_bigints(numer, denom)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(self.0.pow(exp as i32))
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("invalid rational {s:?}"))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }

        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;

    /// Panics on a zero divisor; use [`Rational::recip`] where zero is possible.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}

impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;

        impl de::Visitor<'_> for V {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Rational, E> {
                Rational::parse(s).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational::from_bigint(BigInt::from(v)))
            }
        }

        deserializer.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn canonical_form() {
        let half = r("2/4");
        assert_eq!(half.numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));
        let neg = r("3/-6");
        assert_eq!(neg.to_string(), "-1/2");
        assert_eq!(r("-0").to_string(), "0");
        assert_eq!(r("0/5"), Rational::zero());
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "/", "1/", "/2", "1/0", "a", "1.5", "1/2/3", "1 /2"] {
            assert!(Rational::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "7", "-3", "1/2", "-22/7"] {
            assert_eq!(r(s).to_string(), s);
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&r("1/2") + &r("1/3"), r("5/6"));
        assert_eq!(&r("1/2") * &r("2/3"), r("1/3"));
        assert_eq!(&r("1/2") - &r("1/2"), Rational::zero());
        assert_eq!(&r("3") / &r("-6"), r("-1/2"));
        assert_eq!(r("2/3").recip().unwrap(), r("3/2"));
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn json_encoding() {
        let v = r("-22/7");
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"-22/7\"");
        let back: Rational = serde_json::from_str("\"-22/7\"").unwrap();
        assert_eq!(back, v);
        let from_int: Rational = serde_json::from_str("5").unwrap();
        assert_eq!(from_int, r("5"));
        assert!(serde_json::from_str::<Rational>("1.5").is_err());
    }
}
