//! Non-vertical, non-horizontal lines as elements of the affine group.
//!
//! The line `y = mx + c` with `m != 0` is identified with the map
//! `x -> mx + c`. Composition `(a, b) * (c, d) = (ac, ad + b)` applies the
//! right factor first; the identity is `(1, 0)` and `(m, c)` inverts to
//! `(1/m, -c/m)`.

use std::fmt;

use serde::{de, Deserialize, Serialize};

use crate::geometry::PlanarLine;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct AffLine {
    m: Rational,
    c: Rational,
}

impl AffLine {
    pub fn new(m: Rational, c: Rational) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroSlope);
        }
        Ok(AffLine { m, c })
    }

    pub fn identity() -> Self {
        AffLine {
            m: Rational::one(),
            c: Rational::zero(),
        }
    }

    pub fn slope(&self) -> &Rational {
        &self.m
    }

    pub fn intercept(&self) -> &Rational {
        &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_one() && self.c.is_zero()
    }

    /// Group product; `self` is applied after `rhs`.
    pub fn compose(&self, rhs: &AffLine) -> AffLine {
        AffLine {
            m: &self.m * &rhs.m,
            c: &(&self.m * &rhs.c) + &self.c,
        }
    }

    pub fn inverse(&self) -> AffLine {
        let m = self.m.recip().expect("slope is nonzero");
        let c = -&(&self.c * &m);
        AffLine { m, c }
    }

    /// `self.inverse() * rhs`, the quotient underlying the energy counts.
    pub fn quotient(&self, rhs: &AffLine) -> AffLine {
        self.inverse().compose(rhs)
    }

    /// The same line as a projective object `mx - y + c = 0`.
    pub fn to_planar(&self) -> PlanarLine {
        PlanarLine::from_rationals(&self.m, &-&Rational::one(), &self.c)
            .expect("slope coefficient is nonzero")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &(&self.m * x) + &self.c
    }
}

impl fmt::Display for AffLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y = {}x + {}", self.m, self.c)
    }
}

impl<'de> Deserialize<'de> for AffLine {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: Rational,
            c: Rational,
        }
        let raw = Raw::deserialize(d)?;
        AffLine::new(raw.m, raw.c).map_err(de::Error::custom)
    }
}
