//! Points and lines of the rational projective plane.
//!
//! Affine points carry rational coordinates. Projective points and planar
//! lines are stored as integer triples in canonical form: coordinates are
//! coprime and the first nonzero coordinate is positive, so equal objects
//! have equal representations and can be hashed or ordered directly.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::{Error, Result};

/// An affine point with rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Reduces a triple to canonical form. Errors on `(0,0,0)`.
fn canonical(mut a: BigInt, mut b: BigInt, mut c: BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::ZeroTriple);
    }
    let g = a.gcd(&b).gcd(&c);
    a /= &g;
    b /= &g;
    c /= &g;
    let lead_negative = if !a.is_zero() {
        a.is_negative()
    } else if !b.is_zero() {
        b.is_negative()
    } else {
        c.is_negative()
    };
    if lead_negative {
        a = -a;
        b = -b;
        c = -c;
    }
    Ok((a, b, c))
}

/// Clears denominators of a rational triple and canonicalizes.
fn canonical_rational(a: &Rational, b: &Rational, c: &Rational) -> Result<(BigInt, BigInt, BigInt)> {
    let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
    let scale = |r: &Rational| r.numer() * (&lcm / r.denom());
    canonical(scale(a), scale(b), scale(c))
}

/// A point of the projective plane, `[x : y : z]` in canonical integer form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjPoint {
    x: BigInt,
    y: BigInt,
    z: BigInt,
}

impl ProjPoint {
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        let (x, y, z) = canonical(x, y, z)?;
        Ok(ProjPoint { x, y, z })
    }

    pub fn from_rationals(x: &Rational, y: &Rational, z: &Rational) -> Result<Self> {
        let (x, y, z) = canonical_rational(x, y, z)?;
        Ok(ProjPoint { x, y, z })
    }

    pub fn from_affine(p: &Point) -> Self {
        Self::from_rationals(&p.x, &p.y, &Rational::one())
            .expect("affine point has nonzero homogeneous coordinate")
    }

    pub fn coords(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.x, &self.y, &self.z)
    }

    pub fn is_at_infinity(&self) -> bool {
        self.z.is_zero()
    }

    /// The affine preimage, if the point is not at infinity.
    pub fn to_affine(&self) -> Option<Point> {
        if self.is_at_infinity() {
            return None;
        }
        let x = Rational::from_bigints(self.x.clone(), self.z.clone()).expect("nonzero z");
        let y = Rational::from_bigints(self.y.clone(), self.z.clone()).expect("nonzero z");
        Some(Point::new(x, y))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.x, self.y, self.z)
    }
}

/// A line `ax + by + cz = 0` of the projective plane in canonical integer
/// form. `(0, 0, 1)` is the line at infinity; every other line restricts to
/// the affine line `ax + by + c = 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PlanarLine {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl PlanarLine {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        let (a, b, c) = canonical(a, b, c)?;
        Ok(PlanarLine { a, b, c })
    }

    pub fn from_rationals(a: &Rational, b: &Rational, c: &Rational) -> Result<Self> {
        let (a, b, c) = canonical_rational(a, b, c)?;
        Ok(PlanarLine { a, b, c })
    }

    /// The unique line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Result<Self> {
        if p == q {
            return Err(Error::EqualPoints);
        }
        let a = &p.y - &q.y;
        let b = &q.x - &p.x;
        let c = &p.x * &q.y - &q.x * &p.y;
        Self::from_rationals(&a, &b, &c)
    }

    pub fn at_infinity() -> Self {
        PlanarLine {
            a: BigInt::zero(),
            b: BigInt::zero(),
            c: BigInt::from(1),
        }
    }

    pub fn coeffs(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_at_infinity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        !self.is_at_infinity() && self.b.is_zero()
    }

    pub fn is_horizontal(&self) -> bool {
        !self.is_at_infinity() && self.a.is_zero()
    }

    pub fn contains(&self, p: &Point) -> bool {
        // a*x + b*y + c == 0, cleared to integers over the common denominator.
        let (xn, xd) = (p.x.numer(), p.x.denom());
        let (yn, yd) = (p.y.numer(), p.y.denom());
        (&self.a * xn * yd + &self.b * yn * xd + &self.c * xd * yd).is_zero()
    }

    pub fn contains_proj(&self, p: &ProjPoint) -> bool {
        let (x, y, z) = p.coords();
        (&self.a * x + &self.b * y + &self.c * z).is_zero()
    }

    /// Slope of the affine restriction; `None` for vertical lines and the
    /// line at infinity.
    pub fn slope(&self) -> Option<Rational> {
        if self.b.is_zero() {
            return None;
        }
        Some(Rational::from_bigints(-self.a.clone(), self.b.clone()).expect("nonzero b"))
    }

    /// Intersection with the y-axis; `None` for horizontal lines and the
    /// line at infinity (neither meets `x = 0` in a single affine point).
    pub fn y_intercept(&self) -> Option<Rational> {
        if self.b.is_zero() {
            return None;
        }
        Some(Rational::from_bigints(-self.c.clone(), self.b.clone()).expect("nonzero b"))
    }

    pub fn x_intercept(&self) -> Option<Rational> {
        if self.a.is_zero() {
            return None;
        }
        Some(Rational::from_bigints(-self.c.clone(), self.a.clone()).expect("nonzero a"))
    }

    /// The point at infinity lying on this line.
    pub fn direction(&self) -> Result<Direction> {
        if self.is_at_infinity() {
            return Err(Error::Parameter(
                "the line at infinity has no single direction".into(),
            ));
        }
        let p = ProjPoint::new(self.b.clone(), -self.a.clone(), BigInt::zero())?;
        Ok(Direction(p))
    }
}

impl fmt::Display for PlanarLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {}z = 0", self.a, self.b, self.c)
    }
}

/// Intersection point of two distinct lines (possibly at infinity).
pub fn intersect(l1: &PlanarLine, l2: &PlanarLine) -> Result<ProjPoint> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    let (a1, b1, c1) = l1.coeffs();
    let (a2, b2, c2) = l2.coeffs();
    ProjPoint::new(b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
}

/// Whether three points lie on a common line. Triples with repeated points
/// are collinear by convention.
pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    // Determinant of the homogeneous coordinate matrix.
    let d = &(&(&q.x - &p.x) * &(&r.y - &p.y)) - &(&(&r.x - &p.x) * &(&q.y - &p.y));
    d.is_zero()
}

pub fn collinear_proj(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    let (x1, y1, z1) = p.coords();
    let (x2, y2, z2) = q.coords();
    let (x3, y3, z3) = r.coords();
    let det = x1 * (y2 * z3 - z2 * y3) - y1 * (x2 * z3 - z2 * x3) + z1 * (x2 * y3 - y2 * x3);
    det.is_zero()
}

/// A direction in the plane: a projective point on the line at infinity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Direction(ProjPoint);

impl Direction {
    pub fn from_slope(slope: Option<&Rational>) -> Self {
        let p = match slope {
            Some(m) => ProjPoint::new(m.denom().clone(), m.numer().clone(), BigInt::zero()),
            None => ProjPoint::new(BigInt::zero(), BigInt::from(1), BigInt::zero()),
        };
        Direction(p.expect("direction triple is nonzero"))
    }

    pub fn as_proj(&self) -> &ProjPoint {
        &self.0
    }

    /// Slope of lines with this direction; `None` means vertical.
    pub fn slope(&self) -> Option<Rational> {
        let (x, y, _) = self.0.coords();
        if x.is_zero() {
            None
        } else {
            Some(Rational::from_bigints(y.clone(), x.clone()).expect("nonzero x"))
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slope() {
            Some(m) => write!(f, "slope {m}"),
            None => write!(f, "vertical"),
        }
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ProjPoint", 3)?;
        st.serialize_field("x", &self.x.to_string())?;
        st.serialize_field("y", &self.y.to_string())?;
        st.serialize_field("z", &self.z.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTriple::deserialize(d)?;
        ProjPoint::new(raw.x.into_bigint()?, raw.y.into_bigint()?, raw.z.into_bigint()?)
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for PlanarLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PlanarLine", 3)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("c", &self.c.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PlanarLine {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: IntOrString,
            b: IntOrString,
            c: IntOrString,
        }
        let raw = Raw::deserialize(d)?;
        PlanarLine::new(raw.a.into_bigint()?, raw.b.into_bigint()?, raw.c.into_bigint()?)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
struct RawTriple {
    x: IntOrString,
    y: IntOrString,
    z: IntOrString,
}

/// Big integers travel as decimal strings in JSON; small ones may be plain
/// JSON integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn into_bigint<E: serde::de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            IntOrString::Int(v) => Ok(BigInt::from(v)),
            IntOrString::Str(s) => s
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("invalid integer {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    fn pt(x: &str, y: &str) -> Point {
        Point::new(r(x), r(y))
    }

    fn line(a: i64, b: i64, c: i64) -> PlanarLine {
        PlanarLine::new(a.into(), b.into(), c.into()).unwrap()
    }

    #[test]
    fn canonical_reduction() {
        assert_eq!(line(2, -2, 4), line(1, -1, 2));
        assert_eq!(line(-1, 1, 0), line(1, -1, 0));
        assert_eq!(line(0, -3, 6), line(0, 1, -2));
        assert!(PlanarLine::new(0.into(), 0.into(), 0.into()).is_err());
    }

    #[test]
    fn through_examples() {
        assert_eq!(
            PlanarLine::through(&pt("0", "0"), &pt("1", "1")).unwrap(),
            line(1, -1, 0)
        );
        assert_eq!(
            PlanarLine::through(&pt("0", "0"), &pt("0", "1")).unwrap(),
            line(1, 0, 0)
        );
        assert_eq!(
            PlanarLine::through(&pt("1", "2"), &pt("3", "2")).unwrap(),
            line(0, 1, -2)
        );
        assert!(PlanarLine::through(&pt("1", "2"), &pt("1", "2")).is_err());
    }

    #[test]
    fn intersection_examples() {
        let p = intersect(&line(1, 0, 0), &line(0, 1, 0)).unwrap();
        assert_eq!(p, ProjPoint::new(0.into(), 0.into(), 1.into()).unwrap());

        // Parallel lines meet at infinity.
        let q = intersect(&line(1, -1, 0), &line(1, -1, 1)).unwrap();
        assert_eq!(q, ProjPoint::new(1.into(), 1.into(), 0.into()).unwrap());
        assert!(q.is_at_infinity());

        let s = intersect(&line(2, -1, 0), &line(1, -1, 1)).unwrap();
        assert_eq!(s.to_affine().unwrap(), pt("1", "2"));

        assert!(intersect(&line(1, -1, 0), &line(2, -2, 0)).is_err());
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear(&pt("0", "0"), &pt("1", "1"), &pt("2", "2")));
        assert!(!collinear(&pt("0", "0"), &pt("1", "1"), &pt("2", "3")));
        // Repeated points count as collinear.
        assert!(collinear(&pt("0", "0"), &pt("0", "0"), &pt("2", "3")));
    }

    #[test]
    fn directions_and_intercepts() {
        let l = line(2, -1, 4); // y = 2x + 4
        assert_eq!(l.slope().unwrap(), r("2"));
        assert_eq!(l.y_intercept().unwrap(), r("4"));
        assert_eq!(l.x_intercept().unwrap(), r("-2"));
        assert_eq!(l.direction().unwrap(), Direction::from_slope(Some(&r("2"))));

        let v = line(1, 0, -3); // x = 3
        assert!(v.is_vertical());
        assert_eq!(v.slope(), None);
        assert_eq!(v.direction().unwrap(), Direction::from_slope(None));

        assert!(PlanarLine::at_infinity().direction().is_err());
    }

    #[test]
    fn containment() {
        let l = line(1, -1, 0);
        assert!(l.contains(&pt("1/2", "1/2")));
        assert!(!l.contains(&pt("1/2", "1/3")));
        assert!(l.contains_proj(&ProjPoint::new(1.into(), 1.into(), 0.into()).unwrap()));
        assert!(PlanarLine::at_infinity()
            .contains_proj(&ProjPoint::new(3.into(), (-2).into(), 0.into()).unwrap()));
    }

    #[test]
    fn proj_point_scaling_invariance() {
        let p = ProjPoint::new(2.into(), (-4).into(), 6.into()).unwrap();
        let q = ProjPoint::new((-1).into(), 2.into(), (-3).into()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_affine().unwrap(), pt("1/3", "-2/3"));
    }

    #[test]
    fn json_roundtrip() {
        let l = line(1, -2, 3);
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"a":"1","b":"-2","c":"3"}"#);
        let back: PlanarLine = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
        let from_ints: PlanarLine = serde_json::from_str(r#"{"a":2,"b":-4,"c":6}"#).unwrap();
        assert_eq!(from_ints, l);
    }
}
