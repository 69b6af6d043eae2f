//! Projective transformations of the plane and the two explicit maps used to
//! move a fixed line to the line at infinity.
//!
//! Points transform by the matrix, lines by the inverse transpose, so
//! incidence is preserved exactly. Both results are canonicalized, which
//! makes images directly comparable with `==`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::geometry::{Point, PlanarLine, ProjPoint};
use crate::incidence::PointSet;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ProjTransform {
    m: [[Rational; 3]; 3],
}

impl ProjTransform {
    pub fn new(m: [[Rational; 3]; 3]) -> Result<Self> {
        let t = ProjTransform { m };
        if t.det().is_zero() {
            return Err(Error::SingularTransform);
        }
        Ok(t)
    }

    pub fn identity() -> Self {
        let row = |i: usize| {
            let mut r = [Rational::zero(), Rational::zero(), Rational::zero()];
            r[i] = Rational::one();
            r
        };
        ProjTransform {
            m: [row(0), row(1), row(2)],
        }
    }

    pub fn rows(&self) -> &[[Rational; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> Rational {
        let m = &self.m;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]
        };
        &m[0][0] * &minor(1, 2, 1, 2) - &m[0][1] * &minor(1, 2, 0, 2)
            + &m[0][2] * &minor(1, 2, 0, 1)
    }

    pub fn inverse(&self) -> ProjTransform {
        let m = &self.m;
        let det = self.det();
        let cof = |r1: usize, r2: usize, c1: usize, c2: usize| {
            (&m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]) / &det
        };
        // Adjugate over the determinant, written out per entry.
        let inv = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        ProjTransform { m: inv }
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        let (x, y, z) = p.coords();
        let coords = [
            Rational::from_bigint(x.clone()),
            Rational::from_bigint(y.clone()),
            Rational::from_bigint(z.clone()),
        ];
        let row = |i: usize| {
            &self.m[i][0] * &coords[0] + &self.m[i][1] * &coords[1] + &self.m[i][2] * &coords[2]
        };
        ProjPoint::from_rationals(&row(0), &row(1), &row(2))
            .expect("invertible map sends nonzero triples to nonzero triples")
    }

    pub fn apply_affine(&self, p: &Point) -> ProjPoint {
        self.apply_point(&ProjPoint::from_affine(p))
    }

    pub fn apply_line(&self, l: &PlanarLine) -> PlanarLine {
        let inv = self.inverse();
        let (a, b, c) = l.coeffs();
        let coeffs = [
            Rational::from_bigint(a.clone()),
            Rational::from_bigint(b.clone()),
            Rational::from_bigint(c.clone()),
        ];
        let col = |i: usize| {
            &inv.m[0][i] * &coeffs[0] + &inv.m[1][i] * &coeffs[1] + &inv.m[2][i] * &coeffs[2]
        };
        PlanarLine::from_rationals(&col(0), &col(1), &col(2))
            .expect("invertible map sends nonzero triples to nonzero triples")
    }
}

impl fmt::Debug for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]",
            self.m[0][0], self.m[0][1], self.m[0][2],
            self.m[1][0], self.m[1][1], self.m[1][2],
            self.m[2][0], self.m[2][1], self.m[2][2],
        )
    }
}

impl Serialize for ProjTransform {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjTransform {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = <[[Rational; 3]; 3]>::deserialize(deserializer)?;
        ProjTransform::new(m).map_err(D::Error::custom)
    }
}

/// The map sending the horizontal line `y = alpha` to the line at infinity
/// and the line `y = beta*x + gamma` to the y-axis, while fixing the
/// horizontal direction.
pub fn pi_thm5(alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<ProjTransform> {
    if beta.is_zero() {
        return Err(Error::Parameter(
            "the second target line must have nonzero slope".into(),
        ));
    }
    let inv_beta = beta.recip().expect("checked nonzero");
    ProjTransform::new([
        [Rational::one(), -&inv_beta, gamma * &inv_beta],
        [Rational::zero(), Rational::zero(), Rational::one()],
        [Rational::zero(), inv_beta.clone(), -&(alpha * &inv_beta)],
    ])
}

/// The map sending the line `y = lambda*x + mu` (`lambda != 0`) to the line
/// at infinity and the line at infinity to the y-axis.
pub fn pi_thm6(lambda: &Rational, mu: &Rational) -> Result<ProjTransform> {
    if lambda.is_zero() {
        return Err(Error::Parameter("the target line must have nonzero slope".into()));
    }
    ProjTransform::new([
        [Rational::zero(), Rational::zero(), Rational::one()],
        [Rational::one(), Rational::zero(), Rational::zero()],
        [-lambda, Rational::one(), -mu],
    ])
}

/// Image of the grid `A x B` under `pi_thm5`, in closed form:
/// `((a*beta + gamma - alpha)/(b - alpha) - 1, beta/(b - alpha))`.
/// Requires `alpha` outside `B` so every image point stays affine.
pub fn grid_image_thm5(
    a: &std::collections::BTreeSet<Rational>,
    b: &std::collections::BTreeSet<Rational>,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
) -> Result<PointSet> {
    if beta.is_zero() {
        return Err(Error::Parameter(
            "the second target line must have nonzero slope".into(),
        ));
    }
    if b.contains(alpha) {
        return Err(Error::Parameter(
            "alpha must avoid B: the row y = alpha maps to the line at infinity".into(),
        ));
    }
    let mut points = Vec::with_capacity(a.len() * b.len());
    for bv in b {
        let denom = bv - alpha;
        let y = beta / &denom;
        for av in a {
            let x = &(&(av * beta) + gamma - alpha) / &denom - Rational::one();
            points.push(Point::new(x, y.clone()));
        }
    }
    Ok(PointSet::from_points(points))
}

/// Intersection points of the pencil `y = ax` through the origin with the
/// pencil `y = bx + alpha` through `(0, alpha)`:
/// `(alpha/(a - b), alpha*a/(a - b))` over pairs with `a != b`.
pub fn pencil_image_thm6(
    a: &std::collections::BTreeSet<Rational>,
    b: &std::collections::BTreeSet<Rational>,
    alpha: &Rational,
) -> Result<PointSet> {
    if alpha.is_zero() {
        return Err(Error::Parameter("pencil centres must be distinct".into()));
    }
    let mut points = Vec::new();
    for av in a {
        for bv in b {
            if av == bv {
                continue;
            }
            let denom = av - bv;
            points.push(Point::new(alpha / &denom, &(alpha * av) / &denom));
        }
    }
    Ok(PointSet::from_points(points))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use num_bigint::BigInt;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn rs(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    fn pp(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::new(BigInt::from(x), BigInt::from(y), BigInt::from(z)).unwrap()
    }

    fn set(vals: &[i64]) -> BTreeSet<Rational> {
        vals.iter().map(|&v| Rational::from_int(v)).collect()
    }

    #[test]
    fn identity_fixes_everything() {
        let t = ProjTransform::identity();
        let p = pp(3, -1, 2);
        assert_eq!(t.apply_point(&p), p);
        let l = PlanarLine::new(2.into(), (-3).into(), 5.into()).unwrap();
        assert_eq!(t.apply_line(&l), l);
    }

    #[test]
    fn scaling_gives_same_canonical_images() {
        let double = ProjTransform::new([
            [r(2), r(0), r(0)],
            [r(0), r(2), r(0)],
            [r(0), r(0), r(2)],
        ])
        .unwrap();
        let p = pp(1, 4, -2);
        assert_eq!(double.apply_point(&p), p);
    }

    #[test]
    fn rejects_singular_matrix() {
        let res = ProjTransform::new([
            [r(1), r(2), r(3)],
            [r(2), r(4), r(6)],
            [r(0), r(1), r(1)],
        ]);
        assert!(matches!(res, Err(Error::SingularTransform)));
    }

    #[test]
    fn inverse_roundtrip() {
        let t = ProjTransform::new([
            [r(1), r(2), r(0)],
            [r(0), r(1), r(-3)],
            [r(5), r(0), r(1)],
        ])
        .unwrap();
        let inv = t.inverse();
        for p in [pp(1, 0, 0), pp(2, -7, 3), pp(0, 1, 5)] {
            assert_eq!(inv.apply_point(&t.apply_point(&p)), p);
        }
    }

    #[test]
    fn incidence_preserved() {
        let t = ProjTransform::new([
            [r(2), r(1), r(1)],
            [r(0), r(1), r(4)],
            [r(1), r(0), r(1)],
        ])
        .unwrap();
        let l = PlanarLine::new(1.into(), (-1).into(), 1.into()).unwrap();
        let on = pp(1, 2, 1);
        let off = pp(1, 3, 1);
        assert!(l.contains_proj(&on) && !l.contains_proj(&off));
        let tl = t.apply_line(&l);
        assert!(tl.contains_proj(&t.apply_point(&on)));
        assert!(!tl.contains_proj(&t.apply_point(&off)));
    }

    #[test]
    fn thm5_defining_points() {
        let (alpha, beta, gamma) = (rs("2"), rs("3/2"), rs("-1"));
        let t = pi_thm5(&alpha, &beta, &gamma).unwrap();
        assert_eq!(t.apply_point(&pp(1, 0, 0)), pp(1, 0, 0));
        // Meeting point of y = alpha and y = beta*x + gamma: x = (alpha-gamma)/beta.
        let meet = ProjPoint::from_rationals(&(&(&alpha - &gamma) / &beta), &alpha, &Rational::one())
            .unwrap();
        assert_eq!(t.apply_point(&meet), pp(0, 1, 0));
        let slope_dir = ProjPoint::from_rationals(&Rational::one(), &beta, &Rational::zero()).unwrap();
        assert_eq!(t.apply_point(&slope_dir), pp(0, 0, 1));
        assert!(pi_thm5(&alpha, &Rational::zero(), &gamma).is_err());
    }

    #[test]
    fn thm5_sends_horizontal_rows_to_horizontal_rows() {
        let (alpha, beta, gamma) = (rs("1"), rs("2"), rs("5"));
        let t = pi_thm5(&alpha, &beta, &gamma).unwrap();
        // y = 3 should land on y = beta/(3 - alpha) = 1.
        let row = PlanarLine::from_rationals(&Rational::zero(), &Rational::one(), &rs("-3")).unwrap();
        let expect = PlanarLine::from_rationals(&Rational::zero(), &Rational::one(), &rs("-1")).unwrap();
        assert_eq!(t.apply_line(&row), expect);
        // The excluded row y = alpha goes to the line at infinity.
        let bad = PlanarLine::from_rationals(&Rational::zero(), &Rational::one(), &-&alpha).unwrap();
        assert!(t.apply_line(&bad).is_at_infinity());
    }

    #[test]
    fn thm6_defining_points() {
        let (lambda, mu) = (rs("2"), rs("5"));
        let t = pi_thm6(&lambda, &mu).unwrap();
        assert_eq!(t.det(), Rational::one());
        assert_eq!(t.apply_point(&pp(1, 2, 0)), pp(0, 1, 0));
        assert_eq!(t.apply_point(&pp(0, 5, 1)), pp(1, 0, 0));
        assert_eq!(t.apply_point(&pp(0, 1, 0)), pp(0, 0, 1));
        assert!(pi_thm6(&Rational::zero(), &mu).is_err());
    }

    #[test]
    fn grid_image_matches_direct_application() {
        let (alpha, beta, gamma) = (rs("3"), rs("2"), rs("-1"));
        let a = set(&[0, 1, 5]);
        let b = set(&[1, 2]);
        let image = grid_image_thm5(&a, &b, &alpha, &beta, &gamma).unwrap();
        assert_eq!(image.len(), a.len() * b.len());

        let t = pi_thm5(&alpha, &beta, &gamma).unwrap();
        let mut direct = Vec::new();
        for av in &a {
            for bv in &b {
                let p = t.apply_affine(&Point::new(av.clone(), bv.clone()));
                direct.push(p.to_affine().expect("alpha avoids B"));
            }
        }
        assert_eq!(PointSet::from_points(direct), image);

        assert!(grid_image_thm5(&a, &set(&[1, 3]), &alpha, &beta, &gamma).is_err());
    }

    #[test]
    fn pencil_image_examples() {
        let image = pencil_image_thm6(&set(&[2]), &set(&[1]), &Rational::one()).unwrap();
        assert_eq!(image.points(), &[Point::new(r(1), r(2))]);

        // Shared parameter values are skipped, everything else is affine.
        let image = pencil_image_thm6(&set(&[1, 2]), &set(&[2, 4]), &rs("2")).unwrap();
        assert_eq!(image.len(), 3);
        assert!(pencil_image_thm6(&set(&[1]), &set(&[2]), &Rational::zero()).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let t = pi_thm6(&rs("2"), &rs("5")).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: ProjTransform = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<ProjTransform>(
            "[[\"1\",\"0\",\"0\"],[\"0\",\"1\",\"0\"],[\"1\",\"1\",\"0\"]]"
        )
        .is_err());
    }
}
