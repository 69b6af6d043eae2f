//! Incidences between point sets and line sets.
//!
//! The central object is the line profile of a point set `P`: the map from
//! each line spanned by `P` to the number of points of `P` on it. It is
//! built from the `C(|P|, 2)` point pairs; the multiplicity `k` of a line is
//! recovered from its `k(k-1)/2` pairs. Point sets whose coordinates are
//! small integers take a fast path that works in machine words, everything
//! else falls back to exact big-integer lines; both produce identical
//! canonical lines.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;

use crate::geometry::{Direction, PlanarLine, Point, ProjPoint};
use crate::rational::Rational;
use crate::{Error, Result};

/// A finite set of affine points, optionally remembered as a Cartesian grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    points: Vec<Point>,
    grid: Option<(Vec<Rational>, Vec<Rational>)>,
}

impl PointSet {
    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Self {
        let set: BTreeSet<Point> = points.into_iter().collect();
        PointSet {
            points: set.into_iter().collect(),
            grid: None,
        }
    }

    /// The grid `A x B`, remembering the factors.
    pub fn from_grid(a: &BTreeSet<Rational>, b: &BTreeSet<Rational>) -> Self {
        let mut points = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                points.push(Point::new(x.clone(), y.clone()));
            }
        }
        points.sort();
        PointSet {
            points,
            grid: Some((a.iter().cloned().collect(), b.iter().cloned().collect())),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn grid(&self) -> Option<(&[Rational], &[Rational])> {
        self.grid.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Coordinates as machine integers, when they all fit comfortably.
    fn compact_coords(&self) -> Option<Vec<(i64, i64)>> {
        const LIMIT: i64 = 1 << 30;
        self.points
            .iter()
            .map(|p| {
                if !p.x.is_integer() || !p.y.is_integer() {
                    return None;
                }
                let x = p.x.numer().to_i64()?;
                let y = p.y.numer().to_i64()?;
                (x.abs() <= LIMIT && y.abs() <= LIMIT).then_some((x, y))
            })
            .collect()
    }
}

/// Spanned lines of a point set with their multiplicities (always >= 2).
#[derive(Clone, Debug)]
pub struct LineProfile {
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    Compact(HashMap<[i64; 3], u64>),
    Exact(HashMap<PlanarLine, u64>),
}

impl LineProfile {
    /// Number of distinct spanned lines.
    pub fn len(&self) -> usize {
        match &self.inner {
            Inner::Compact(m) => m.len(),
            Inner::Exact(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points of the underlying set on `line`; zero if the line is spanned
    /// by fewer than two of them.
    pub fn multiplicity(&self, line: &PlanarLine) -> u64 {
        match &self.inner {
            Inner::Compact(m) => compact_key(line).map_or(0, |k| m.get(&k).copied().unwrap_or(0)),
            Inner::Exact(m) => m.get(line).copied().unwrap_or(0),
        }
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = u64> + '_ {
        let (compact, exact) = match &self.inner {
            Inner::Compact(m) => (Some(m.values()), None),
            Inner::Exact(m) => (None, Some(m.values())),
        };
        compact
            .into_iter()
            .flatten()
            .chain(exact.into_iter().flatten())
            .copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (PlanarLine, u64)> + '_ {
        let (compact, exact) = match &self.inner {
            Inner::Compact(m) => (Some(m.iter()), None),
            Inner::Exact(m) => (None, Some(m.iter())),
        };
        compact
            .into_iter()
            .flatten()
            .map(|(k, v)| (line_from_compact(k), *v))
            .chain(
                exact
                    .into_iter()
                    .flatten()
                    .map(|(l, v)| (l.clone(), *v)),
            )
    }

    /// Deterministically ordered view for reports and tests.
    pub fn to_sorted(&self) -> BTreeMap<PlanarLine, u64> {
        self.entries().collect()
    }
}

fn compact_key(line: &PlanarLine) -> Option<[i64; 3]> {
    let (a, b, c) = line.coeffs();
    Some([a.to_i64()?, b.to_i64()?, c.to_i64()?])
}

fn line_from_compact(k: &[i64; 3]) -> PlanarLine {
    PlanarLine::new(k[0].into(), k[1].into(), k[2].into()).expect("profile keys are nonzero")
}

fn canonical_compact(mut a: i64, mut b: i64, mut c: i64) -> [i64; 3] {
    let g = a.unsigned_abs().gcd(&b.unsigned_abs()).gcd(&c.unsigned_abs()) as i64;
    a /= g;
    b /= g;
    c /= g;
    let lead = if a != 0 { a } else if b != 0 { b } else { c };
    if lead < 0 {
        a = -a;
        b = -b;
        c = -c;
    }
    [a, b, c]
}

/// Multiplicity from a pair count: the `k` with `k(k-1)/2` pairs.
fn points_from_pairs(pairs: u64) -> u64 {
    let k = (1 + ((1 + 8 * (pairs as u128)).sqrt() as u64)) / 2;
    debug_assert_eq!(k * (k - 1) / 2, pairs);
    k
}

/// The map from spanned lines to point multiplicities. Needs two points.
pub fn line_profile(set: &PointSet) -> Result<LineProfile> {
    if set.len() < 2 {
        return Err(Error::Parameter("line profile needs at least two points".into()));
    }

    let inner = match set.compact_coords() {
        Some(coords) => {
            let mut pairs: HashMap<[i64; 3], u64> = HashMap::new();
            for i in 0..coords.len() {
                let (x1, y1) = coords[i];
                for &(x2, y2) in &coords[i + 1..] {
                    let key = canonical_compact(y1 - y2, x2 - x1, x1 * y2 - x2 * y1);
                    *pairs.entry(key).or_default() += 1;
                }
            }
            for v in pairs.values_mut() {
                *v = points_from_pairs(*v);
            }
            Inner::Compact(pairs)
        }
        None => {
            let pts = set.points();
            let mut pairs: HashMap<PlanarLine, u64> = HashMap::new();
            for i in 0..pts.len() {
                for q in &pts[i + 1..] {
                    let line = PlanarLine::through(&pts[i], q).expect("points are distinct");
                    *pairs.entry(line).or_default() += 1;
                }
            }
            for v in pairs.values_mut() {
                *v = points_from_pairs(*v);
            }
            Inner::Exact(pairs)
        }
    };

    Ok(LineProfile { inner })
}

/// Lines carrying at least `k` points of the set, `k >= 2`.
pub fn rich_lines(set: &PointSet, k: u64) -> Result<BTreeSet<PlanarLine>> {
    if k < 2 {
        return Err(Error::Parameter("richness threshold must be at least 2".into()));
    }
    let profile = line_profile(set)?;
    Ok(profile
        .entries()
        .filter_map(|(line, mult)| (mult >= k).then_some(line))
        .collect())
}

/// Exact number of points of `set` on `line`.
pub fn count_on_line(set: &PointSet, line: &PlanarLine) -> u64 {
    set.iter().filter(|p| line.contains(p)).count() as u64
}

fn dedup_lines(lines: &[PlanarLine]) -> Vec<&PlanarLine> {
    let set: BTreeSet<&PlanarLine> = lines.iter().collect();
    set.into_iter().collect()
}

/// Total incidences between a point set and a set of lines, grouped by
/// x-coordinate columns so grids cost far fewer exact evaluations.
pub fn count_incidences(set: &PointSet, lines: &[PlanarLine]) -> BigUint {
    let mut columns: HashMap<&Rational, HashSet<&Rational>> = HashMap::new();
    for p in set.iter() {
        columns.entry(&p.x).or_default().insert(&p.y);
    }

    let mut total: u128 = 0;
    for line in dedup_lines(lines) {
        if line.is_at_infinity() {
            continue;
        }
        let (a, b, c) = line.coeffs();
        if line.is_vertical() {
            // x = -c/a
            let x = Rational::from_bigints(-c.clone(), a.clone()).expect("nonzero a");
            total += columns.get(&x).map_or(0, |ys| ys.len()) as u128;
        } else {
            let a = Rational::from_bigint(a.clone());
            let b = Rational::from_bigint(b.clone());
            let c = Rational::from_bigint(c.clone());
            for (x, ys) in &columns {
                let y = &(-&(&(&a * *x) + &c)) / &b;
                if ys.contains(&y) {
                    total += 1;
                }
            }
        }
    }
    BigUint::from(total)
}

/// The same count by direct point-in-line tests; the independent slow route.
pub fn count_incidences_naive(set: &PointSet, lines: &[PlanarLine]) -> BigUint {
    let mut total: u128 = 0;
    for line in dedup_lines(lines) {
        for p in set.iter() {
            if line.contains(p) {
                total += 1;
            }
        }
    }
    BigUint::from(total)
}

/// Fourth moment of the profile: the sum of `multiplicity^4` over spanned
/// lines, the quantity that controls rich-line counts.
pub fn fourth_moment(set: &PointSet) -> Result<BigUint> {
    if set.len() < 2 {
        return Ok(BigUint::from(0u32));
    }
    let profile = line_profile(set)?;
    let mut total: u128 = 0;
    for m in profile.multiplicities() {
        let m = m as u128;
        total += m * m * m * m;
    }
    Ok(BigUint::from(total))
}

/// Mixed fourth moment of two point sets: the sum over all lines meeting
/// either set in at least two points of `|l n P1|^2 * |l n P2|^2`.
pub fn mixed_moment(p1: &PointSet, p2: &PointSet) -> Result<BigUint> {
    if p1.points() == p2.points() {
        return fourth_moment(p1);
    }

    let entries = |p: &PointSet| -> Result<Vec<(PlanarLine, u64)>> {
        if p.len() < 2 {
            return Ok(Vec::new());
        }
        Ok(line_profile(p)?.entries().collect())
    };
    let prof1: HashMap<PlanarLine, u64> = entries(p1)?.into_iter().collect();
    let prof2: HashMap<PlanarLine, u64> = entries(p2)?.into_iter().collect();

    let mut support: BTreeSet<PlanarLine> = prof1.keys().cloned().collect();
    support.extend(prof2.keys().cloned());

    let mut total: u128 = 0;
    for line in &support {
        let m1 = match prof1.get(line) {
            None => count_on_line(p1, line),
            Some(&m) => m,
        } as u128;
        let m2 = match prof2.get(line) {
            None => count_on_line(p2, line),
            Some(&m) => m,
        } as u128;
        total += m1 * m1 * m2 * m2;
    }
    Ok(BigUint::from(total))
}

/// Directions spanned by the point set: slopes of its profile lines, as
/// points on the line at infinity.
pub fn directions(set: &PointSet) -> Result<BTreeSet<Direction>> {
    let profile = line_profile(set)?;
    Ok(profile
        .entries()
        .map(|(line, _)| line.direction().expect("spanned lines are affine"))
        .collect())
}

/// Intersection points of the spanned lines of `set` with a target line
/// that carries at most one point of `set`. With two or more points the
/// target is itself spanned and the trace would be the whole line, which is
/// reported as [`Error::InfiniteTrace`]. The target may be the line at
/// infinity, in which case the trace is the direction set.
pub fn trace_on_line(set: &PointSet, target: &PlanarLine) -> Result<BTreeSet<ProjPoint>> {
    let on_target = count_on_line(set, target);
    if on_target >= 2 {
        return Err(Error::InfiniteTrace(on_target as usize));
    }
    let profile = line_profile(set)?;
    let mut trace = BTreeSet::new();
    for (line, _) in profile.entries() {
        let p = crate::geometry::intersect(&line, target).expect("target is not spanned");
        trace.insert(p);
    }
    Ok(trace)
}
