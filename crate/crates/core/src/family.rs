//! Parametric families of affine-group lines.
//!
//! Each family kind maps parameter pairs `(c, d)` from two scalar sets to a
//! line. Pairs violating a side condition (equal parameters, zero slope,
//! zero denominator, a parameter that must be nonzero) are skipped and
//! recorded; pairs that reproduce an already-present line are recorded as
//! collisions, so the returned line set is always duplicate-free.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::AffLine;
use crate::geometry::Point;
use crate::incidence::{line_profile, PointSet};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `(c, d)`: slope from the first set, intercept from the second.
    GridCd,
    /// `(c, c*d)` with `c != 0`.
    GridCCd,
    /// `(lambda/(c-d), mu*c/(c-d))` with `c != d`; `lambda, mu != 0`.
    Thm2,
    /// `(d*(c-lambda) - mu, c)` with nonzero slope and `c != 0`.
    Thm3,
    /// `(c-d, c)` with `c != d` and `c != 0`.
    Diff,
    /// `(c, -c*d)` with `c != 0`: the pencil `y = c(x-d)`.
    Elekes,
    /// Every non-vertical, non-horizontal line through two or more points of
    /// a point set (the grid `C x D` unless explicit points are given).
    Spanned,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FamilyKind::GridCd => "grid_cd",
            FamilyKind::GridCCd => "grid_c_cd",
            FamilyKind::Thm2 => "thm2",
            FamilyKind::Thm3 => "thm3",
            FamilyKind::Diff => "diff",
            FamilyKind::Elekes => "elekes",
            FamilyKind::Spanned => "spanned",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default)]
    pub c: BTreeSet<Rational>,
    #[serde(default)]
    pub d: BTreeSet<Rational>,
    #[serde(default)]
    pub lambda: Option<Rational>,
    #[serde(default)]
    pub mu: Option<Rational>,
    /// Only consulted by [`FamilyKind::Spanned`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    EqualParameters,
    ZeroSlope,
    ZeroDenominator,
    ZeroParameter,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkippedPair {
    pub c: Rational,
    pub d: Rational,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Collision {
    pub c: Rational,
    pub d: Rational,
    pub line: AffLine,
}

/// What happened to each parameter pair during a build.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FamilyReport {
    pub requested: u64,
    pub admitted: u64,
    pub skipped: Vec<SkippedPair>,
    pub collisions: Vec<Collision>,
}

#[derive(Clone, Debug)]
pub struct FamilyBuild {
    pub lines: BTreeSet<AffLine>,
    pub report: FamilyReport,
}

enum Outcome {
    Line(AffLine),
    Skip(SkipReason),
}

fn line_for(kind: FamilyKind, c: &Rational, d: &Rational, lambda: &Rational, mu: &Rational) -> Outcome {
    use Outcome::{Line, Skip};
    use SkipReason::*;

    match kind {
        FamilyKind::GridCd => {
            if c.is_zero() {
                return Skip(ZeroSlope);
            }
            Line(AffLine::new(c.clone(), d.clone()).expect("nonzero slope"))
        }
        FamilyKind::GridCCd => {
            if c.is_zero() {
                return Skip(ZeroSlope);
            }
            Line(AffLine::new(c.clone(), c * d).expect("nonzero slope"))
        }
        FamilyKind::Thm2 => {
            if c == d {
                return Skip(ZeroDenominator);
            }
            let gap = c - d;
            let m = lambda / &gap;
            let b = &(mu * c) / &gap;
            Line(AffLine::new(m, b).expect("lambda is nonzero"))
        }
        FamilyKind::Thm3 => {
            if c.is_zero() {
                return Skip(ZeroParameter);
            }
            let m = &(d * &(c - lambda)) - mu;
            if m.is_zero() {
                return Skip(ZeroSlope);
            }
            Line(AffLine::new(m, c.clone()).expect("checked nonzero"))
        }
        FamilyKind::Diff => {
            if c == d {
                return Skip(ZeroSlope);
            }
            if c.is_zero() {
                return Skip(ZeroParameter);
            }
            Line(AffLine::new(c - d, c.clone()).expect("c != d"))
        }
        FamilyKind::Elekes => {
            if c.is_zero() {
                return Skip(ZeroSlope);
            }
            Line(AffLine::new(c.clone(), -&(c * d)).expect("nonzero slope"))
        }
        FamilyKind::Spanned => unreachable!("spanned families are built from a point set"),
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<FamilyBuild> {
    if spec.kind == FamilyKind::Spanned {
        return build_spanned(spec);
    }
    if spec.c.is_empty() || spec.d.is_empty() {
        return Err(Error::EmptyInput);
    }

    let one = Rational::one();
    let lambda = spec.lambda.as_ref().unwrap_or(&one);
    let mu = spec.mu.as_ref().unwrap_or(&one);
    if spec.kind == FamilyKind::Thm2 && (lambda.is_zero() || mu.is_zero()) {
        return Err(Error::Parameter(
            "thm2 families require nonzero lambda and mu".into(),
        ));
    }

    let mut lines = BTreeSet::new();
    let mut report = FamilyReport {
        requested: (spec.c.len() * spec.d.len()) as u64,
        ..FamilyReport::default()
    };

    for c in &spec.c {
        for d in &spec.d {
            match line_for(spec.kind, c, d, lambda, mu) {
                Outcome::Skip(reason) => report.skipped.push(SkippedPair {
                    c: c.clone(),
                    d: d.clone(),
                    reason,
                }),
                Outcome::Line(line) => {
                    report.admitted += 1;
                    if !lines.insert(line.clone()) {
                        report.collisions.push(Collision {
                            c: c.clone(),
                            d: d.clone(),
                            line,
                        });
                    }
                }
            }
        }
    }

    // Every kind except thm3 recovers (c, d) from the line, so collisions are
    // impossible; thm3 does too unless lambda lies in the parameter set C.
    if spec.kind != FamilyKind::Thm3 || !spec.c.contains(lambda) {
        debug_assert!(report.collisions.is_empty());
        debug_assert_eq!(lines.len() as u64, report.admitted);
    }

    Ok(FamilyBuild { lines, report })
}

fn build_spanned(spec: &FamilySpec) -> Result<FamilyBuild> {
    let points = match &spec.points {
        Some(pts) => PointSet::from_points(pts.iter().cloned()),
        None => {
            if spec.c.is_empty() || spec.d.is_empty() {
                return Err(Error::EmptyInput);
            }
            PointSet::from_grid(&spec.c, &spec.d)
        }
    };
    let profile = line_profile(&points)?;

    let mut lines = BTreeSet::new();
    let mut admitted = 0u64;
    for (line, _) in profile.entries() {
        if line.is_vertical() || line.is_horizontal() {
            continue;
        }
        let m = line.slope().expect("not vertical");
        let b = line.y_intercept().expect("not vertical");
        admitted += 1;
        lines.insert(AffLine::new(m, b).expect("not horizontal"));
    }

    Ok(FamilyBuild {
        lines,
        report: FamilyReport {
            requested: admitted,
            admitted,
            ..FamilyReport::default()
        },
    })
}

/// The set of elementwise inverses. Inversion is a bijection, so the result
/// has the same cardinality.
pub fn family_inverse(lines: &BTreeSet<AffLine>) -> BTreeSet<AffLine> {
    let inv: BTreeSet<AffLine> = lines.iter().map(AffLine::inverse).collect();
    debug_assert_eq!(inv.len(), lines.len());
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vals: &[&str]) -> BTreeSet<Rational> {
        vals.iter().map(|s| Rational::parse(s).unwrap()).collect()
    }

    fn spec(kind: FamilyKind, c: &[&str], d: &[&str], lambda: &str, mu: &str) -> FamilySpec {
        FamilySpec {
            kind,
            c: set(c),
            d: set(d),
            lambda: Some(Rational::parse(lambda).unwrap()),
            mu: Some(Rational::parse(mu).unwrap()),
            points: None,
        }
    }

    fn aff(m: &str, c: &str) -> AffLine {
        AffLine::new(Rational::parse(m).unwrap(), Rational::parse(c).unwrap()).unwrap()
    }

    #[test]
    fn thm2_single_pair() {
        let build = build_family(&spec(FamilyKind::Thm2, &["2"], &["1"], "1", "1")).unwrap();
        assert_eq!(build.lines, [aff("1", "2")].into_iter().collect());
        assert_eq!(build.report.admitted, 1);
        assert!(build.report.skipped.is_empty());
    }

    #[test]
    fn thm2_skips_equal_parameters() {
        let build = build_family(&spec(FamilyKind::Thm2, &["1", "2"], &["2"], "1", "1")).unwrap();
        assert_eq!(build.lines.len(), 1);
        assert_eq!(build.report.skipped.len(), 1);
        assert_eq!(build.report.skipped[0].reason, SkipReason::ZeroDenominator);
    }

    #[test]
    fn thm2_rejects_zero_lambda() {
        assert!(build_family(&spec(FamilyKind::Thm2, &["1"], &["2"], "0", "1")).is_err());
    }

    #[test]
    fn thm2_is_injective() {
        let build = build_family(&spec(
            FamilyKind::Thm2,
            &["1", "2", "3", "5"],
            &["-1", "2", "7"],
            "2",
            "3",
        ))
        .unwrap();
        assert_eq!(build.lines.len() as u64, build.report.admitted);
        assert!(build.report.collisions.is_empty());
    }

    #[test]
    fn thm3_single_pair() {
        let build = build_family(&spec(FamilyKind::Thm3, &["3"], &["2"], "1", "1")).unwrap();
        assert_eq!(build.lines, [aff("3", "3")].into_iter().collect());
    }

    #[test]
    fn thm3_collides_when_lambda_in_c() {
        // c = lambda makes the slope independent of d.
        let build = build_family(&spec(FamilyKind::Thm3, &["1"], &["2", "3", "4"], "1", "5")).unwrap();
        assert_eq!(build.lines.len(), 1);
        assert_eq!(build.report.collisions.len(), 2);
        assert_eq!(*build.lines.iter().next().unwrap(), aff("-5", "1"));
    }

    #[test]
    fn diff_family() {
        let build = build_family(&spec(FamilyKind::Diff, &["1", "2"], &["0"], "1", "1")).unwrap();
        assert_eq!(
            build.lines,
            [aff("1", "1"), aff("2", "2")].into_iter().collect()
        );
    }

    #[test]
    fn elekes_family() {
        let build = build_family(&spec(FamilyKind::Elekes, &["2"], &["3"], "1", "1")).unwrap();
        assert_eq!(build.lines, [aff("2", "-6")].into_iter().collect());
        // y = c(x - d) really passes through (d, 0).
        let line = build.lines.iter().next().unwrap();
        assert!(line.eval(&Rational::from_int(3)).is_zero());
    }

    #[test]
    fn grid_families_skip_zero_slope() {
        let build = build_family(&spec(FamilyKind::GridCd, &["0", "1"], &["5"], "1", "1")).unwrap();
        assert_eq!(build.lines, [aff("1", "5")].into_iter().collect());
        assert_eq!(build.report.skipped[0].reason, SkipReason::ZeroSlope);

        let build = build_family(&spec(FamilyKind::GridCCd, &["2"], &["3"], "1", "1")).unwrap();
        assert_eq!(build.lines, [aff("2", "6")].into_iter().collect());
    }

    #[test]
    fn spanned_family_of_unit_grid() {
        let build = build_family(&spec(FamilyKind::Spanned, &["0", "1"], &["0", "1"], "1", "1")).unwrap();
        // The 2x2 grid spans two diagonals besides rows and columns.
        assert_eq!(
            build.lines,
            [aff("1", "0"), aff("-1", "1")].into_iter().collect()
        );
    }

    #[test]
    fn empty_inputs_error() {
        assert!(build_family(&spec(FamilyKind::GridCd, &[], &["1"], "1", "1")).is_err());
    }

    #[test]
    fn inverse_family() {
        let build = build_family(&spec(FamilyKind::Thm2, &["2"], &["1"], "1", "1")).unwrap();
        let inv = family_inverse(&build.lines);
        assert_eq!(inv, [aff("1", "-2")].into_iter().collect());
        assert_eq!(family_inverse(&inv), build.lines);
    }
}
