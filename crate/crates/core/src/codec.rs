//! Parsing and emission of the JSON file formats the CLI speaks.
//!
//! Every reader takes the raw text of one file and returns a fully
//! validated value; nothing downstream re-checks syntax. Scalars travel as
//! rational strings ("p/q" or "p"), small integers may appear as plain JSON
//! numbers, and all emitted JSON is pretty-printed with a trailing newline.

use std::collections::BTreeSet;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::affine::AffLine;
use crate::family::FamilySpec;
use crate::generate::GenSpec;
use crate::geometry::{PlanarLine, Point};
use crate::incidence::PointSet;
use crate::projective::ProjTransform;
use crate::rational::Rational;
use crate::{Error, Result};

fn parse_json<T: DeserializeOwned>(input: &str, what: &str) -> Result<T> {
    serde_json::from_str(input).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// A set of rationals: a JSON array of rational strings (or integers).
pub fn parse_scalar_set(input: &str) -> Result<BTreeSet<Rational>> {
    parse_json(input, "scalar set")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointsFile {
    Grid {
        a: BTreeSet<Rational>,
        b: BTreeSet<Rational>,
    },
    List(Vec<Point>),
}

/// A point set: either a grid `{"a": [...], "b": [...]}` (the product
/// structure is kept) or a flat array of `{"x", "y"}` points.
pub fn parse_point_set(input: &str) -> Result<PointSet> {
    match parse_json(input, "point set")? {
        PointsFile::Grid { a, b } => Ok(PointSet::from_grid(&a, &b)),
        PointsFile::List(points) => Ok(PointSet::from_points(points)),
    }
}

/// A set of lines of the affine group: a JSON array of `{"m", "c"}` objects
/// with nonzero slope.
pub fn parse_affine_lines(input: &str) -> Result<BTreeSet<AffLine>> {
    let lines: Vec<AffLine> = parse_json(input, "line set")?;
    Ok(lines.into_iter().collect())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyLine {
    Planar(PlanarLine),
    Affine(AffLine),
}

/// A set of planar lines: a JSON array whose elements are either
/// `{"a", "b", "c"}` coefficient triples or affine `{"m", "c"}` objects.
/// Duplicates collapse; the result is sorted.
pub fn parse_planar_lines(input: &str) -> Result<Vec<PlanarLine>> {
    let lines: Vec<AnyLine> = parse_json(input, "line set")?;
    let set: BTreeSet<PlanarLine> = lines
        .into_iter()
        .map(|l| match l {
            AnyLine::Planar(p) => p,
            AnyLine::Affine(a) => a.to_planar(),
        })
        .collect();
    Ok(set.into_iter().collect())
}

/// A projective transform: a 3x3 JSON array of rational strings. The
/// matrix must be invertible.
pub fn parse_matrix(input: &str) -> Result<ProjTransform> {
    parse_json(input, "matrix")
}

pub fn parse_family_spec(input: &str) -> Result<FamilySpec> {
    parse_json(input, "family spec")
}

pub fn parse_gen_spec(input: &str) -> Result<GenSpec> {
    parse_json(input, "generator spec")
}

/// Pretty JSON with a trailing newline, the form every subcommand emits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
