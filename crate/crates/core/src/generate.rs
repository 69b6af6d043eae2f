//! Deterministic construction of the scalar sets feeding the experiments.
//!
//! Randomness comes from a self-contained splitmix64 stream so that a spec
//! plus a seed produces the same set on every platform and toolchain. The
//! update and output functions are written out below rather than taken from
//! a crate, because the byte-for-byte reproducibility of every seeded
//! experiment depends on them never changing.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::{Error, Result};

/// splitmix64: `state += 0x9E3779B97F4A7C15`, then two xor-multiply mixing
/// rounds with `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`, finally
/// `z ^ (z >> 31)`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)` by rejection, so no modulo bias.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let zone = (u64::MAX / bound) * bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform value in `[lo, hi]` inclusive.
    pub fn range_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + self.below(span) as i64
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Ap,
    Gp,
    RandomInt,
    Explicit,
}

/// Recipe for one scalar set. Unused fields for a kind are ignored.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Rational>>,
}

impl GenSpec {
    pub fn ap(start: Rational, step: Rational, n: u64) -> Self {
        GenSpec {
            kind: GenKind::Ap,
            start: Some(start),
            step: Some(step),
            ratio: None,
            n: Some(n),
            seed: None,
            range: None,
            values: None,
        }
    }

    pub fn gp(start: Rational, ratio: Rational, n: u64) -> Self {
        GenSpec {
            kind: GenKind::Gp,
            start: Some(start),
            step: None,
            ratio: Some(ratio),
            n: Some(n),
            seed: None,
            range: None,
            values: None,
        }
    }

    pub fn random_int(seed: u64, range: u64, n: u64) -> Self {
        GenSpec {
            kind: GenKind::RandomInt,
            start: None,
            step: None,
            ratio: None,
            n: Some(n),
            seed: Some(seed),
            range: Some(range),
            values: None,
        }
    }

    pub fn explicit(values: Vec<Rational>) -> Self {
        GenSpec {
            kind: GenKind::Explicit,
            start: None,
            step: None,
            ratio: None,
            n: None,
            seed: None,
            range: None,
            values: Some(values),
        }
    }
}

fn require<T: Clone>(field: &Option<T>, name: &str) -> Result<T> {
    field.clone().ok_or_else(|| Error::Parameter(format!("missing field `{name}`")))
}

fn positive_n(spec: &GenSpec) -> Result<u64> {
    let n = require(&spec.n, "n")?;
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    Ok(n)
}

/// Materialize the set described by `spec`: exactly `n` distinct rationals
/// for the progression and random kinds, the deduplicated values otherwise.
pub fn generate(spec: &GenSpec) -> Result<BTreeSet<Rational>> {
    match spec.kind {
        GenKind::Ap => {
            let n = positive_n(spec)?;
            let start = require(&spec.start, "start")?;
            let step = require(&spec.step, "step")?;
            let mut out = BTreeSet::new();
            let mut cur = start;
            for _ in 0..n {
                out.insert(cur.clone());
                cur = cur + &step;
            }
            if out.len() as u64 != n {
                return Err(Error::DegenerateSpec { requested: n });
            }
            Ok(out)
        }
        GenKind::Gp => {
            let n = positive_n(spec)?;
            let start = require(&spec.start, "start")?;
            let ratio = require(&spec.ratio, "ratio")?;
            if ratio.is_zero() {
                return Err(Error::Parameter("ratio must be nonzero".into()));
            }
            let mut out = BTreeSet::new();
            let mut cur = start;
            for _ in 0..n {
                out.insert(cur.clone());
                cur = cur * &ratio;
            }
            if out.len() as u64 != n {
                return Err(Error::DegenerateSpec { requested: n });
            }
            Ok(out)
        }
        GenKind::RandomInt => {
            let n = positive_n(spec)?;
            let range = require(&spec.range, "range")?;
            let seed = spec.seed.unwrap_or(0);
            if range < n {
                return Err(Error::Parameter(format!(
                    "cannot draw {n} distinct integers from [1, {range}]"
                )));
            }
            let mut rng = SplitMix64::new(seed);
            let mut picked = BTreeSet::new();
            while (picked.len() as u64) < n {
                picked.insert(rng.below(range) + 1);
            }
            Ok(picked.into_iter().map(|v| Rational::from_int(v as i64)).collect())
        }
        GenKind::Explicit => {
            let values = require(&spec.values, "values")?;
            if values.is_empty() {
                return Err(Error::EmptyInput);
            }
            Ok(values.into_iter().collect())
        }
    }
}
