//! Multiplicative energies of line sets and scalar sets.
//!
//! The energy of a line set `L` counts quadruples `(l1, l2, l3, l4)` with
//! `l1.quotient(l2) == l3.quotient(l4)` in the affine group, i.e. the sum of
//! squared multiplicities of the quotient multiset `{ l1^-1 l2 }`. Line sets
//! whose slopes and intercepts are small fractions are counted with machine
//! integers; anything else falls back to exact big rationals. A deliberately
//! dumb quadruple count (`energy_naive`) serves as the cross-checking
//! oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::affine::AffLine;
use crate::rational::Rational;
use crate::{Error, Result};

/// Multiplicities of pairwise quotients `l1^-1 * l2` over ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMultiset {
    counts: BTreeMap<AffLine, u64>,
}

impl QuotientMultiset {
    pub fn counts(&self) -> &BTreeMap<AffLine, u64> {
        &self.counts
    }

    pub fn get(&self, g: &AffLine) -> u64 {
        self.counts.get(g).copied().unwrap_or(0)
    }

    /// Total multiplicity; always `|L|^2`.
    pub fn total(&self) -> BigUint {
        BigUint::from(self.counts.values().map(|&v| v as u128).sum::<u128>())
    }

    /// Sum of squared multiplicities.
    pub fn energy(&self) -> BigUint {
        let e: u128 = self.counts.values().map(|&v| (v as u128) * (v as u128)).sum();
        BigUint::from(e)
    }
}

/// The exact quotient multiset, computed in big-rational arithmetic.
pub fn quotient_multiset(lines: &BTreeSet<AffLine>) -> QuotientMultiset {
    let mut counts: BTreeMap<AffLine, u64> = BTreeMap::new();
    let inverses: Vec<AffLine> = lines.iter().map(AffLine::inverse).collect();
    for inv in &inverses {
        for l2 in lines {
            *counts.entry(inv.compose(l2)).or_default() += 1;
        }
    }
    QuotientMultiset { counts }
}

/// A line whose slope and intercept fit small machine fractions.
#[derive(Clone, Copy)]
struct CompactLine {
    mn: i128,
    md: i128,
    cn: i128,
    cd: i128,
}

const COMPACT_BITS: u64 = 40;

fn to_compact(line: &AffLine) -> Option<CompactLine> {
    let small = |v: &num_bigint::BigInt| (v.bits() <= COMPACT_BITS).then(|| v.to_i128()).flatten();
    Some(CompactLine {
        mn: small(line.slope().numer())?,
        md: small(line.slope().denom())?,
        cn: small(line.intercept().numer())?,
        cd: small(line.intercept().denom())?,
    })
}

fn reduce(mut n: i128, mut d: i128) -> (i128, i128) {
    let g = n.gcd(&d);
    n /= g;
    d /= g;
    if d < 0 {
        n = -n;
        d = -d;
    }
    (n, d)
}

/// Quotient `l1^-1 * l2` over machine integers. With all inputs below
/// 2^40 the intermediate products stay far inside i128 range.
fn compact_quotient(l1: &CompactLine, l2: &CompactLine) -> [i128; 4] {
    let (sn, sd) = reduce(l2.mn * l1.md, l2.md * l1.mn);
    let diff_n = l2.cn * l1.cd - l1.cn * l2.cd;
    let diff_d = l1.cd * l2.cd;
    let (tn, td) = reduce(diff_n * l1.md, diff_d * l1.mn);
    [sn, sd, tn, td]
}

fn energy_compact(lines: &[CompactLine]) -> BigUint {
    // Most quotients of modest line sets fit four i32s; keeping those in a
    // separate narrow-keyed map keeps the big sweeps inside memory.
    let mut narrow: HashMap<[i32; 4], u64> = HashMap::new();
    let mut wide: HashMap<[i128; 4], u64> = HashMap::new();
    for l1 in lines {
        for l2 in lines {
            let q = compact_quotient(l1, l2);
            match (
                i32::try_from(q[0]),
                i32::try_from(q[1]),
                i32::try_from(q[2]),
                i32::try_from(q[3]),
            ) {
                (Ok(a), Ok(b), Ok(c), Ok(d)) => *narrow.entry([a, b, c, d]).or_default() += 1,
                _ => *wide.entry(q).or_default() += 1,
            }
        }
    }
    let e: u128 = narrow
        .values()
        .chain(wide.values())
        .map(|&v| (v as u128) * (v as u128))
        .sum();
    BigUint::from(e)
}

fn energy_exact(lines: &BTreeSet<AffLine>) -> BigUint {
    let mut counts: HashMap<AffLine, u64> = HashMap::new();
    let inverses: Vec<AffLine> = lines.iter().map(AffLine::inverse).collect();
    for inv in &inverses {
        for l2 in lines {
            *counts.entry(inv.compose(l2)).or_default() += 1;
        }
    }
    let e: u128 = counts.values().map(|&v| (v as u128) * (v as u128)).sum();
    BigUint::from(e)
}

/// Energy of a line set: the sum of squared quotient multiplicities.
pub fn energy(lines: &BTreeSet<AffLine>) -> BigUint {
    let compact: Option<Vec<CompactLine>> = lines.iter().map(to_compact).collect();
    match compact {
        Some(c) => energy_compact(&c),
        None => energy_exact(lines),
    }
}

/// Literal quadruple count: materializes every ordered-pair quotient and
/// compares them pairwise. Quadratic space, quartic comparisons; refuses
/// sets larger than `cap`.
pub fn energy_naive(lines: &BTreeSet<AffLine>, cap: usize) -> Result<BigUint> {
    if lines.len() > cap {
        return Err(Error::NaiveCapExceeded {
            size: lines.len(),
            cap,
        });
    }
    let mut quotients = Vec::with_capacity(lines.len() * lines.len());
    for l1 in lines {
        for l2 in lines {
            quotients.push(l1.quotient(l2));
        }
    }
    let mut total: u128 = 0;
    for q1 in &quotients {
        for q2 in &quotients {
            if q1 == q2 {
                total += 1;
            }
        }
    }
    Ok(BigUint::from(total))
}

/// Additive energy: quadruples with `a1 + a2 == a3 + a4`.
pub fn additive_energy(a: &BTreeSet<Rational>) -> Result<BigUint> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sums: HashMap<Rational, u64> = HashMap::new();
    for x in a {
        for y in a {
            *sums.entry(x + y).or_default() += 1;
        }
    }
    let e: u128 = sums.values().map(|&v| (v as u128) * (v as u128)).sum();
    Ok(BigUint::from(e))
}

/// Multiplicative moment of order `k >= 1`: the sum over ratios `r` in
/// `A/A` of `count(r)^k`. Requires `0` absent from `A`.
pub fn multiplicative_energy(a: &BTreeSet<Rational>, k: u32) -> Result<BigUint> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.contains(&Rational::zero()) {
        return Err(Error::ZeroElement);
    }
    if k == 0 {
        return Err(Error::Parameter("moment order must be at least 1".into()));
    }
    let mut ratios: HashMap<Rational, u64> = HashMap::new();
    for x in a {
        for y in a {
            *ratios.entry(x / y).or_default() += 1;
        }
    }
    let mut e = BigUint::from(0u32);
    for &v in ratios.values() {
        e += BigUint::from(v).pow(k);
    }
    Ok(e)
}

/// Energy of the difference-quotient relation: the sum over ratios `r` of
/// `q(r)^2`, where `q(r)` counts quadruples with `a1 - a2 == r * (a3 - a4)`
/// and `a3 != a4`. Zero numerators are allowed, zero denominators are not.
pub fn difference_ratio_energy(a: &BTreeSet<Rational>) -> Result<BigUint> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut diffs: HashMap<Rational, u64> = HashMap::new();
    for x in a {
        for y in a {
            *diffs.entry(x - y).or_default() += 1;
        }
    }
    let mut q: HashMap<Rational, u128> = HashMap::new();
    for (d1, &r1) in &diffs {
        for (d2, &r2) in &diffs {
            if d2.is_zero() {
                continue;
            }
            *q.entry(d1 / d2).or_default() += (r1 as u128) * (r2 as u128);
        }
    }
    let total = q.values().fold(BigUint::from(0u32), |acc, v| {
        acc + BigUint::from(*v) * BigUint::from(*v)
    });
    Ok(total)
}

/// The degenerate-inclusive companion of `difference_ratio_energy`: the
/// number of difference quadruples `(p, q, r, s)` with `p*s == q*r`, no
/// quotients taken. Unlike the quotient form it dominates the full
/// Cauchy-Schwarz split of the grid-family energy, so the bound below holds
/// with it for every set, including ones as small and structured as {1,2}.
pub fn difference_product_energy(a: &BTreeSet<Rational>) -> Result<BigUint> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut diffs: HashMap<Rational, u64> = HashMap::new();
    for x in a {
        for y in a {
            *diffs.entry(x - y).or_default() += 1;
        }
    }
    let mut products: HashMap<Rational, u128> = HashMap::new();
    for (d1, &r1) in &diffs {
        for (d2, &r2) in &diffs {
            *products.entry(d1 * d2).or_default() += (r1 as u128) * (r2 as u128);
        }
    }
    let total = products.values().fold(BigUint::from(0u32), |acc, v| {
        acc + BigUint::from(*v) * BigUint::from(*v)
    });
    Ok(total)
}

fn decimal_string<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Outcome of the energy bound `E(L)^2 <= E4(A) * Q(A)` for the full grid
/// family `L = { y = ax + b : a, b in A }`, with Q in both conventions.
/// `holds` uses the quotient form of Q (zero denominators excluded); that
/// form fails on some tightly structured sets ({1,2} is the smallest),
/// because the quotient count misses quadruples whose differences are all
/// zero while the energy's Cauchy-Schwarz split still needs them.
/// `holds_inclusive` uses the product form and is true for every input.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GridEnergyBound {
    pub line_count: usize,
    #[serde(serialize_with = "decimal_string")]
    pub energy: BigUint,
    #[serde(serialize_with = "decimal_string")]
    pub fourth_ratio_moment: BigUint,
    #[serde(serialize_with = "decimal_string")]
    pub difference_ratio_energy: BigUint,
    #[serde(serialize_with = "decimal_string")]
    pub difference_product_energy: BigUint,
    pub holds: bool,
    pub holds_inclusive: bool,
}

pub fn grid_energy_bound(a: &BTreeSet<Rational>) -> Result<GridEnergyBound> {
    if a.contains(&Rational::zero()) {
        return Err(Error::ZeroElement);
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut lines = BTreeSet::new();
    for m in a {
        for c in a {
            lines.insert(AffLine::new(m.clone(), c.clone()).expect("0 not in A"));
        }
    }
    let e = energy(&lines);
    let e4 = multiplicative_energy(a, 4)?;
    let q = difference_ratio_energy(a)?;
    let q_inclusive = difference_product_energy(a)?;
    let holds = &e * &e <= &e4 * &q;
    let holds_inclusive = &e * &e <= &e4 * &q_inclusive;
    Ok(GridEnergyBound {
        line_count: lines.len(),
        energy: e,
        fourth_ratio_moment: e4,
        difference_ratio_energy: q,
        difference_product_energy: q_inclusive,
        holds,
        holds_inclusive,
    })
}
