//! Sumsets, product sets, and the multivariate expander images whose growth
//! the experiments measure.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::{Error, Result};

pub fn sumset(a: &BTreeSet<Rational>, b: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x + y);
        }
    }
    out
}

pub fn productset(a: &BTreeSet<Rational>, b: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x * y);
        }
    }
    out
}

/// `A+A+A+A`.
pub fn sum4(a: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    let aa = sumset(a, a);
    sumset(&aa, &aa)
}

/// `AAA`.
pub fn triple_product(a: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    productset(&productset(a, a), a)
}

/// `AA + A`.
pub fn aa_plus_a(a: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    sumset(&productset(a, a), a)
}

/// `A(A+A+A+A)`.
pub fn a_times_sum4(a: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    productset(a, &sum4(a))
}

/// `{ (a1*a4 - a2*a3) / (a1 - a3) : a_i in A, a1 != a3 }`: exactly the
/// y-intercepts of the non-vertical lines through two points of `A x A`.
pub fn q_set(a: &BTreeSet<Rational>) -> Result<BTreeSet<Rational>> {
    if a.len() < 2 {
        return Err(Error::Parameter(
            "intercept expander needs at least two elements".into(),
        ));
    }
    let mut out = BTreeSet::new();
    for a1 in a {
        for a3 in a {
            if a1 == a3 {
                continue;
            }
            let denom = a1 - a3;
            for a2 in a {
                for a4 in a {
                    out.insert((a1 * a4 - a2 * a3) / &denom);
                }
            }
        }
    }
    Ok(out)
}

/// `{ (a1 - a2)*a3 + a1 : a_i in A }`.
pub fn s14_set(a: &BTreeSet<Rational>) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for a1 in a {
        for a2 in a {
            let diff = a1 - a2;
            for a3 in a {
                out.insert(&diff * a3 + a1);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpanderKind {
    Q,
    S14,
    AaPlusA,
    ASum4,
    Aaa,
}

pub fn expander_set(kind: ExpanderKind, a: &BTreeSet<Rational>) -> Result<BTreeSet<Rational>> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    match kind {
        ExpanderKind::Q => q_set(a),
        ExpanderKind::S14 => Ok(s14_set(a)),
        ExpanderKind::AaPlusA => Ok(aa_plus_a(a)),
        ExpanderKind::ASum4 => Ok(a_times_sum4(a)),
        ExpanderKind::Aaa => Ok(triple_product(a)),
    }
}

/// Size statistics attached to every expander measurement.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthStats {
    pub a_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_size: Option<usize>,
    /// `|A+B|` (`B = A` when absent).
    pub sum_size: usize,
    /// `|AB|`.
    pub product_size: usize,
    /// `|A+A| / |A|`, at least 1.
    pub doubling_ratio: Rational,
    /// `|A|^3 / E*(A)`; absent when `0` is an element.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicative_ratio: Option<Rational>,
}

pub fn growth_stats(a: &BTreeSet<Rational>, b: Option<&BTreeSet<Rational>>) -> Result<GrowthStats> {
    if a.is_empty() || b.is_some_and(BTreeSet::is_empty) {
        return Err(Error::EmptyInput);
    }
    let other = b.unwrap_or(a);
    let sum_size = sumset(a, other).len();
    let product_size = productset(a, other).len();
    let doubling_ratio = Rational::new(sumset(a, a).len() as i64, a.len() as i64).expect("|A| > 0");
    debug_assert!(doubling_ratio >= Rational::one());
    let multiplicative_ratio = if a.contains(&Rational::zero()) {
        None
    } else {
        let e2 = crate::energy::multiplicative_energy(a, 2)?;
        let cube = num_bigint::BigInt::from(a.len()).pow(3u32);
        Some(Rational::from_bigints(cube, e2.into()).expect("energy is positive"))
    };
    Ok(GrowthStats {
        a_size: a.len(),
        b_size: b.map(BTreeSet::len),
        sum_size,
        product_size,
        doubling_ratio,
        multiplicative_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vals: &[i64]) -> BTreeSet<Rational> {
        vals.iter().map(|&v| Rational::from_int(v)).collect()
    }

    #[test]
    fn sum_and_product_sets() {
        assert_eq!(sumset(&set(&[1, 2]), &set(&[10])), set(&[11, 12]));
        assert_eq!(productset(&set(&[1, 2]), &set(&[1, 2])), set(&[1, 2, 4]));
        assert_eq!(aa_plus_a(&set(&[1, 2])), set(&[2, 3, 4, 5, 6]));
        assert_eq!(triple_product(&set(&[1, 2])), set(&[1, 2, 4, 8]));
    }

    #[test]
    fn iterated_sums() {
        assert_eq!(sum4(&set(&[0, 1])), set(&[0, 1, 2, 3, 4]));
        assert_eq!(a_times_sum4(&set(&[1, 2])), set(&[4, 5, 6, 7, 8, 10, 12, 14, 16]));
    }

    #[test]
    fn q_set_examples() {
        assert_eq!(q_set(&set(&[1, 2])).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(q_set(&set(&[0, 1])).unwrap(), set(&[0, 1]));
        assert!(q_set(&set(&[5])).is_err());
    }

    #[test]
    fn q_set_contains_input() {
        let a: BTreeSet<Rational> = [
            Rational::new(1, 3).unwrap(),
            Rational::from_int(-2),
            Rational::from_int(7),
        ]
        .into_iter()
        .collect();
        assert!(q_set(&a).unwrap().is_superset(&a));
    }

    #[test]
    fn s14_examples() {
        assert_eq!(s14_set(&set(&[0, 1])), set(&[-1, 0, 1, 2]));
        assert_eq!(s14_set(&set(&[0])), set(&[0]));
        let a = set(&[2, 3, 5]);
        assert!(s14_set(&a).is_superset(&a));
    }

    #[test]
    fn growth_examples() {
        let stats = growth_stats(&set(&[1, 2, 3]), None).unwrap();
        assert_eq!(stats.sum_size, 5);
        assert_eq!(stats.doubling_ratio, Rational::new(5, 3).unwrap());

        let gp = growth_stats(&set(&[1, 2, 4]), None).unwrap();
        assert_eq!(gp.product_size, 5);

        let single = growth_stats(&set(&[7]), None).unwrap();
        assert_eq!(single.doubling_ratio, Rational::one());
        assert_eq!(single.multiplicative_ratio, Some(Rational::one()));

        assert!(growth_stats(&set(&[0, 1]), None).unwrap().multiplicative_ratio.is_none());
    }

    #[test]
    fn size_floors() {
        let a = set(&[3, 5, 9]);
        let b = set(&[1, 4]);
        let stats = growth_stats(&a, Some(&b)).unwrap();
        assert!(stats.sum_size >= a.len().max(b.len()));
        assert!(sumset(&a, &a).len().max(productset(&a, &a).len()) >= a.len());
    }
}
