//! Fixed-point decimals for bound expressions with fractional exponents.
//!
//! Values are stored as integer multiples of 10^-40 and every operation
//! truncates toward zero, so a computed bound is never displayed larger
//! than its true value. These numbers are for reporting: inequalities that
//! decide pass/fail are asserted in exact integer arithmetic elsewhere.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::rational::Rational;

const SCALE_DIGITS: usize = 40;

fn scale() -> BigInt {
    BigInt::from(10u32).pow(SCALE_DIGITS as u32)
}

/// A decimal with 40 fractional digits, truncating arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct Dec {
    units: BigInt,
}

impl Dec {
    pub fn zero() -> Self {
        Dec { units: BigInt::from(0) }
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        Dec {
            units: BigInt::from(v.clone()) * scale(),
        }
    }

    pub fn from_u64(v: u64) -> Self {
        Dec {
            units: BigInt::from(v) * scale(),
        }
    }

    /// Truncating conversion.
    pub fn from_rational(r: &Rational) -> Self {
        Dec {
            units: r.numer() * scale() / r.denom(),
        }
    }

    /// `value^(1/n)`, truncated: floor of the real root in units of 10^-40.
    pub fn nth_root(value: &BigUint, n: u32) -> Self {
        assert!(n >= 1);
        let scaled = value * BigUint::from(10u32).pow(SCALE_DIGITS as u32 * n);
        Dec {
            units: BigInt::from(scaled.nth_root(n)),
        }
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.units.is_zero()
    }

    pub fn add(&self, rhs: &Dec) -> Dec {
        Dec {
            units: &self.units + &rhs.units,
        }
    }

    pub fn mul(&self, rhs: &Dec) -> Dec {
        Dec {
            units: &self.units * &rhs.units / scale(),
        }
    }

    /// Truncating division; panics on a zero divisor.
    pub fn div(&self, rhs: &Dec) -> Dec {
        assert!(!rhs.is_zero(), "division by zero decimal");
        Dec {
            units: &self.units * scale() / &rhs.units,
        }
    }

    /// Decimal string truncated to `sig` significant digits.
    pub fn to_sig_string(&self, sig: usize) -> String {
        use num_traits::Zero;
        assert!(sig >= 1);
        if self.units.is_zero() {
            return "0".to_string();
        }
        let negative = self.units < BigInt::zero();
        let digits = self.units.magnitude().to_string();

        // Position of the decimal point from the right is SCALE_DIGITS.
        let (int_part, frac_part) = if digits.len() > SCALE_DIGITS {
            let split = digits.len() - SCALE_DIGITS;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            (String::new(), format!("{:0>width$}", digits, width = SCALE_DIGITS))
        };

        let mut out = String::new();
        if negative {
            out.push('-');
        }

        if int_part.is_empty() {
            // Value below 1: significant digits start at the first nonzero.
            let first = frac_part.find(|c| c != '0').expect("nonzero value");
            let keep = (first + sig).min(frac_part.len());
            let mut frac: String = frac_part[..keep].to_string();
            while frac.ends_with('0') {
                frac.pop();
            }
            out.push_str("0.");
            out.push_str(&frac);
        } else if int_part.len() >= sig {
            let mut kept = int_part[..sig].to_string();
            kept.extend(std::iter::repeat('0').take(int_part.len() - sig));
            out.push_str(&kept);
        } else {
            let frac_keep = sig - int_part.len();
            let mut frac: String = frac_part[..frac_keep.min(frac_part.len())].to_string();
            while frac.ends_with('0') {
                frac.pop();
            }
            out.push_str(&int_part);
            if !frac.is_empty() {
                out.push('.');
                out.push_str(&frac);
            }
        }
        out
    }
}

impl PartialOrd for Dec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.units.cmp(&other.units)
    }
}

impl fmt::Debug for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sig_string(30))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn integer_display() {
        assert_eq!(Dec::from_u64(0).to_sig_string(30), "0");
        assert_eq!(Dec::from_u64(42).to_sig_string(30), "42");
        assert_eq!(Dec::from_u64(123456).to_sig_string(2), "120000");
    }

    #[test]
    fn square_roots() {
        assert_eq!(Dec::nth_root(&big(4), 2).to_sig_string(30), "2");
        let sqrt2 = Dec::nth_root(&big(2), 2).to_sig_string(30);
        // The 30th significant digit is a zero and trails off.
        assert_eq!(sqrt2, "1.4142135623730950488016887242");
        let cbrt27 = Dec::nth_root(&big(27), 3);
        assert_eq!(cbrt27.to_sig_string(10), "3");
    }

    #[test]
    fn fractional_powers_via_roots() {
        // 32^(5/2) = sqrt(32^5) = 4096 * sqrt(2).
        let v = Dec::nth_root(&big(32).pow(5), 2);
        assert_eq!(v.to_sig_string(10), "5792.618751");
    }

    #[test]
    fn arithmetic_truncates() {
        let third = Dec::from_rational(&Rational::new(1, 3).unwrap());
        assert_eq!(third.to_sig_string(5), "0.33333");
        let neg = Dec::from_rational(&Rational::new(-1, 3).unwrap());
        assert_eq!(neg.to_sig_string(5), "-0.33333");

        let sum = third.add(&third).add(&third);
        // 3 * (1/3 truncated) is just below 1.
        assert!(sum < Dec::from_u64(1));

        let product = Dec::from_u64(6).mul(&third);
        assert_eq!(product.to_sig_string(5), "1.9999");

        let ratio = Dec::from_u64(1).div(&Dec::from_u64(8));
        assert_eq!(ratio.to_sig_string(10), "0.125");
    }

    #[test]
    fn ordering() {
        let a = Dec::nth_root(&big(2), 2);
        let b = Dec::from_rational(&Rational::new(3, 2).unwrap());
        assert!(a < b);
        assert!(Dec::from_u64(2) > Dec::from_u64(1));
    }

    #[test]
    fn small_values_keep_significance() {
        let tiny = Dec::from_rational(&Rational::new(1, 700).unwrap());
        assert_eq!(tiny.to_sig_string(3), "0.00142");
    }
}
