//! Coefficient scalars.
//!
//! Every polynomial in the crate is generic over [`Scalar`]. Two
//! implementations exist: exact rationals and [`AlgNum`](super::AlgNum),
//! elements of a tower of simple extensions handled by dynamic evaluation.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::tower::Split;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Ring operations plus the one operation that may branch under dynamic
/// evaluation: inversion.
///
/// `is_zero` (from `Zero`) is structural: it reports whether the canonical
/// representation is zero, which means zero in every branch. A structurally
/// nonzero element may still be a zero divisor; [`Scalar::inv_or_split`] is
/// the only way to decide that, and it returns a [`Split`] when it happens.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    /// Inverse of a structurally nonzero element.
    ///
    /// Panics on a structural zero.
    fn inv_or_split(&self) -> Result<Self, Split>;

    fn from_rational(q: &Rational) -> Self;

    /// The value as a rational, when it lies in the base field.
    fn as_rational(&self) -> Option<Rational>;

    /// Zero test that is valid in every branch.
    fn is_zero_d5(&self) -> Result<bool, Split> {
        if self.is_zero() {
            Ok(true)
        } else {
            self.inv_or_split().map(|_| false)
        }
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Rational {
    fn inv_or_split(&self) -> Result<Self, Split> {
        assert!(!self.is_zero(), "inverse of zero rational");
        Ok(self.recip())
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Shorthand for small rational literals.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"` or `"a/b"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Formats a rational as `"a/b"`, or `"a"` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("5/6"), Some(q(5, 6)));
        assert_eq!(parse_rational(" -2 "), Some(qi(-2)));
        assert_eq!(parse_rational("4/8"), Some(q(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&q(10, 12)), "5/6");
        assert_eq!(fmt_rational(&qi(3)), "3");
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac(&q(7, 4)), q(3, 4));
        assert_eq!(frac(&q(-1, 4)), q(3, 4));
        assert_eq!(frac(&qi(2)), qi(0));
    }
}
