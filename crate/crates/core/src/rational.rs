//! Exact rationals over arbitrary-precision integers.
//!
//! `Rational` is always in lowest terms with a positive denominator. Its
//! `Display` form is `"p/q"`, or `"p"` when `q = 1`, which is also the
//! interchange format accepted by [`parse`].

use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn uint(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse(s: &str) -> Option<Rational> {
    Rational::from_str(s.trim()).ok()
}

/// Converts a nonnegative integral rational to `u64`, if it is one.
pub fn to_u64(r: &Rational) -> Option<u64> {
    if !r.is_integer() {
        return None;
    }
    u64::try_from(r.to_integer()).ok()
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}
