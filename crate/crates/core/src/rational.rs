//! Exact rational scalars and small combinatorial helpers.
//!
//! Coefficients throughout the crate are arbitrary-precision rationals in
//! lowest terms with positive denominator; `num_rational::BigRational`
//! maintains exactly that canonical form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the canonical text form `p/q` (`q` omitted when 1).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    t.parse::<BigRational>()
        .map_err(|e| Error::Parse(format!("bad rational '{t}': {e}")))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for t in 2..=k {
        acc *= BigInt::from(t);
    }
    acc
}

/// Generalized binomial coefficient for integer upper index, always an
/// integer: `C(n, k) = n (n-1) ... (n-k+1) / k!`.
pub fn binomial(n: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for t in 0..k {
        num *= BigInt::from(n) - BigInt::from(t);
    }
    let den = factorial(k);
    let (q, r) = num_integer_div_rem(num, den);
    debug_assert!(r.is_zero(), "binomial must be an integer");
    q
}

fn num_integer_div_rem(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    let q = &a / &b;
    let r = &a - &q * &b;
    (q, r)
}

pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

/// `c^d` for a nonzero rational `c` and any integer `d`.
pub fn rational_pow(c: &Rational, d: i64) -> Rational {
    assert!(!c.is_zero() || d >= 0, "zero to a negative power");
    let mut acc = Rational::one();
    let base = if d >= 0 { c.clone() } else { c.recip() };
    for _ in 0..d.unsigned_abs() {
        acc *= &base;
    }
    acc
}

pub fn is_negative(r: &Rational) -> bool {
    r.numer().is_negative()
}
