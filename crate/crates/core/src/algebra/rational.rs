use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected on purpose: it would round.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() || t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(Error::Parse(format!("not a rational: {s:?}")));
    }
    t.parse::<Rational>()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// `"p/q"`, with `/q` omitted when the denominator is 1.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact square root when `r` is the square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rational) -> i64 {
    let c = r.ceil();
    i64::try_from(c.to_integer()).expect("ceil fits in i64")
}
