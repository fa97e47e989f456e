//! Exact rational scalars.
//!
//! Everything in this crate computes over `Rat`, an arbitrary-precision
//! fraction kept reduced with a positive denominator. Intermediate values in
//! basis lifts and Pfaffian expansions grow quickly, so fixed-width integers
//! are not an option anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The scalar type: a reduced fraction of `BigInt`s with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    BadSyntax(String),
    #[error("denominator is zero in {0:?}")]
    ZeroDenominator(String),
}

/// `n/d` as an exact scalar. Panics when `d == 0`; use [`parse_rat`] for
/// untrusted input.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as an exact scalar.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses the document grammar `-?digits("/"digits)?`.
///
/// The denominator must be nonzero; no sign, whitespace or exponent is
/// accepted anywhere else. Output is reduced, so `"2/4"` parses to `1/2`.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let body = s.strip_prefix('-').unwrap_or(s);
    let (num_part, den_part) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !all_digits(num_part) || !den_part.is_none_or(all_digits) {
        return Err(RatParseError::BadSyntax(s.to_owned()));
    }
    let mut numer: BigInt = num_part.parse().expect("digit run parses");
    if s.starts_with('-') {
        numer = -numer;
    }
    let denom: BigInt = match den_part {
        Some(d) => d.parse().expect("digit run parses"),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_owned()));
    }
    Ok(Rat::new(numer, denom))
}

/// Canonical text form: `"3"`, `"-1/2"`, `"0"`. Inverse of [`parse_rat`] on
/// canonical strings.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// max(|numerator|, denominator) as a height measure for search enumeration.
pub fn height(r: &Rat) -> BigInt {
    let n = r.numer().abs();
    let d = r.denom().clone();
    if n >= d {
        n
    } else {
        d
    }
}
