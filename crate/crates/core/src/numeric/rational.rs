//! Exact rational scalars.
//!
//! [`Rational`] is an arbitrary-precision fraction, always reduced, with a
//! positive denominator. Equality is value equality.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// Builds `numer/denom`. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let malformed = || Error::MalformedRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(malformed());
    }
    let numer: BigInt = num.parse().map_err(|_| malformed())?;
    let denom: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| malformed())?,
        Some(_) => return Err(malformed()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Renders `p/q` (or `p` for integers).
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Renders the value as a terminating decimal when one exists, otherwise
/// as `p/q`.
pub fn format_decimal(value: &Rational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut d = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return value.to_string();
    }
    let places = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10), places as usize);
    let scaled = (value * Rational::from_integer(scale)).to_integer();
    let digits = scaled.abs().to_string();
    let places = places as usize;
    let padded = format!("{:0>width$}", digits, width = places + 1);
    let (whole, frac) = padded.split_at(padded.len() - places);
    let mut out = String::new();
    if value.is_negative() {
        out.push('-');
    }
    let _ = write!(out, "{whole}.{frac}");
    out
}

/// Squared Euclidean norm of a coordinate vector.
pub fn norm_squared(coords: &[Rational]) -> Rational {
    coords.iter().fold(zero(), |acc, c| acc + c * c)
}

/// Orders rationals by absolute value, then by value.
pub fn canonical_cmp(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs()).then_with(|| a.cmp(b))
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub mod serde_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
