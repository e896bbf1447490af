//! Arbitrary-precision rational numbers and the `"p/q"` interchange format.
//!
//! All exact arithmetic in this crate runs on [`Rational`]
//! (`num_rational::BigRational`): automatically reduced, denominator kept
//! positive. Serialization is always the decimal string `"p"` or `"p/q"`,
//! never floats, so values survive a JSON round trip bit-exactly.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Exact rational scalar used throughout the exact layers.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from a machine-integer fraction.
///
/// # Panics
/// Panics if `den == 0`.
#[must_use]
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand constructor for an integer value.
#[must_use]
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse error for the `"p/q"` format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: expected \"p\" or \"p/q\" with integer p, nonzero integer q")]
pub struct ParseRationalError {
    /// Offending input text.
    pub input: String,
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = s.trim();
    let err = || ParseRationalError {
        input: s.to_string(),
    };
    match trimmed.split_once('/') {
        None => BigInt::from_str(trimmed)
            .map(Rational::from_integer)
            .map_err(|_| err()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Formats a rational as `"p"` (integer) or `"p/q"` (reduced, `q > 1`).
#[must_use]
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Converts to `f64`, saturating for magnitudes beyond the float range.
#[must_use]
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// True iff `r` is an integer.
#[must_use]
pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// Fractional part in `[0, 1)`: `r - floor(r)`.
#[must_use]
pub fn fract_mod_one(r: &Rational) -> Rational {
    r - r.floor()
}

/// Serde adapter serializing a [`Rational`] as its `"p/q"` string.
///
/// Use as `#[serde(with = "crate::rational::serde_rational")]`.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
