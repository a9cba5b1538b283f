//! Exact rational numbers and their `p/q` text form.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact rational, always kept in lowest terms with a positive denominator.
pub type Rational = Ratio<i64>;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(value)
}

/// Parses `p/q`, `p`, or a plain decimal such as `2.5`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |msg: &str| Error::Domain(format!("cannot parse rational {text:?}: {msg}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad("numerator is not an integer"))?;
        let den: i64 = den.trim().parse().map_err(|_| bad("denominator is not an integer"))?;
        if den == 0 {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad("malformed decimal"));
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: i64 = match whole.trim() {
            "" | "-" | "+" => 0,
            w => w.parse().map_err(|_| bad("malformed decimal"))?,
        };
        let den = 10i64.pow(frac.len() as u32);
        let frac: i64 = frac.parse().map_err(|_| bad("malformed decimal"))?;
        let magnitude = Rational::new(whole.abs() * den + frac, den);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    text.parse::<i64>()
        .map(Rational::from_integer)
        .map_err(|_| bad("expected p/q"))
}

/// Always renders `p/q`, including integers (`2/1`).
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn ceil(value: &Rational) -> i64 {
    value.ceil().to_integer()
}

pub fn floor(value: &Rational) -> i64 {
    value.floor().to_integer()
}

/// Common positive denominator of a list of rationals.
pub(crate) fn common_denominator(values: &[Rational]) -> i64 {
    values.iter().fold(1i64, |acc, v| acc.lcm(v.denom()))
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Like [`serde_rational`] for optional values (`null` when absent).
pub mod serde_opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(
        value: &Option<Rational>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_str(&format_rational(v)),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(deserializer)?
            .map(|text| parse_rational(&text).map_err(serde::de::Error::custom))
            .transpose()
    }
}
