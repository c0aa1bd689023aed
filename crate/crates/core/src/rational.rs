//! Arbitrary-precision rational numbers and their text forms.
//!
//! The canonical text form is `p` when the denominator is one and `p/q`
//! otherwise, always in lowest terms with `q > 0`. [`parse_rational`]
//! additionally accepts finite decimals such as `-3.25`, which are converted
//! exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational number; never constructed with a zero denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer numerator and denominator. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rint(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Canonical text form: `p` if the denominator is one, `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Error raised by [`parse_rational`], carrying the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

fn parse_error(input: &str, reason: &'static str) -> ParseRationalError {
    ParseRationalError { input: input.to_string(), reason }
}

fn parse_bigint(text: &str, whole: &str, reason: &'static str) -> Result<BigInt, ParseRationalError> {
    text.parse::<BigInt>().map_err(|_| parse_error(whole, reason))
}

/// Parses `p`, `p/q`, or a finite decimal such as `0.125` into an exact
/// rational. Scientific notation and a zero denominator are rejected.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_error(text, "empty string"));
    }
    if let Some((num, den)) = trimmed.split_once('/') {
        let num = parse_bigint(num.trim(), text, "numerator is not an integer")?;
        let den = parse_bigint(den.trim(), text, "denominator is not an integer")?;
        if den.is_zero() {
            return Err(parse_error(text, "denominator is zero"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = trimmed.split_once('.') {
        return parse_decimal(text, int_part, frac_part);
    }
    let value = parse_bigint(trimmed, text, "not an integer")?;
    Ok(Rational::from(value))
}

fn parse_decimal(whole: &str, int_part: &str, frac_part: &str) -> Result<Rational, ParseRationalError> {
    let (sign, digits) = match int_part.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
    };
    if !digits.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(parse_error(whole, "not a finite decimal"));
    }
    if digits.is_empty() && frac_part.is_empty() {
        return Err(parse_error(whole, "decimal point with no digits"));
    }
    let int_value = if digits.is_empty() { BigInt::zero() } else { parse_bigint(digits, whole, "not a finite decimal")? };
    let frac_value = if frac_part.is_empty() { BigInt::zero() } else { parse_bigint(frac_part, whole, "not a finite decimal")? };
    let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
    let numer = int_value * &scale + frac_value;
    Ok(Rational::new(BigInt::from(sign) * numer, scale))
}

/// A rational extended with the two infinities, ordered the obvious way.
///
/// Used where an optimum over an empty set must be reported: a best value
/// over no columns is `MinusInfinity`, a worst threat over no columns is
/// `PlusInfinity`. The tags keep those cases distinct from every finite
/// value instead of hiding behind a large sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedRational {
    MinusInfinity,
    Finite(Rational),
    PlusInfinity,
}

impl ExtendedRational {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        use ExtendedRational::*;
        match (self, other) {
            (MinusInfinity, MinusInfinity) | (PlusInfinity, PlusInfinity) => Ordering::Equal,
            (MinusInfinity, _) | (_, PlusInfinity) => Ordering::Less,
            (_, MinusInfinity) | (PlusInfinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(x: Rational) -> Self {
        ExtendedRational::Finite(x)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::MinusInfinity => write!(f, "-inf"),
            ExtendedRational::Finite(x) => write!(f, "{}", format_rational(x)),
            ExtendedRational::PlusInfinity => write!(f, "+inf"),
        }
    }
}

/// Largest absolute value in a slice, zero when empty.
pub fn max_abs(values: &[Rational]) -> Rational {
    let mut best = Rational::zero();
    for v in values {
        let a = v.abs();
        if a > best {
            best = a;
        }
    }
    best
}
