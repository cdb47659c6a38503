//! Exact rational scalars.
//!
//! Every coordinate in the crate is a [`Rational`]: an arbitrary precision
//! fraction kept in lowest terms with a positive denominator. Text I/O uses
//! the `p/q` form (`p` alone when the denominator is one).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
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

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `p`, `-p`, `p/q` or `-p/q` with ASCII digits only.
///
/// The denominator may not carry a sign. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    if !is_integer_literal(num) {
        return Err(malformed());
    }
    let numerator: BigInt = num.parse().map_err(|_| malformed())?;
    let denominator: BigInt = match den {
        Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
            d.parse().map_err(|_| malformed())?
        }
        Some(_) => return Err(malformed()),
        None => BigInt::one(),
    };
    if denominator.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(numerator, denominator))
}

/// Nearest `f64`; used only for rendering and human-facing summaries.
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge operands: scale both down by the same power of two.
            let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub fn min_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<&'a Rational> {
    values.into_iter().min()
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<&'a Rational> {
    values.into_iter().max()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
