//! Exact rational scalars and their canonical wire form.
//!
//! All coefficients in this crate are arbitrary-precision rationals; nothing
//! is ever rounded. On the wire a scalar is a decimal-free string, either
//! `"n"` or `"n/d"` with the sign on the numerator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"n"` or `"n/d"`. No decimal points, no exponents, no whitespace.
pub fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    if s.is_empty() {
        return Err(ScalarError::Empty);
    }
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num_s).map_err(|_| ScalarError::Invalid(s.to_string()))?;
    let den = match den_s {
        Some(d) => BigInt::from_str(d).map_err(|_| ScalarError::Invalid(s.to_string()))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ScalarError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

/// Canonical form: reduced, `"n"` when the denominator is 1, else `"n/d"`,
/// denominator positive. `BigRational` keeps values reduced, so this is a
/// plain formatter.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_negative(x: &Rat) -> bool {
    x.numer().is_negative()
}
