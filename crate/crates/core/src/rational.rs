//! Exact rational numbers used for every payoff and arc weight.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q` or a bare integer. The result is always reduced.
pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    match token.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => token.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn parse_non_negative(token: &str, line: usize) -> Result<Rational> {
    let value = parse_rational(token)
        .ok_or_else(|| Error::parse(line, format!("`{token}` is not a rational number")))?;
    if value.is_negative() {
        return Err(Error::parse(line, format!("negative value `{token}`")));
    }
    Ok(value)
}
