//! Exact rational scalars.
//!
//! The whole crate works over arbitrary-precision rationals. All structure
//! constants of the algebras involved are integers, so restricting parameters
//! to rationals loses nothing and makes every check an exact equality.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_zero() -> Rational {
    Rational::zero()
}

pub fn rat_one() -> Rational {
    Rational::one()
}

/// Render as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or a bare integer `p`. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parts: Vec<&str> = s.split('/').collect();
    let bad = || Error::Parse(format!("invalid rational: {s:?}"));
    match parts.as_slice() {
        [p] => {
            let n = BigInt::from_str(normalize_minus(p).trim()).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        [p, q] => {
            let n = BigInt::from_str(normalize_minus(p).trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(normalize_minus(q).trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        _ => Err(bad()),
    }
}

// Accept U+2212 minus signs in hand-written input files.
fn normalize_minus(s: &str) -> String {
    s.replace('\u{2212}', "-")
}

pub fn rat_is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn rat_abs(r: &Rational) -> Rational {
    r.abs()
}
