//! Exact rational scalars: parsing and deterministic rendering.
//!
//! Every quantity in this crate that is not a hop count is a [`Rational`].
//! Values cross the text boundary in three shapes — integers (`3`), decimals
//! (`0.25`), and fractions (`5/3`) — and all three parse to the same exact
//! representation. Rendering goes the other way: [`fmt_exact`] emits the
//! canonical reduced fraction, and [`fmt_decimal`] rounds to a fixed number of
//! significant digits with ties broken half-to-even, so repeated runs produce
//! byte-identical output.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty numeric token")]
    Empty,
    #[error("invalid numeric token `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Shorthand constructor for small rationals.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q` fractions, plain integers, and finite decimals.
///
/// Signs are accepted on the leading token (`-1/2`, `-0.25`); exponent
/// notation and inner whitespace are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(t.to_string());
    if let Some((num, den)) = t.split_once('/') {
        let p = BigInt::from_str(num).map_err(|_| invalid())?;
        let q = BigInt::from_str(den).map_err(|_| invalid())?;
        if q.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(t.to_string()));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if frac_part.is_empty()
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || !int_digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(invalid());
        }
        let int_val = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| invalid())?
        };
        let frac_val = BigInt::from_str(frac_part).map_err(|_| invalid())?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let magnitude = int_val * &scale + frac_val;
        return Ok(Rational::new(magnitude * BigInt::from(sign), scale));
    }
    let p = BigInt::from_str(t).map_err(|_| invalid())?;
    Ok(Rational::from_integer(p))
}

/// Canonical exact rendering: `p` when the denominator is one, else `p/q`.
pub fn fmt_exact(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering rounded to `sig` significant digits, ties half-to-even.
///
/// Output is a plain decimal (no exponent notation) with trailing zeros in
/// the fractional part trimmed, e.g. `10/9` at six digits renders `1.11111`
/// and `1/2` renders `0.5`.
pub fn fmt_decimal(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1, "significant digit count must be positive");
    if r.is_zero() {
        return "0".to_string();
    }
    let ten = BigInt::from(10);
    let a = r.numer().abs();
    let b = r.denom().clone();
    // Decimal exponent: largest e with 10^e <= a/b. Seed from digit counts,
    // then correct by direct comparison (at most a couple of steps).
    let mut e = a.to_string().len() as i64 - b.to_string().len() as i64;
    let scaled = |k: i64| -> (BigInt, BigInt) {
        // returns (a', b') with a'/b' = (a/b) / 10^k
        if k >= 0 {
            (a.clone(), &b * ten.pow(k as u32))
        } else {
            (&a * ten.pow((-k) as u32), b.clone())
        }
    };
    loop {
        let (sa, sb) = scaled(e);
        if sa < sb {
            e -= 1;
            continue;
        }
        let (sa, sb) = scaled(e + 1);
        if sa >= sb {
            e += 1;
            continue;
        }
        break;
    }
    // Round a/b * 10^(sig-1-e) half-to-even to an integer of `sig` digits.
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&a * ten.pow(shift as u32), b)
    } else {
        (a, &b * ten.pow((-shift) as u32))
    };
    let (q, rem) = num.div_rem(&den);
    let mut m = q;
    let twice = &rem * 2;
    if twice > den || (twice == den && (&m % 2) == BigInt::one()) {
        m += 1;
    }
    if m == ten.pow(sig as u32) {
        m = ten.pow(sig as u32 - 1);
        e += 1;
    }
    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);
    let body = if e >= sig as i64 - 1 {
        let zeros = (e - sig as i64 + 1) as usize;
        format!("{digits}{}", "0".repeat(zeros))
    } else if e >= 0 {
        let (int_part, frac_part) = digits.split_at(e as usize + 1);
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac}")
        }
    } else {
        let frac = digits.trim_end_matches('0');
        format!("0.{}{}", "0".repeat((-e - 1) as usize), frac)
    };
    if r.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}
