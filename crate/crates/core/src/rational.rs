//! Exact rational helpers: parsing, rendering, serialization.

use num::{BigInt, BigRational, Signed, Zero};

use crate::error::{Error, Result};

pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with a fixed number of digits after the point (truncated toward zero).
pub fn fmt_decimal(r: &BigRational, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10), digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).trunc().to_integer();
    let neg = r.is_negative();
    let a = scaled.abs();
    let int = &a / &scale;
    let frac = &a % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

pub fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

/// Parses `a`, `a/b`, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = i.starts_with('-');
        let i: BigInt = if i.is_empty() || i == "-" { BigInt::zero() } else { i.parse().map_err(|_| bad())? };
        let scale = num::pow(BigInt::from(10), f.len());
        let frac: BigInt = f.parse().map_err(|_| bad())?;
        let mag = BigRational::new(i.abs() * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}
