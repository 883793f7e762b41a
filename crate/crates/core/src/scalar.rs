//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field. Everything in this crate is exact.
pub type Q = BigRational;

#[inline]
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[inline]
pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a scalar.
#[inline]
pub fn sign_q(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Input(format!("not an exact rational: {text:?}"));
    match t.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Input(format!("zero denominator in {text:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise (q > 0, reduced).
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn is_neg(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3").unwrap(), q(3));
        assert_eq!(parse_q(" -6/4 ").unwrap(), qfrac(-3, 2));
        assert_eq!(format_q(&qfrac(6, -4)), "-3/2");
        assert_eq!(format_q(&q(0)), "0");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert!(parse_q("1.5").is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(sign_q(-3), q(-1));
        assert_eq!(sign_q(4), q(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
