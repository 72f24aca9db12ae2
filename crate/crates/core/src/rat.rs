//! Formatting and parsing of exact rationals.
//!
//! Rationals cross the CLI and JSON boundaries as strings: `"p/q"` in lowest
//! terms, or just `"p"` when the denominator is one. Floats are never
//! produced; the optional decimal rendering is computed by integer division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Renders a rational as `"p/q"`, dropping the `/q` when `q == 1`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {:?}", s));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

/// Renders a rational as a decimal string with `digits` fractional digits,
/// rounding half away from zero.
pub fn format_decimal(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u8).pow(digits as u32);
    // round(|r| * 10^digits)
    let scaled = (abs.numer() * &scale * 2 + abs.denom()) / (abs.denom() * 2);
    let (int_part, frac_part): (BigInt, BigInt) = (&scaled / &scale, &scaled % &scale);
    if digits == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!("{}{}.{:0>width$}", sign, int_part, frac_part.to_string(), width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn round_trips() {
        assert_eq!(format_rational(&q("3/2")), "3/2");
        assert_eq!(format_rational(&q("4/2")), "2");
        assert_eq!(format_rational(&q("-7/3")), "-7/3");
        assert_eq!(format_rational(&q("0")), "0");
        assert_eq!(q("6/4"), q("3/2"));
    }

    #[test]
    fn rejects_junk() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&q("3/2"), 3), "1.500");
        assert_eq!(format_decimal(&q("-3/2"), 1), "-1.5");
        assert_eq!(format_decimal(&q("1/3"), 4), "0.3333");
        assert_eq!(format_decimal(&q("2/3"), 4), "0.6667");
        assert_eq!(format_decimal(&q("7"), 0), "7");
        assert_eq!(format_decimal(&q("5/2"), 0), "3");
    }
}
