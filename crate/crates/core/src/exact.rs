//! Exact rational amounts and their decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Crowns, percentages and price coefficients all share this representation.
pub type Amount = BigRational;

pub fn int(n: u64) -> Amount {
    Amount::from_integer(BigInt::from(n))
}

pub fn ratio(num: u64, den: u64) -> Amount {
    Amount::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"100"`, `"12.5"`, `"-3"` or `"21/20"` into an exact rational.
pub fn parse_amount(text: &str) -> Result<Amount> {
    let err = || Error::Number(text.to_string());
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num).ok_or_else(err)?;
        let den = parse_decimal(den).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(num / den);
    }
    parse_decimal(text).ok_or_else(err)
}

fn parse_decimal(text: &str) -> Option<Amount> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let mut num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    Some(Amount::new(num, den))
}

/// Renders `x` with `places` decimals, rounding half away from zero.
pub fn round_decimal(x: &Amount, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = (x * Amount::from_integer(scale.clone()))
        .round()
        .to_integer();
    let negative = scaled.is_negative();
    let (whole, frac) = scaled.abs().div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>places$}")
    }
}

/// Crowns to two decimal places, ties away from zero.
pub fn round_crowns(x: &Amount) -> String {
    round_decimal(x, 2)
}

/// Nearest `f64`; for reporting and tolerance checks only.
pub fn to_f64(x: &Amount) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_cents() {
        assert_eq!(round_crowns(&ratio(1000, 21)), "47.62");
        assert_eq!(round_crowns(&ratio(1, 200)), "0.01");
        assert_eq!(round_crowns(&ratio(1, 201)), "0.00");
        assert_eq!(round_crowns(&int(0)), "0.00");
        assert_eq!(round_crowns(&ratio(231101, 200)), "1155.51");
        assert_eq!(round_crowns(&-ratio(1, 200)), "-0.01");
        assert_eq!(round_crowns(&-ratio(1, 1000)), "0.00");
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_amount("21/20").unwrap(), ratio(21, 20));
        assert_eq!(parse_amount("1.05").unwrap(), ratio(21, 20));
        assert_eq!(parse_amount("100").unwrap(), int(100));
        assert_eq!(parse_amount(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_amount("-2.50").unwrap(), -ratio(5, 2));
        for bad in ["", "abc", "1/0", "1,5", "1.2.3", "--1", "."] {
            assert!(parse_amount(bad).is_err(), "{bad}");
        }
    }
}
