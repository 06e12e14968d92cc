//! Construction, parsing, and serialization helpers for [`Rat`].

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use super::Rat;

/// Shorthand constructor: `rat(9, 25)` is `9/25`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand constructor for an integer value.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// `base^exp` for a nonnegative integer exponent, computed exactly.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    Pow::pow(base.clone(), exp as i32)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, an integer literal, or a decimal literal.
///
/// Decimal literals convert exactly (`0.42` becomes `21/50`), never through
/// binary floating point.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseRatError::Invalid(s.into()))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseRatError::Invalid(s.into()))?;
        if den.is_zero() {
            return Err(ParseRatError::ZeroDenominator(s.into()));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part == "-" || int_part.is_empty() {
            "0"
        } else {
            int_part
        };
        let int: BigInt = int_part
            .parse()
            .map_err(|_| ParseRatError::Invalid(s.into()))?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRatError::Invalid(s.into()));
        }
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| ParseRatError::Invalid(s.into()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int.magnitude() * scale.magnitude() + frac.magnitude();
        let mut value = Rat::new(BigInt::from(magnitude), scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let num: BigInt = s.parse().map_err(|_| ParseRatError::Invalid(s.into()))?;
    Ok(Rat::from_integer(num))
}

/// Canonical `p/q` form with an explicit denominator, e.g. `3/1`.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde adapter serializing a [`Rat`] as its canonical `p/q` string.
///
/// Use with `#[serde(with = "rat_serde")]`.
pub mod rat_serde {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rat, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rat(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rat("9/25").unwrap(), rat(9, 25));
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat(" 1 / 3 ").unwrap(), rat(1, 3));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rat("0.42").unwrap(), rat(21, 50));
        assert_eq!(parse_rat("0.330384").unwrap(), rat(330384, 1000000));
        assert_eq!(parse_rat(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rat("2.").is_err(), true);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.2.3").is_err());
        assert!(parse_rat("1e3").is_err());
    }

    #[test]
    fn canonical_format_round_trips() {
        for s in ["9/25", "-1/2", "7/1", "0/1"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let l = rat(17, 50);
        let mut acc = Rat::one();
        for k in 0..8 {
            assert_eq!(rat_pow(&l, k), acc);
            acc *= &l;
        }
    }
}
