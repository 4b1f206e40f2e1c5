//! Exact rational helpers and the `"p/q"` text form used in reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Renders `value` as `"p/q"`, always with an explicit denominator.
pub fn to_pq(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_pq(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Fixed 12-digit decimal rendering.
pub fn to_decimal(value: &Rational) -> String {
    format!("{:.12}", value.to_f64().unwrap_or(f64::NAN))
}

pub fn is_integral(value: &Rational) -> bool {
    value.is_integer()
}

pub fn in_unit_interval(value: &Rational) -> bool {
    !value.is_negative() && value <= &one()
}

/// Smallest integer not below `value`.
pub fn ceil_to_usize(value: &Rational) -> usize {
    value.ceil().to_integer().to_usize().unwrap_or(0)
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_pq {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_pq(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_pq(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::Rational;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&super::super::to_pq(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|text| super::super::parse_pq(&text).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_round_trip() {
        assert_eq!(to_pq(&ratio(4, 3)), "4/3");
        assert_eq!(to_pq(&int(3)), "3/1");
        assert_eq!(parse_pq("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_pq("-2").unwrap(), int(-2));
        assert!(parse_pq("1/0").is_err());
        assert!(parse_pq("x").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(4, 3)), "1.333333333333");
        assert_eq!(to_decimal(&int(2)), "2.000000000000");
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil_to_usize(&ratio(5, 2)), 3);
        assert_eq!(ceil_to_usize(&int(3)), 3);
    }
}
