//! Exact rational arithmetic for bound computations. No floating point is
//! used anywhere in the bound logic; values serialize as decimal strings so
//! consumers are not exposed to integer width limits.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds num/den. Panics if den is zero.
    pub fn new(num: BigInt, den: BigInt) -> Rational {
        Rational(BigRational::new(num, den))
    }

    pub fn integer(v: u64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// Builds num/den from machine integers. Panics if den is zero.
    pub fn ratio(num: u64, den: u64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(rhs.numer() != &BigInt::from(0), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Rational", 2)?;
        s.serialize_field("num", &self.numer().to_string())?;
        s.serialize_field("den", &self.denom().to_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl<'de> Visitor<'de> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map with decimal string fields num and den")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Rational, A::Error> {
                let mut num: Option<String> = None;
                let mut den: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "den" => den = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["num", "den"])),
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
                let num = BigInt::from_str(&num).map_err(de::Error::custom)?;
                let den = BigInt::from_str(&den).map_err(de::Error::custom)?;
                if den == BigInt::from(0) {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(Rational::new(num, den))
            }
        }

        deserializer.deserialize_map(RationalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = Rational::ratio(3, 4);
        let b = Rational::ratio(15, 16);
        assert_eq!(a.clone() * Rational::integer(20), Rational::integer(15));
        assert_eq!(b.clone() - a.clone(), Rational::ratio(3, 16));
        assert!(b > a);
        let rhs = Rational::integer(12) / (Rational::integer(12) - Rational::ratio(45, 4));
        assert_eq!(rhs, Rational::integer(16));
    }

    #[test]
    fn reduction_and_sign() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-8));
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(Rational::ratio(8, 4).to_string(), "2");
    }

    #[test]
    fn json_round_trip() {
        let r = Rational::ratio(45, 4);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"{"num":"45","den":"4"}"#);
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<Rational>(r#"{"num":"1","den":"0"}"#).is_err());
    }
}
