//! Arbitrary-precision rational scalar.
//!
//! `Rat` wraps a `num` big rational and keeps it in the canonical form the
//! rest of the crate (and the JSON encoding) relies on: always reduced, with
//! a strictly positive denominator. The text form is `"p"` or `"p/q"` with
//! the sign on the numerator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// `numer/denom`, reduced. Panics when `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "rational with zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigs(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::InvalidInput("rational with zero denominator".into()));
        }
        Ok(Rat(BigRational::new(numer, denom)))
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

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.0.is_zero(), "division by zero rational");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.0.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints "p" when the denominator is 1, "p/q" otherwise.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = |_| Error::InvalidInput(format!("malformed rational {s:?}"));
        match s.split_once('/') {
            None => Ok(Rat(BigRational::from_integer(
                BigInt::from_str(s).map_err(bad)?,
            ))),
            Some((p, q)) => {
                let numer = BigInt::from_str(p.trim()).map_err(bad)?;
                let denom = BigInt::from_str(q.trim()).map_err(bad)?;
                Rat::from_bigs(numer, denom)
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational as a string \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<Rat, E> {
        Rat::from_str(s).map_err(|e| E::custom(e))
    }

    fn visit_i64<E: de::Error>(self, n: i64) -> Result<Rat, E> {
        Ok(Rat::from(n))
    }

    fn visit_u64<E: de::Error>(self, n: u64) -> Result<Rat, E> {
        Ok(Rat(BigRational::from_integer(BigInt::from(n))))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let r = Rat::new(2, -4);
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-1/2");
    }

    #[test]
    fn integers_print_without_denominator() {
        assert_eq!(Rat::new(6, 3).to_string(), "2");
        assert_eq!(Rat::from(0).to_string(), "0");
        assert_eq!(Rat::new(-5, 1).to_string(), "-5");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-22/7", "100000000000000000001/3"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Unreduced and oddly signed forms normalize.
        assert_eq!("4/6".parse::<Rat>().unwrap(), Rat::new(2, 3));
        assert_eq!("1/-2".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a/b".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn json_form_is_a_string() {
        let r = Rat::new(-1, 2);
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-1/2\"");
        let back: Rat = serde_json::from_str("\"-1/2\"").unwrap();
        assert_eq!(back, r);
        // Plain JSON integers are accepted on input.
        let i: Rat = serde_json::from_str("3").unwrap();
        assert_eq!(i, Rat::from(3));
    }

    #[test]
    fn arithmetic_stays_reduced() {
        let a = Rat::new(1, 6);
        let b = Rat::new(1, 3);
        assert_eq!((&a + &b).to_string(), "1/2");
        assert_eq!((a.clone() - b.clone()).to_string(), "-1/6");
        assert_eq!((&a * &b).to_string(), "1/18");
        assert_eq!((a / b).to_string(), "1/2");
    }
}
