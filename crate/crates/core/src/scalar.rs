//! Scalar bounds and serialization helpers for exact numbers.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Integer, Rational};

/// Exact signed integer type usable by the generic linear algebra.
pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
    + num_integer::Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
{
}

impl<T> ExactInt for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Hash
        + num_integer::Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
{
}

/// JSON value for an exact integer: a number when it fits in `i64`, else a string.
pub fn int_to_json<T: ExactInt>(x: &T) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

/// Inverse of [`int_to_json`].
pub fn int_from_json<T: ExactInt>(v: &serde_json::Value) -> Option<T> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().and_then(T::from_i64),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d == Integer::from(0) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Canonical text form of a rational: `"p"` for integers, else `"p/q"`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter storing a list of rationals as canonical strings.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rational_to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

/// Serde adapter for a list of generic exact integers.
pub mod int_vec {
    use super::*;

    pub fn serialize<T: ExactInt, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = v.iter().map(int_to_json).collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, T: ExactInt, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.iter()
            .map(|v| int_from_json(v).ok_or_else(|| D::Error::custom(format!("bad integer {v}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "3", "-7", "2/3", "-5/12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
        assert_eq!(rational_to_string(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn big_integers_become_strings() {
        let big: Integer = "123456789012345678901234567890".parse().unwrap();
        let v = int_to_json(&big);
        assert!(v.is_string());
        assert_eq!(int_from_json::<Integer>(&v), Some(big));
        assert_eq!(int_to_json(&Integer::from(-4)), serde_json::json!(-4));
    }
}
