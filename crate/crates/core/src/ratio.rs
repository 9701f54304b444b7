//! Text and JSON forms of exact rationals: `"p"` or `"p/q"` with `q > 0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lp::Rational;

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |reason: &str| Error::parse("rational", text, reason);
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("numerator is not an integer"))?;
    let d: BigInt = d.parse().map_err(|_| bad("denominator is not an integer"))?;
    if d <= BigInt::from(0) {
        return Err(bad("denominator must be positive"));
    }
    Ok(Rational::new(n, d))
}

/// Least positive integer `L` with `L·v` integral, and that vector.
pub fn clear_denominators(v: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let l = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = v.iter().map(|r| r.numer() * (&l / r.denom())).collect();
    (l, ints)
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|r| r.is_integer())
}

/// Serialized as a JSON integer when it is one that fits in `i64`,
/// otherwise as the `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.is_integer().then(|| self.0.numer().to_i64()).flatten() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&format_rational(&self.0)),
        }
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonRational, E> {
                parse_rational(v).map(JsonRational).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// Always the `"p/q"` string form, as used for `min_x1`.
pub(crate) mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| parse_rational(&t).map_err(de::Error::custom)).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{rat, rat_frac};

    #[test]
    fn text_forms() {
        assert_eq!(format_rational(&rat(1)), "1");
        assert_eq!(format_rational(&rat_frac(-6, 4)), "-3/2");
        assert_eq!(parse_rational(" 4/6 ").unwrap(), rat_frac(2, 3));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_forms() {
        let v = vec![JsonRational(rat(3)), JsonRational(rat_frac(1, 2))];
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"[3,"1/2"]"#);
        let back: Vec<JsonRational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn clearing_denominators() {
        let (l, v) = clear_denominators(&[rat_frac(1, 2), rat_frac(2, 3), rat(1)]);
        assert_eq!(l, BigInt::from(6));
        assert_eq!(v, [3, 4, 6].map(BigInt::from));
    }
}
