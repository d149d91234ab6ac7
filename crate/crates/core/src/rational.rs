//! Exact rational and complex-rational scalars.
//!
//! Rationals are arbitrary precision and render as `"p/q"` strings (or `"p"`
//! when integral). Complex values are pairs of rationals and render as
//! `["re", "im"]`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type CQ = Complex<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn cq(re: Q, im: Q) -> CQ {
    Complex::new(re, im)
}

/// Complex number with integer parts.
pub fn ci(re: i64, im: i64) -> CQ {
    Complex::new(q(re), q(im))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let r = Q::from_str(t).map_err(|_| Error::Parse(format!("not a rational: {t:?}")))?;
    Ok(r)
}

/// Parses `"re,im"` into a complex rational.
pub fn parse_cq(s: &str) -> Result<CQ> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected re,im but got {s:?}")))?;
    Ok(cq(parse_q(re)?, parse_q(im)?))
}

pub fn q_to_string(x: &Q) -> String {
    x.to_string()
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Nearest integer, ties rounded toward negative infinity.
pub fn round_half_down(x: &Q) -> BigInt {
    let half = q_frac(1, 2);
    let shifted = x - &half;
    // ceil(x - 1/2) picks the lower neighbour on exact ties
    shifted.ceil().to_integer()
}

pub fn floor_int(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::Overflow(format!("{n} does not fit in 64 bits")))
}

pub fn norm_sqr(z: &CQ) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

/// Least common multiple of the denominators of the given rationals.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapters for the `"p/q"` string encoding.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            x: &Option<Q>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Q>, D::Error> {
            let s = Option::<String>::deserialize(d)?;
            s.map(|s| parse_q(&s).map_err(de::Error::custom)).transpose()
        }
    }
}

/// Serde adapters for the `["re","im"]` encoding.
pub mod serde_cq {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &CQ, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re.to_string(), z.im.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CQ, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        Ok(cq(
            parse_q(&re).map_err(de::Error::custom)?,
            parse_q(&im).map_err(de::Error::custom)?,
        ))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(zs: &[CQ], s: S) -> std::result::Result<S::Ok, S::Error> {
            let v: Vec<[String; 2]> = zs
                .iter()
                .map(|z| [z.re.to_string(), z.im.to_string()])
                .collect();
            v.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<CQ>, D::Error> {
            let v = Vec::<[String; 2]>::deserialize(d)?;
            v.into_iter()
                .map(|[re, im]| {
                    Ok(cq(
                        parse_q(&re).map_err(de::Error::custom)?,
                        parse_q(&im).map_err(de::Error::custom)?,
                    ))
                })
                .collect()
        }
    }
}
