//! Serde adapters that keep every integer as a decimal string.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{IntPoly, LaurentPoly, RatPoly};

/// Accepts `"12"` or a bare JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Str(String),
    I64(i64),
    U64(u64),
}

fn parse_int(r: IntRepr) -> Result<BigInt, String> {
    match r {
        IntRepr::Str(s) => s.trim().parse().map_err(|_| format!("not an integer: {s:?}")),
        IntRepr::I64(v) => Ok(v.into()),
        IntRepr::U64(v) => Ok(v.into()),
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational: {s:?}");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Str(String),
    I64(i64),
}

fn parse_rat_repr(r: RatRepr) -> Result<BigRational, String> {
    match r {
        RatRepr::Str(s) => parse_rational(&s),
        RatRepr::I64(v) => Ok(BigRational::from_integer(v.into())),
    }
}

pub mod bigint_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        parse_int(IntRepr::deserialize(d)?).map_err(D::Error::custom)
    }
}

pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        parse_rat_repr(RatRepr::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// Integer polynomial as an array of decimal strings, index = degree.
pub mod int_poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &IntPoly, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntPoly, D::Error> {
        let raw = Vec::<IntRepr>::deserialize(d)?;
        let coeffs = raw.into_iter().map(parse_int).collect::<Result<Vec<_>, _>>();
        Ok(IntPoly::new(coeffs.map_err(D::Error::custom)?))
    }
}

pub mod rat_poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &RatPoly, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = p.coeffs().iter().map(format_rational).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatPoly, D::Error> {
        let raw = Vec::<RatRepr>::deserialize(d)?;
        let coeffs = raw.into_iter().map(parse_rat_repr).collect::<Result<Vec<_>, _>>();
        Ok(RatPoly::new(coeffs.map_err(D::Error::custom)?))
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    lowest: i64,
    coeffs: Vec<String>,
}

/// `{"lowest": k, "coeffs": ["c_k", "c_{k+1}", ...]}`.
pub mod laurent_poly {
    use super::*;

    pub fn to_repr(p: &LaurentPoly) -> serde_json::Value {
        serde_json::to_value(LaurentRepr {
            lowest: p.lowest(),
            coeffs: p.coeffs().iter().map(format_rational).collect(),
        })
        .expect("plain struct")
    }

    pub fn serialize<S: Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr { lowest: p.lowest(), coeffs: p.coeffs().iter().map(format_rational).collect() }
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LaurentPoly, D::Error> {
        let raw = LaurentRepr::deserialize(d)?;
        let coeffs = raw.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>();
        Ok(LaurentPoly::new(raw.lowest, coeffs.map_err(D::Error::custom)?))
    }
}
