//! Replayable certificates that a matrix `diag(1, c)` with `c ≠ 1` lies in
//! the invariance group of every subgroup invariant under `diag(a, b)`.
//!
//! A certificate stores an integral Laurent polynomial `P` with `P(a) = 1`
//! and `P(b) = c`; since `P` has integer coefficients, `P(diag(a, b))` maps
//! any such subgroup into itself.

mod construct;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use construct::{certify, certify_laurent_unit, certify_monic, certify_rational_b};
pub use verify::{verify_certificate, verify_json};

use crate::exactnum::Number;
use crate::groups::MonomialMatrix;
use crate::serde_util::laurent_poly;
use crate::LaurentPoly;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `b` rational.
    RationalB,
    /// `p/q ∈ ℤ[b, b⁻¹]` witnessed by an explicit Laurent polynomial.
    LaurentUnit,
    /// Monic minimal polynomial of `b`.
    MonicB,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::RationalB => "rational_b",
            Regime::LaurentUnit => "laurent_unit",
            Regime::MonicB => "monic_b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema_version: u32,
    pub regime: Regime,
    pub a: Number,
    pub b: Number,
    /// `diag(1, c)`; `c` is rational or a power of the symbol `b`.
    pub target: MonomialMatrix,
    /// `P(t)`, claimed to satisfy `P(diag(a, b)) = target`.
    #[serde(with = "laurent_poly")]
    pub identity: LaurentPoly,
    pub constants: BTreeMap<String, Value>,
}

impl Certificate {
    /// Canonical JSON text; identical inputs give identical bytes.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(String),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

#[cfg(test)]
mod tests;

pub(crate) fn int_value(n: &crate::Integer) -> Value {
    Value::String(n.to_string())
}

pub(crate) fn poly_value(p: &crate::IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int_value).collect())
}

pub(crate) fn laurent_value(p: &LaurentPoly) -> Value {
    laurent_poly::to_repr(p)
}

pub(crate) fn number_of(x: &crate::exactnum::AlgebraicNumber) -> Number {
    match x.as_rational() {
        Some(q) => Number::Rational(q),
        None => Number::Algebraic(x.clone()),
    }
}
