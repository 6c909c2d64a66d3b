//! Number tower: exact rationals, real algebraic numbers, formal symbols
//! and the cubic radical extension over ℚ(t).

mod algebraic;
mod cubic;
mod ratfunc;
mod symbolic;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use algebraic::{count_roots, real_roots, screen_irreducible, AlgebraicNumber, Screen};
pub use cubic::CubicExt;
pub use ratfunc::RatFunction;
pub use symbolic::SymbolicReal;

use crate::error::{Error, Result};
use crate::serde_util::bigint_str;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rational_arith(x: &Rational, y: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div if y.is_zero() => return Err(Error::DivisionByZero),
        ArithOp::Div => x / y,
    })
}

/// A number as it appears in JSON input: `{"kind": "rational" | "algebraic" | "symbol", ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NumberRepr", into = "NumberRepr")]
pub enum Number {
    Rational(Rational),
    Algebraic(AlgebraicNumber),
    Symbol(SymbolicReal),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum NumberRepr {
    Rational {
        #[serde(with = "bigint_str")]
        num: BigInt,
        #[serde(with = "bigint_str")]
        den: BigInt,
    },
    Algebraic(AlgebraicNumber),
    Symbol(SymbolicReal),
}

impl TryFrom<NumberRepr> for Number {
    type Error = Error;

    fn try_from(r: NumberRepr) -> Result<Self> {
        Ok(match r {
            NumberRepr::Rational { num, den } => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Number::Rational(Rational::new(num, den))
            }
            NumberRepr::Algebraic(a) => match a.as_rational() {
                Some(q) => Number::Rational(q),
                None => Number::Algebraic(a),
            },
            NumberRepr::Symbol(s) => Number::Symbol(s),
        })
    }
}

impl From<Number> for NumberRepr {
    fn from(n: Number) -> Self {
        match n {
            Number::Rational(q) => NumberRepr::Rational { num: q.numer().clone(), den: q.denom().clone() },
            Number::Algebraic(a) => NumberRepr::Algebraic(a),
            Number::Symbol(s) => NumberRepr::Symbol(s),
        }
    }
}

impl Number {
    /// Exact description as an algebraic number; symbols have none.
    pub fn to_algebraic(&self) -> Option<AlgebraicNumber> {
        match self {
            Number::Rational(q) => Some(AlgebraicNumber::rational(q)),
            Number::Algebraic(a) => Some(a.clone()),
            Number::Symbol(_) => None,
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(q) => write!(f, "{q}"),
            Number::Algebraic(a) => write!(f, "{a}"),
            Number::Symbol(s) => write!(f, "{s}"),
        }
    }
}
