use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_util::{bigint_str, int_poly};
use crate::IntPoly;

/// `a_poly · ψ₁ + b_poly · ψ₂ = m` in ℤ[t].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutResult {
    #[serde(with = "int_poly")]
    pub a_poly: IntPoly,
    #[serde(with = "int_poly")]
    pub b_poly: IntPoly,
    #[serde(with = "bigint_str")]
    pub m: BigInt,
}

impl BezoutResult {
    pub fn holds_for(&self, psi1: &IntPoly, psi2: &IntPoly) -> bool {
        &(&self.a_poly * psi1) + &(&self.b_poly * psi2) == IntPoly::constant(self.m.clone())
    }
}

/// Runs extended Euclid over ℚ and clears denominators. `m` is the least
/// common denominator of that particular run, made positive.
pub fn bezout_integerized(psi1: &IntPoly, psi2: &IntPoly) -> Result<BezoutResult> {
    let (g, u, v) = psi1.to_rational().ext_gcd(&psi2.to_rational());
    if g.degree() != Some(0) {
        let factor = if g.is_zero() { "0".to_string() } else { g.primitive_integer().to_string() };
        return Err(Error::NotCoprime { common_factor: factor });
    }
    let m = u
        .coeffs()
        .iter()
        .chain(v.coeffs())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
        .abs();
    let mr = BigRational::from_integer(m.clone());
    let clear = |p: &crate::RatPoly| p.scale(&mr).to_integer().expect("denominators cleared");
    let out = BezoutResult { a_poly: clear(&u), b_poly: clear(&v), m };
    if !out.holds_for(psi1, psi2) {
        return Err(Error::Internal("Bezout identity does not re-expand".into()));
    }
    Ok(out)
}
