//! The cyclic module `{(f(a), f(b)) : f ∈ ℤ[t, t⁻¹]}` for algebraic `a`,
//! `b`: the smallest subgroup containing `(1, 1)` that is invariant under
//! `diag(a, b)`. Elements are pairs of residues in `ℚ[t]/ψ_a × ℚ[t]/ψ_b`;
//! membership is certified by an explicit integral Laurent witness.

use crate::error::{Error, Result};
use crate::laurent::eval_mod;
use crate::{IntPoly, LaurentPoly, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitModule {
    psi_a: IntPoly,
    psi_b: IntPoly,
}

/// A point `(x, y)` with `x ∈ ℚ(a)`, `y ∈ ℚ(b)` as reduced residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub first: RatPoly,
    pub second: RatPoly,
}

impl OrbitModule {
    /// `psi_a`, `psi_b`: minimal polynomials of `a` and `b`, neither
    /// vanishing at 0.
    pub fn new(psi_a: IntPoly, psi_b: IntPoly) -> Result<Self> {
        for p in [&psi_a, &psi_b] {
            if p.degree().is_none_or(|d| d == 0) || p.coeff(0) == 0.into() {
                return Err(Error::InvalidInput(format!("{p} must have positive degree and nonzero constant term")));
            }
        }
        Ok(Self { psi_a, psi_b })
    }

    /// `(f(a), f(b))`; `f` must be integral for the result to be a member.
    pub fn point(&self, f: &LaurentPoly) -> Result<OrbitPoint> {
        Ok(OrbitPoint { first: eval_mod(f, &self.psi_a)?, second: eval_mod(f, &self.psi_b)? })
    }

    /// `(x·d₁, y·d₂)` for diagonal entries given as Laurent expressions in
    /// `a` and `b` respectively.
    pub fn apply_diagonal(&self, p: &OrbitPoint, d1: &LaurentPoly, d2: &LaurentPoly) -> Result<OrbitPoint> {
        let m1 = eval_mod(d1, &self.psi_a)?;
        let m2 = eval_mod(d2, &self.psi_b)?;
        let ra = self.psi_a.to_rational();
        let rb = self.psi_b.to_rational();
        Ok(OrbitPoint {
            first: (&p.first * &m1).rem(&ra).expect("nonzero modulus"),
            second: (&p.second * &m2).rem(&rb).expect("nonzero modulus"),
        })
    }

    /// True iff `witness` is integral and `(witness(a), witness(b)) = p`.
    pub fn is_member_witnessed(&self, p: &OrbitPoint, witness: &LaurentPoly) -> bool {
        witness.is_integral() && self.point(witness).ok().as_ref() == Some(p)
    }
}
