use crate::error::{Error, Result};
use crate::{IntPoly, LaurentPoly, RatPoly, Rational};

/// Canonical representative of `f` in ℚ[t]/(ψ), degree below `deg ψ`.
/// Negative powers go through the inverse of `t`, which needs `ψ(0) ≠ 0`.
///
/// Terms are visited in order of increasing `|exponent|` and each power of
/// `t` is obtained from the previous one, so sparse inputs of high degree
/// cost a logarithmic number of modular products per gap.
pub fn eval_mod(f: &LaurentPoly, psi: &IntPoly) -> Result<RatPoly> {
    if psi.degree().is_none_or(|d| d == 0) {
        return Err(Error::InvalidInput(format!("modulus {psi} must have positive degree")));
    }
    let modulus = psi.to_rational();
    let reduce = |p: &RatPoly| p.rem(&modulus).expect("nonzero modulus");
    let mut acc = RatPoly::zero();
    let positive: Vec<(i64, &Rational)> = f.terms().filter(|(e, _)| *e >= 0).collect();
    let mut negative: Vec<(i64, &Rational)> = f.terms().filter(|(e, _)| *e < 0).collect();
    negative.reverse();
    if !positive.is_empty() {
        acc = &acc + &walk(&positive, &reduce(&RatPoly::t()), &modulus);
    }
    if !negative.is_empty() {
        let t_inv = RatPoly::t()
            .inverse_mod(&modulus)
            .ok_or_else(|| Error::TNotInvertible(psi.to_string()))?;
        acc = &acc + &walk(&negative, &reduce(&t_inv), &modulus);
    }
    Ok(reduce(&acc))
}

/// `Σ c·base^{|e|}` for terms sorted by increasing `|e|`.
fn walk(terms: &[(i64, &Rational)], base: &RatPoly, modulus: &RatPoly) -> RatPoly {
    let mut acc = RatPoly::zero();
    let mut cur = RatPoly::one().rem(modulus).expect("nonzero modulus");
    let mut at = 0u64;
    for &(e, c) in terms {
        let e = e.unsigned_abs();
        if e > at {
            cur = mul_mod(&cur, &pow_mod(base, e - at, modulus), modulus);
            at = e;
        }
        acc = &acc + &cur.scale(c);
    }
    acc
}

fn mul_mod(a: &RatPoly, b: &RatPoly, m: &RatPoly) -> RatPoly {
    (a * b).rem(m).expect("nonzero modulus")
}

fn pow_mod(base: &RatPoly, mut e: u64, m: &RatPoly) -> RatPoly {
    let mut acc = RatPoly::one().rem(m).expect("nonzero modulus");
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &sq, m);
        }
        e >>= 1;
        if e > 0 {
            sq = mul_mod(&sq, &sq, m);
        }
    }
    acc
}
