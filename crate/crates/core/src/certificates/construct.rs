use std::cmp::{max, Ordering};
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use super::{int_value, laurent_value, number_of, poly_value, Certificate, Regime, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::exactnum::AlgebraicNumber;
use crate::groups::{Monomial, MonomialMatrix};
use crate::laurent::{bezout_integerized, eval_mod, monic_lemma, q_adic_certificate, solve_unit_power};
use crate::numtheory::ext_gcd;
use crate::{LaurentPoly, Rational};

fn hyp(msg: String) -> Error {
    Error::HypothesisViolation(msg)
}

fn check_pair(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<()> {
    for (name, x) in [("a", a), ("b", b)] {
        if !x.is_positive() {
            return Err(hyp(format!("{name} = {x} is not positive")));
        }
        if x.cmp_rational(&Rational::one()) == Ordering::Equal {
            return Err(hyp(format!("{name} = 1")));
        }
    }
    if a.same_as(b) {
        return Err(hyp("a = b".into()));
    }
    Ok(())
}

fn lc(c: &BigInt) -> LaurentPoly {
    LaurentPoly::constant(Rational::from_integer(c.clone()))
}

fn diag_target(second: (Rational, Monomial)) -> MonomialMatrix {
    MonomialMatrix::diagonal(vec![(Rational::one(), Monomial::one()), second]).expect("positive entries")
}

fn build(
    regime: Regime,
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    target: MonomialMatrix,
    identity: LaurentPoly,
    constants: BTreeMap<String, Value>,
) -> Certificate {
    Certificate {
        schema_version: SCHEMA_VERSION,
        regime,
        a: number_of(a),
        b: number_of(b),
        target,
        identity,
        constants,
    }
}

/// Integers `x, y` with `x·u + y·v = rhs`, given `gcd(u, v) = 1`.
fn combo(u: &BigInt, v: &BigInt, rhs: &BigInt) -> (BigInt, BigInt) {
    let (g, x, y) = ext_gcd(u, v);
    debug_assert!(g.is_one());
    (x * rhs, y * rhs)
}

/// Pair of certificates for `diag(1, q^{-N})` and `diag(1, q^{N})` when `b = p/q`.
///
/// For integral `b` the construction runs on `1/a, 1/b` with the reversed
/// minimal polynomial and substitutes `t ↦ 1/t` at the end.
pub fn certify_rational_b(a: &AlgebraicNumber, b: &Rational) -> Result<[Certificate; 2]> {
    let b_alg = AlgebraicNumber::rational(b);
    check_pair(a, &b_alg)?;
    let reversed = b.denom().is_one();
    let (psi, p, q) = if reversed {
        (a.minpoly().reversed().primitive(), b.denom().clone(), b.numer().clone())
    } else {
        (a.minpoly().clone(), b.numer().clone(), b.denom().clone())
    };
    let n = psi.degree().expect("positive degree");
    let big_m: BigInt = (0..=n)
        .map(|i| psi.coeff(i) * p.pow(i as u32) * q.pow((n - i) as u32))
        .sum();
    if big_m.is_zero() {
        return Err(hyp(format!("minimal polynomial {} vanishes at b = {b}", a.minpoly())));
    }
    let split = q_adic_certificate(&big_m, &q)?;
    let m = split.n as i64;
    let n_i = n as i64;
    let min_n = max(1, n_i - m + 1) as u32;
    let unit = solve_unit_power(&split.r, &q, min_n)?;
    let big_n = unit.n as i64;
    let psi_l = LaurentPoly::from_int_poly(&psi);

    let make = |sign: i64, k: i64, rhs: BigInt| -> Certificate {
        let (x, y) = combo(&p.pow(k as u32), &q.pow(k as u32), &rhs);
        let lin = &lc(&x).shift(k) + &lc(&y);
        let mut identity = &(&(&lc(&split.amp) * &lin) * &psi_l) + &LaurentPoly::one();
        if reversed {
            identity = identity.invert_variable();
        }
        let qn = Rational::from_integer(q.pow(unit.n));
        let entry = if sign < 0 { qn.recip() } else { qn };
        let mut c = BTreeMap::new();
        c.insert("sign".into(), Value::from(sign));
        c.insert("reversed".into(), Value::Bool(reversed));
        c.insert("psi".into(), poly_value(&psi));
        c.insert("p".into(), int_value(&p));
        c.insert("q".into(), int_value(&q));
        c.insert("M".into(), int_value(&big_m));
        c.insert("amp".into(), int_value(&split.amp));
        c.insert("r".into(), int_value(&split.r));
        c.insert("m".into(), Value::from(m));
        c.insert("s".into(), int_value(&unit.s));
        c.insert("N".into(), Value::from(big_n));
        c.insert("k".into(), Value::from(k));
        c.insert("x".into(), int_value(&x));
        c.insert("y".into(), int_value(&y));
        build(Regime::RationalB, a, &b_alg, diag_target((entry, Monomial::one())), identity, c)
    };
    let down = make(-1, big_n + m - n_i, unit.s.clone());
    let up = make(1, max(m - n_i, 0), -&unit.s * q.pow(max(n_i - m, 0) as u32));
    Ok([down, up])
}

/// Pair for `diag(1, q^{n})` and `diag(1, q^{-n})` from a Laurent polynomial
/// `phi` with integer coefficients and `phi(b) = p/q`, `|q| ≥ 2`.
pub fn certify_laurent_unit(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    phi: &LaurentPoly,
    claimed: Option<&Rational>,
) -> Result<[Certificate; 2]> {
    check_pair(a, b)?;
    if !phi.is_integral() {
        return Err(hyp(format!("phi = {phi} has non-integer coefficients")));
    }
    let value = eval_mod(phi, b.minpoly())?;
    if value.degree().is_some_and(|d| d > 0) {
        return Err(Error::WitnessMismatch(format!("phi(b) is not rational: phi ≡ {value} modulo {}", b.minpoly())));
    }
    let value = value.coeff(0);
    if let Some(c) = claimed {
        if *c != value {
            return Err(Error::WitnessMismatch(format!("phi(b) = {value}, not {c}")));
        }
    }
    let (p, q) = (value.numer().clone(), value.denom().clone());
    if p.is_zero() {
        return Err(hyp("phi(b) = 0".into()));
    }
    if q.is_one() {
        return Err(hyp(format!("phi(b) = {value} is an integer; its denominator must be at least 2")));
    }
    let (psi1, psi2) = (a.minpoly(), b.minpoly());
    let bz = bezout_integerized(psi1, psi2)?;
    let split = q_adic_certificate(&bz.m, &q)?;
    let nq = split.n;
    let unit = solve_unit_power(&split.r, &q, 1)?;
    let base = &(&lc(&split.amp) * &LaurentPoly::from_int_poly(&bz.a_poly)) * &LaurentPoly::from_int_poly(psi1);

    let make = |sign: i64, k: u32, rhs: BigInt| -> Certificate {
        let (x, y) = combo(&p.pow(k), &q.pow(k), &rhs);
        let lin = &(&lc(&x) * &phi.pow(k)) + &lc(&y);
        let identity = &(&lin * &base) + &LaurentPoly::one();
        let qn = Rational::from_integer(q.pow(unit.n));
        let entry = if sign < 0 { qn.recip() } else { qn };
        let mut c = BTreeMap::new();
        c.insert("sign".into(), Value::from(sign));
        c.insert("psi_a".into(), poly_value(psi1));
        c.insert("psi_b".into(), poly_value(psi2));
        c.insert("a_poly".into(), poly_value(&bz.a_poly));
        c.insert("b_poly".into(), poly_value(&bz.b_poly));
        c.insert("m_bez".into(), int_value(&bz.m));
        c.insert("phi".into(), laurent_value(phi));
        c.insert("p".into(), int_value(&p));
        c.insert("q".into(), int_value(&q));
        c.insert("amp".into(), int_value(&split.amp));
        c.insert("r".into(), int_value(&split.r));
        c.insert("Nq".into(), Value::from(nq));
        c.insert("s".into(), int_value(&unit.s));
        c.insert("n".into(), Value::from(unit.n));
        c.insert("k".into(), Value::from(k));
        c.insert("x".into(), int_value(&x));
        c.insert("y".into(), int_value(&y));
        build(Regime::LaurentUnit, a, b, diag_target((entry, Monomial::one())), identity, c)
    };
    let up = make(1, nq, -&unit.s);
    let down = make(-1, unit.n + nq, unit.s.clone());
    Ok([up, down])
}

/// Pair for `diag(1, b^{n})` and `diag(1, b^{-n})` when the minimal
/// polynomial of `b` is monic.
pub fn certify_monic(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<[Certificate; 2]> {
    check_pair(a, b)?;
    let (psi1, psi2) = (a.minpoly(), b.minpoly());
    if !psi2.is_monic() {
        return Err(hyp(format!("minimal polynomial {psi2} of b is not monic")));
    }
    let bz = bezout_integerized(psi1, psi2)?;
    let base = &LaurentPoly::from_int_poly(&bz.a_poly) * &LaurentPoly::from_int_poly(psi1);
    let mut common = BTreeMap::new();
    common.insert("psi_a".to_string(), poly_value(psi1));
    common.insert("psi_b".to_string(), poly_value(psi2));
    common.insert("phi_bezout".to_string(), poly_value(&bz.a_poly));
    common.insert("b_poly".to_string(), poly_value(&bz.b_poly));
    common.insert("m_bez".to_string(), int_value(&bz.m));

    let (n, forward, inverse) = if bz.m.is_one() {
        let f = &(&LaurentPoly::t_pow(1) - &LaurentPoly::one()) * &base;
        let i = &(&LaurentPoly::t_pow(-1) - &LaurentPoly::one()) * &base;
        (1, f, i)
    } else {
        let lemma = monic_lemma(psi2, &bz.m)?;
        common.insert("phi_lemma".into(), laurent_value(&lemma.phi1));
        common.insert("phi2".into(), laurent_value(&lemma.phi2));
        let core = &lemma.phi1 * &base;
        (lemma.n, -core.clone(), &LaurentPoly::t_pow(-lemma.n) * &core)
    };
    common.insert("n".into(), Value::from(n));
    let make = |sign: i64, body: LaurentPoly| -> Certificate {
        let mut c = common.clone();
        c.insert("sign".into(), Value::from(sign));
        let target = diag_target((Rational::one(), Monomial::symbol("b", sign * n)));
        build(Regime::MonicB, a, b, target, &body + &LaurentPoly::one(), c)
    };
    Ok([make(1, forward), make(-1, inverse)])
}

/// Picks the regime: a Laurent witness if given, otherwise rational `b`,
/// otherwise monic minimal polynomial of `b`.
pub fn certify(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    phi: Option<&LaurentPoly>,
) -> Result<[Certificate; 2]> {
    if let Some(phi) = phi {
        return certify_laurent_unit(a, b, phi, None);
    }
    if let Some(q) = b.as_rational() {
        return certify_rational_b(a, &q);
    }
    if b.minpoly().is_monic() {
        return certify_monic(a, b);
    }
    Err(hyp(format!(
        "no regime applies: b is irrational with non-monic minimal polynomial {} and no Laurent witness was given",
        b.minpoly()
    )))
}
