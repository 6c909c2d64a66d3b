//! Replay of a certificate from its JSON content alone. Only polynomial
//! arithmetic and reduction modulo minimal polynomials are used here; none
//! of the search procedures that produced the certificate are rerun.

use std::cmp::{max, Ordering};
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::Value;

use super::{Certificate, Regime, Verdict, SCHEMA_VERSION};
use crate::exactnum::AlgebraicNumber;
use crate::groups::Shape;
use crate::laurent::eval_mod;
use crate::serde_util::laurent_poly;
use crate::{IntPoly, LaurentPoly, RatPoly, Rational};

type Check<T = ()> = std::result::Result<T, String>;

pub fn verify_json(v: &Value) -> Verdict {
    match serde_json::from_value::<Certificate>(v.clone()) {
        Ok(c) => verify_certificate(&c),
        Err(e) => Verdict::Rejected(format!("malformed certificate: {e}")),
    }
}

pub fn verify_certificate(c: &Certificate) -> Verdict {
    match replay(c) {
        Ok(()) => Verdict::Accepted,
        Err(reason) => Verdict::Rejected(reason),
    }
}

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn replay(c: &Certificate) -> Check {
    ensure(c.schema_version == SCHEMA_VERSION, || {
        format!("unsupported schema_version {}", c.schema_version)
    })?;
    let a = c.a.to_algebraic().ok_or("a must be an exact number")?;
    let b = c.b.to_algebraic().ok_or("b must be an exact number")?;
    for (name, x) in [("a", &a), ("b", &b)] {
        ensure(x.is_positive(), || format!("{name} is not positive"))?;
        ensure(x.cmp_rational(&Rational::one()) != Ordering::Equal, || format!("{name} = 1"))?;
    }
    ensure(!a.same_as(&b), || "a = b".into())?;
    ensure(c.identity.is_integral(), || "identity has non-integer coefficients".into())?;

    let target = target_residue(c, &b)?;
    ensure(target != RatPoly::one(), || "target is the identity matrix".into())?;
    let at_a = eval_mod(&c.identity, a.minpoly()).map_err(|e| e.to_string())?;
    ensure(at_a == RatPoly::one(), || format!("identity evaluates to {at_a} at a, not 1"))?;
    let at_b = eval_mod(&c.identity, b.minpoly()).map_err(|e| e.to_string())?;
    ensure(at_b == target, || format!("identity evaluates to {at_b} at b, not the target {target}"))?;

    let k = Consts(&c.constants);
    match c.regime {
        Regime::RationalB => rational_b(c, &k, &a, &b),
        Regime::LaurentUnit => laurent_unit(c, &k, &a, &b),
        Regime::MonicB => monic_b(c, &k, &a, &b),
    }
}

/// Second diagonal entry `c · b^e` as a residue modulo the minimal
/// polynomial of `b`; the first entry must be exactly 1.
fn target_residue(c: &Certificate, b: &AlgebraicNumber) -> Check<RatPoly> {
    let t = &c.target;
    ensure(t.dim() == 2 && t.shape() == Shape::Diagonal, || format!("target {t} is not a 2×2 diagonal matrix"))?;
    let (q0, m0) = &t.entries()[0];
    ensure(q0.is_one() && m0.is_one(), || format!("first target entry of {t} is not 1"))?;
    let (q1, m1) = &t.entries()[1];
    ensure(m1.radical() == 0 && m1.exps().iter().all(|(s, _)| s == "b"), || {
        format!("second target entry of {t} is not a rational multiple of a power of b")
    })?;
    let power = LaurentPoly::monomial(q1.clone(), m1.exp("b"));
    eval_mod(&power, b.minpoly()).map_err(|e| e.to_string())
}

fn target_value(c: &Certificate) -> (Rational, i64) {
    let (q, m) = &c.target.entries()[1];
    (q.clone(), m.exp("b"))
}

struct Consts<'a>(&'a BTreeMap<String, Value>);

impl Consts<'_> {
    fn keys(&self, expected: &[&str]) -> Check {
        let have: BTreeSet<&str> = self.0.keys().map(String::as_str).collect();
        let want: BTreeSet<&str> = expected.iter().copied().collect();
        ensure(have == want, || {
            let extra: Vec<_> = have.difference(&want).collect();
            let missing: Vec<_> = want.difference(&have).collect();
            format!("constants mismatch: unexpected {extra:?}, missing {missing:?}")
        })
    }

    fn get(&self, key: &str) -> Check<&Value> {
        self.0.get(key).ok_or_else(|| format!("missing constant {key}"))
    }

    fn int(&self, key: &str) -> Check<BigInt> {
        parse_int(self.get(key)?).ok_or_else(|| format!("constant {key} is not an integer"))
    }

    fn small(&self, key: &str) -> Check<i64> {
        self.get(key)?.as_i64().ok_or_else(|| format!("constant {key} is not a machine integer"))
    }

    fn flag(&self, key: &str) -> Check<bool> {
        self.get(key)?.as_bool().ok_or_else(|| format!("constant {key} is not a boolean"))
    }

    fn poly(&self, key: &str) -> Check<IntPoly> {
        let items = self.get(key)?.as_array().ok_or_else(|| format!("constant {key} is not an array"))?;
        let coeffs = items.iter().map(parse_int).collect::<Option<Vec<_>>>();
        let coeffs = coeffs.ok_or_else(|| format!("constant {key} has a non-integer coefficient"))?;
        let p = IntPoly::new(coeffs.clone());
        ensure(p.coeffs().len() == coeffs.len(), || format!("constant {key} has trailing zeros"))?;
        Ok(p)
    }

    fn laurent(&self, key: &str) -> Check<LaurentPoly> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "laurent_poly")] LaurentPoly);
        let W(p) = serde_json::from_value(self.get(key)?.clone()).map_err(|e| format!("constant {key}: {e}"))?;
        ensure(p.is_integral(), || format!("constant {key} has non-integer coefficients"))?;
        Ok(p)
    }

    fn sign(&self) -> Check<i64> {
        let s = self.small("sign")?;
        ensure(s == 1 || s == -1, || format!("sign must be ±1, got {s}"))?;
        Ok(s)
    }
}

fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::String(s) => s.parse().ok(),
        Value::Number(n) => n.as_i64().map(BigInt::from),
        _ => None,
    }
}

fn lc(c: &BigInt) -> LaurentPoly {
    LaurentPoly::constant(Rational::from_integer(c.clone()))
}

fn lp(p: &IntPoly) -> LaurentPoly {
    LaurentPoly::from_int_poly(p)
}

fn nonneg(key: &str, v: i64) -> Check<u32> {
    u32::try_from(v).map_err(|_| format!("{key} = {v} is out of range"))
}

fn rational_b(c: &Certificate, k: &Consts, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Check {
    k.keys(&["sign", "reversed", "psi", "p", "q", "M", "amp", "r", "m", "s", "N", "k", "x", "y"])?;
    let bq = b.as_rational().ok_or("b is not rational")?;
    let sign = k.sign()?;
    let reversed = k.flag("reversed")?;
    ensure(reversed == bq.denom().is_one(), || "reversal flag disagrees with b".into())?;
    let (want_psi, want_p, want_q) = if reversed {
        let mut rev: Vec<BigInt> = a.minpoly().coeffs().to_vec();
        rev.reverse();
        (IntPoly::new(rev).primitive(), bq.denom().clone(), bq.numer().clone())
    } else {
        (a.minpoly().clone(), bq.numer().clone(), bq.denom().clone())
    };
    let psi = k.poly("psi")?;
    ensure(psi == want_psi, || "psi is not the expected minimal polynomial".into())?;
    let (p, q) = (k.int("p")?, k.int("q")?);
    ensure(p == want_p && q == want_q, || "p/q does not match b".into())?;
    ensure(q > BigInt::one(), || "q must exceed 1".into())?;
    let n = psi.degree().ok_or("psi is zero")? as i64;
    let big_m = k.int("M")?;
    let expect_m: BigInt = psi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a_i)| a_i * p.pow(i as u32) * q.pow((n as usize - i) as u32))
        .sum();
    ensure(big_m == expect_m && !big_m.is_zero(), || "M is not q^n psi(p/q)".into())?;
    let (amp, r, s) = (k.int("amp")?, k.int("r")?, k.int("s")?);
    let m = k.small("m")?;
    let big_n = k.small("N")?;
    let (mu, nu) = (nonneg("m", m)?, nonneg("N", big_n)?);
    ensure(&amp * &big_m == &r * q.pow(mu), || "amp·M ≠ r·q^m".into())?;
    ensure(r.gcd(&q).is_one(), || "gcd(r, q) ≠ 1".into())?;
    ensure(big_n >= 1 && &s * &r + q.pow(nu) == BigInt::one(), || "s·r + q^N ≠ 1".into())?;
    let kk = k.small("k")?;
    let (want_k, rhs) = if sign < 0 {
        (big_n + m - n, s.clone())
    } else {
        (max(m - n, 0), -&s * q.pow(nonneg("n - m", max(n - m, 0))?))
    };
    ensure(kk == want_k, || format!("k = {kk}, expected {want_k}"))?;
    let ku = nonneg("k", kk)?;
    let (x, y) = (k.int("x")?, k.int("y")?);
    ensure(&x * p.pow(ku) + &y * q.pow(ku) == rhs, || "x·p^k + y·q^k has the wrong value".into())?;
    let lin = &lc(&x).shift(kk) + &lc(&y);
    let mut rebuilt = &(&(&lc(&amp) * &lin) * &lp(&psi)) + &LaurentPoly::one();
    if reversed {
        rebuilt = rebuilt.invert_variable();
    }
    ensure(rebuilt == c.identity, || "identity does not match its construction".into())?;
    let qn = Rational::from_integer(q.pow(nu));
    let want = if sign < 0 { qn.recip() } else { qn };
    ensure(target_value(c) == (want, 0), || "target entry does not match q^(±N)".into())
}

fn bezout_check(k: &Consts, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Check<(IntPoly, BigInt)> {
    let (pa, pb) = (k.poly("psi_a")?, k.poly("psi_b")?);
    ensure(&pa == a.minpoly() && &pb == b.minpoly(), || "psi_a/psi_b are not the minimal polynomials".into())?;
    let a_key = if k.0.contains_key("phi_bezout") { "phi_bezout" } else { "a_poly" };
    let (u, v, m) = (k.poly(a_key)?, k.poly("b_poly")?, k.int("m_bez")?);
    ensure(m > BigInt::zero(), || "m_bez must be positive".into())?;
    ensure(&(&u * &pa) + &(&v * &pb) == IntPoly::constant(m.clone()), || "Bezout relation fails".into())?;
    Ok((u, m))
}

fn laurent_unit(c: &Certificate, k: &Consts, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Check {
    k.keys(&[
        "sign", "psi_a", "psi_b", "a_poly", "b_poly", "m_bez", "phi", "p", "q", "amp", "r", "Nq", "s", "n", "k",
        "x", "y",
    ])?;
    let sign = k.sign()?;
    let (u, m_bez) = bezout_check(k, a, b)?;
    let phi = k.laurent("phi")?;
    let (p, q) = (k.int("p")?, k.int("q")?);
    ensure(q > BigInt::one() && !p.is_zero(), || "need q ≥ 2 and p ≠ 0".into())?;
    let at_b = eval_mod(&phi, b.minpoly()).map_err(|e| e.to_string())?;
    ensure(at_b == RatPoly::constant(Rational::new(p.clone(), q.clone())) && p.gcd(&q).is_one(), || {
        "phi(b) ≠ p/q in lowest terms".into()
    })?;
    let (amp, r, s) = (k.int("amp")?, k.int("r")?, k.int("s")?);
    let (nq, n) = (nonneg("Nq", k.small("Nq")?)?, nonneg("n", k.small("n")?)?);
    ensure(&amp * &m_bez == &r * q.pow(nq), || "amp·m_bez ≠ r·q^Nq".into())?;
    ensure(n >= 1 && &s * &r + q.pow(n) == BigInt::one(), || "s·r + q^n ≠ 1".into())?;
    let kk = nonneg("k", k.small("k")?)?;
    let (want_k, rhs) = if sign > 0 { (nq, -&s) } else { (n + nq, s.clone()) };
    ensure(kk == want_k, || format!("k = {kk}, expected {want_k}"))?;
    let (x, y) = (k.int("x")?, k.int("y")?);
    ensure(&x * p.pow(kk) + &y * q.pow(kk) == rhs, || "x·p^k + y·q^k has the wrong value".into())?;
    let lin = &(&lc(&x) * &phi.pow(kk)) + &lc(&y);
    let rebuilt = &(&(&lin * &lc(&amp)) * &(&lp(&u) * &lp(a.minpoly()))) + &LaurentPoly::one();
    ensure(rebuilt == c.identity, || "identity does not match its construction".into())?;
    let qn = Rational::from_integer(q.pow(n));
    let want = if sign > 0 { qn } else { qn.recip() };
    ensure(target_value(c) == (want, 0), || "target entry does not match q^(±n)".into())
}

fn monic_b(c: &Certificate, k: &Consts, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Check {
    let sign = k.sign()?;
    ensure(b.minpoly().is_monic(), || "minimal polynomial of b is not monic".into())?;
    let (u, m_bez) = bezout_check(k, a, b)?;
    let n = k.small("n")?;
    let base = &lp(&u) * &lp(a.minpoly());
    let body = if m_bez.is_one() {
        k.keys(&["sign", "psi_a", "psi_b", "phi_bezout", "b_poly", "m_bez", "n"])?;
        ensure(n == 1, || "n must be 1 when m_bez = 1".into())?;
        &(&LaurentPoly::t_pow(sign) - &LaurentPoly::one()) * &base
    } else {
        k.keys(&["sign", "psi_a", "psi_b", "phi_bezout", "b_poly", "m_bez", "n", "phi_lemma", "phi2"])?;
        let (phi1, phi2) = (k.laurent("phi_lemma")?, k.laurent("phi2")?);
        let lemma = &(&(&lc(&m_bez) * &phi1) + &(&lp(b.minpoly()) * &phi2)) + &LaurentPoly::t_pow(n);
        ensure(n != 0 && lemma == LaurentPoly::one(), || "m·phi1 + psi_b·phi2 + t^n ≠ 1".into())?;
        let core = &phi1 * &base;
        if sign > 0 {
            -core
        } else {
            &LaurentPoly::t_pow(-n) * &core
        }
    };
    ensure(&body + &LaurentPoly::one() == c.identity, || "identity does not match its construction".into())?;
    ensure(target_value(c) == (Rational::one(), sign * n), || "target entry does not match b^(±n)".into())
}
