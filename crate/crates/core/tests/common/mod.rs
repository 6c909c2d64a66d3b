//! Helpers shared by the integration and acceptance targets.
#![allow(dead_code)]

use afgroup::exactnum::{real_roots, AlgebraicNumber, CubicExt, RatFunction};
use afgroup::{IntPoly, RatPoly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ip(c: &[i64]) -> IntPoly {
    IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Degree exactly `deg`, coefficients in `[-bound, bound]`.
pub fn random_poly(r: &mut impl Rng, deg: usize, bound: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..=deg).map(|_| r.gen_range(-bound..=bound)).collect();
    while c[deg] == 0 {
        c[deg] = r.gen_range(-bound..=bound);
    }
    ip(&c)
}

/// A positive real algebraic number `≠ 1` of degree at most `max_deg`.
pub fn random_algebraic(r: &mut impl Rng, max_deg: usize) -> AlgebraicNumber {
    loop {
        let deg = r.gen_range(1..=max_deg);
        let mut f = random_poly(r, deg, 5);
        if f.coeff(0).is_zero() {
            continue;
        }
        if f.leading().unwrap() < &BigInt::zero() {
            f = -f;
        }
        let Ok(roots) = real_roots(&f) else { continue };
        let roots: Vec<_> = roots.into_iter().filter(|(lo, _)| *lo > Rational::zero()).collect();
        let Some((lo, hi)) = roots.choose(r).cloned() else { continue };
        let Ok(a) = AlgebraicNumber::root_of(&f, lo, hi, false) else { continue };
        if a.cmp_rational(&Rational::one()) != std::cmp::Ordering::Equal {
            return a;
        }
    }
}

/// `p/q` in lowest terms with `1 ≤ p ≤ max`, `2 ≤ q ≤ max`.
pub fn random_fraction(r: &mut impl Rng, max: i64) -> Rational {
    loop {
        let (p, d) = (r.gen_range(1..=max), r.gen_range(2..=max));
        if p.gcd(&d) == 1 {
            return q(p, d);
        }
    }
}

fn random_ratpoly(r: &mut impl Rng, max_deg: usize) -> RatPoly {
    let deg = r.gen_range(0..=max_deg);
    RatPoly::new((0..=deg).map(|_| q(r.gen_range(-9..=9), r.gen_range(1..=5))).collect())
}

pub fn random_ratfunc(r: &mut impl Rng, max_deg: usize) -> RatFunction {
    loop {
        let num = random_ratpoly(r, max_deg);
        let den = random_ratpoly(r, max_deg);
        if let Ok(f) = RatFunction::new(num, den) {
            return f;
        }
    }
}

pub fn random_cubic(r: &mut impl Rng) -> CubicExt<RatFunction> {
    loop {
        let mut c = || {
            if r.gen_bool(0.2) {
                RatFunction::zero()
            } else {
                random_ratfunc(r, 2)
            }
        };
        let x = CubicExt::new(c(), c(), c());
        if !x.is_zero() {
            return x;
        }
    }
}

/// Paths to every exact datum of a certificate: identity, constants,
/// target and the number descriptors. Isolating intervals are excluded,
/// since any interval isolating the same root describes the same number.
pub fn evidence_leaves(cert: &Value) -> Vec<Vec<String>> {
    fn walk(v: &Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    if matches!(k.as_str(), "interval" | "kind" | "asserted_minimal") {
                        continue;
                    }
                    path.push(k.clone());
                    walk(x, path, out);
                    path.pop();
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    path.push(i.to_string());
                    walk(x, path, out);
                    path.pop();
                }
            }
            _ => out.push(path.clone()),
        }
    }
    let mut out = Vec::new();
    for key in ["schema_version", "identity", "constants", "target", "a", "b"] {
        let mut path = vec![key.to_string()];
        walk(&cert[key], &mut path, &mut out);
    }
    out
}

fn perturb(v: &Value) -> Value {
    match v {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => Value::from(n.as_i64().unwrap_or(0) + 1),
        Value::String(s) => {
            if let Ok(n) = s.parse::<BigInt>() {
                Value::String((n + BigInt::one()).to_string())
            } else if let Ok(x) = afgroup::serde_util::parse_rational(s) {
                Value::String(afgroup::serde_util::format_rational(&(x + Rational::one())))
            } else {
                Value::String(format!("2*{s}"))
            }
        }
        other => other.clone(),
    }
}

/// The certificate with the leaf at `path` changed.
pub fn corrupt(cert: &Value, path: &[String]) -> Value {
    let mut out = cert.clone();
    let mut cur = &mut out;
    for seg in path {
        cur = match cur {
            Value::Array(a) => &mut a[seg.parse::<usize>().unwrap()],
            other => &mut other[seg.as_str()],
        };
    }
    *cur = perturb(cur);
    out
}
