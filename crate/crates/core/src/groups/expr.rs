//! Symbolic real expressions: finite ℚ-combinations of monomials
//! `∛2^r · ∏ sᵢ^{eᵢ}` in positive formal symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::serde_util::{format_rational, parse_rational};
use crate::{Interval, Rational};

/// Numeric enclosures for symbols, keyed by name.
pub type Env = BTreeMap<String, Interval>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    radical: u8,
    exps: Vec<(String, i64)>,
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

impl Monomial {
    pub fn one() -> Self {
        Self { radical: 0, exps: Vec::new() }
    }

    /// Normalizes: sorts by symbol, merges repeats, drops zero exponents.
    /// `radical` must be 0, 1 or 2.
    pub fn new(radical: u8, exps: impl IntoIterator<Item = (String, i64)>) -> Self {
        assert!(radical < 3, "radical index {radical} out of range");
        let mut map: BTreeMap<String, i64> = BTreeMap::new();
        for (s, e) in exps {
            *map.entry(s).or_insert(0) += e;
        }
        Self { radical, exps: map.into_iter().filter(|(_, e)| *e != 0).collect() }
    }

    pub fn symbol(name: &str, exp: i64) -> Self {
        Self::new(0, [(name.to_string(), exp)])
    }

    pub fn radical(&self) -> u8 {
        self.radical
    }

    pub fn exps(&self) -> &[(String, i64)] {
        &self.exps
    }

    pub fn exp(&self, name: &str) -> i64 {
        self.exps.iter().find(|(s, _)| s == name).map_or(0, |(_, e)| *e)
    }

    pub fn is_one(&self) -> bool {
        self.radical == 0 && self.exps.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn weight(&self) -> i64 {
        self.exps.iter().map(|(_, e)| e.abs()).sum()
    }

    /// `self · other = factor · monomial`; the factor is 2 when radicals
    /// overflow past `∛4`.
    pub fn mul(&self, other: &Self) -> (Rational, Monomial) {
        let r = self.radical + other.radical;
        let (factor, r) = if r >= 3 { (two(), r - 3) } else { (Rational::one(), r) };
        let m = Monomial::new(r, self.exps.iter().chain(&other.exps).cloned());
        (factor, m)
    }

    /// `∛2⁻¹ = ∛4 / 2` and `∛4⁻¹ = ∛2 / 2`.
    pub fn inverse(&self) -> (Rational, Monomial) {
        let (factor, r) = match self.radical {
            0 => (Rational::one(), 0),
            r => (Rational::one() / two(), 3 - r),
        };
        (factor, Monomial::new(r, self.exps.iter().map(|(s, e)| (s.clone(), -e))))
    }

    pub fn pow(&self, k: i64) -> (Rational, Monomial) {
        let (base_f, base) = if k < 0 { self.inverse() } else { (Rational::one(), self.clone()) };
        let mut f = Rational::one();
        let mut m = Monomial::one();
        for _ in 0..k.unsigned_abs() {
            let (g, n) = m.mul(&base);
            f = f * g * &base_f;
            m = n;
        }
        (f, m)
    }

    pub fn enclosure(&self, env: &Env) -> Option<Interval> {
        let mut acc = Interval::cbrt2().powi(self.radical as i64)?;
        for (s, e) in &self.exps {
            acc = acc * env.get(s)?.powi(*e)?;
        }
        Some(acc)
    }

    /// Parses `cbrt2*alpha^2*beta^-1`; `1` is the empty monomial.
    pub fn parse(text: &str) -> Result<Self> {
        let (q, m) = parse_term(text)?;
        if !q.is_one() {
            return Err(Error::InvalidInput(format!("{text:?} is not a bare monomial")));
        }
        Ok(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.radical {
            1 => parts.push("cbrt2".into()),
            2 => parts.push("cbrt4".into()),
            _ => {}
        }
        for (s, e) in &self.exps {
            parts.push(if *e == 1 { s.clone() } else { format!("{s}^{e}") });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn parse_int(text: &str) -> Result<i64> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    t.trim().parse().map_err(|_| Error::InvalidInput(format!("bad exponent {text:?}")))
}

/// One product term: rational literal, `cbrt2`, `cbrt4` and `name^k`
/// factors joined by `*`.
pub fn parse_term(text: &str) -> Result<(Rational, Monomial)> {
    let mut q = Rational::one();
    let mut m = Monomial::one();
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::InvalidInput("empty term".into()));
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (g, n) = match factor {
            "cbrt2" => (Rational::one(), Monomial::new(1, [])),
            "cbrt4" => (Rational::one(), Monomial::new(2, [])),
            _ if factor.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') => {
                (parse_rational(factor.trim_start_matches('+')).map_err(Error::InvalidInput)?, Monomial::one())
            }
            _ => {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n.trim(), parse_int(e)?),
                    None => (factor, 1),
                };
                let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !ok {
                    return Err(Error::InvalidInput(format!("bad factor {factor:?}")));
                }
                (Rational::one(), Monomial::symbol(name, e))
            }
        };
        let (h, p) = m.mul(&n);
        q = q * g * h;
        m = p;
    }
    Ok((q, m))
}

/// Finite sum `Σ qᵢ·mᵢ` with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rational>,
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Rational) -> Self {
        Self::term(q, Monomial::one())
    }

    pub fn term(q: Rational, m: Monomial) -> Self {
        let mut e = Self::zero();
        e.add_term(q, m);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, q: Rational, m: Monomial) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(q.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub fn mul_term(&self, q: &Rational, m: &Monomial) -> Self {
        let mut out = Self::zero();
        for (n, c) in &self.terms {
            let (f, p) = n.mul(m);
            out.add_term(c * q * f, p);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, q) in &other.terms {
            out = out.add(&self.mul_term(q, m));
        }
        out
    }

    /// The value when it is a plain rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn enclosure(&self, env: &Env) -> Option<Interval> {
        let mut acc = Interval::point(0.0);
        for (m, q) in &self.terms {
            acc = acc + Interval::from_rational(q) * m.enclosure(env)?;
        }
        Some(acc)
    }

    /// Exact for zero and single-term expressions (all monomials are
    /// positive); otherwise read off the enclosure, refusing to guess when
    /// it straddles zero.
    pub fn sign(&self, env: &Env) -> Result<i8> {
        if self.terms.is_empty() {
            return Ok(0);
        }
        if self.terms.len() == 1 {
            let q = self.terms.values().next().expect("one term");
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        let enc = self
            .enclosure(env)
            .ok_or_else(|| Error::NeedsRefinement(format!("no numeric enclosure for {self}")))?;
        if enc.is_positive() {
            Ok(1)
        } else if enc.is_negative() {
            Ok(-1)
        } else {
            Err(Error::NeedsRefinement(format!("sign of {self} undecided: enclosure {enc}")))
        }
    }

    /// Parses `3/2 + 2*alpha^2 - cbrt2*beta`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::zero();
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut pieces = Vec::new();
        let bytes: Vec<char> = text.chars().collect();
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > 0 && !matches!(bytes[..i].iter().rev().find(|c| !c.is_whitespace()), Some('^') | Some('*')) => {
                    pieces.push(bytes[start..i].iter().collect::<String>());
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(bytes[start..].iter().collect::<String>());
        for p in pieces {
            let p = p.trim();
            let (neg, body) = match p.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, p.strip_prefix('+').unwrap_or(p)),
            };
            let (q, m) = parse_term(body)?;
            out.add_term(if neg { -q } else { q }, m);
        }
        Ok(out)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (m.is_one(), mag.is_one()) {
                (true, _) => f.write_str(&format_rational(&mag))?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{}*{m}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A point of ℝⁿ with symbolic coordinates.
pub type Vector = Vec<Expr>;

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn radical_products_fold_back() {
        let r = Monomial::new(1, []);
        let (f, m) = r.mul(&Monomial::new(2, []));
        assert_eq!((f, m), (q(2, 1), Monomial::one()));
        let (f, m) = r.inverse();
        assert_eq!((f, m.radical()), (q(1, 2), 2));
        let (f, m) = r.pow(3);
        assert_eq!((f, m), (q(2, 1), Monomial::one()));
        let (f, m) = r.pow(-3);
        assert_eq!((f, m), (q(1, 2), Monomial::one()));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let e = Expr::parse("3/2 + 2*alpha^2 - cbrt2*beta^-1").unwrap();
        assert_eq!(e.coeff(&Monomial::one()), q(3, 2));
        assert_eq!(e.coeff(&Monomial::symbol("alpha", 2)), q(2, 1));
        assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
        assert_eq!(Expr::parse("0").unwrap(), Expr::zero());
    }

    #[test]
    fn signs() {
        let mut env = Env::new();
        env.insert("alpha".into(), Interval::around(2.5, 1e-12));
        assert_eq!(Expr::parse("alpha - 2").unwrap().sign(&env), Ok(1));
        assert_eq!(Expr::parse("-1/3*alpha").unwrap().sign(&env), Ok(-1));
        assert!(matches!(Expr::parse("alpha - 5/2").unwrap().sign(&env), Err(Error::NeedsRefinement(_))));
        assert!(matches!(Expr::parse("beta - 1").unwrap().sign(&env), Err(Error::NeedsRefinement(_))));
    }

    #[test]
    fn product_distributes() {
        let a = Expr::parse("1 + alpha").unwrap();
        let b = Expr::parse("1 - alpha").unwrap();
        assert_eq!(a.mul(&b), Expr::parse("1 - alpha^2").unwrap());
    }
}
