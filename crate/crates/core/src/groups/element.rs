//! Group elements as slot → coefficient maps, membership, and the
//! conversion between slot form and coordinate vectors.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use super::expr::{Expr, Monomial, Vector};
use super::presentation::{CoeffRing, Presentation};
use crate::error::{Error, Result};
use crate::serde_util::{format_rational, parse_rational};
use crate::{Interval, Rational};

/// Slots reachable while resolving a vector before it is declared degenerate.
const MAX_RESOLVE_SLOTS: usize = 4096;

/// Basis slot: rule index and degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotKey {
    pub rule: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct GroupElement {
    coeffs: BTreeMap<SlotKey, Rational>,
}

impl GroupElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn slot(key: SlotKey, c: Rational) -> Self {
        let mut g = Self::zero();
        g.add_slot(key, c);
        g
    }

    pub fn add_slot(&mut self, key: SlotKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<SlotKey, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            out.add_slot(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.coeffs {
            out.add_slot(*k, c * q);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(k, c)| json!({"rule": k.rule, "degree": k.degree, "coeff": format_rational(c)}))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NonMember(String),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// Outcome of writing a vector in slot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Element(GroupElement),
    /// Not in the ℚ-span of the basis slots.
    OffBasis(String),
}

#[derive(Deserialize)]
struct EntryRepr {
    #[serde(default)]
    radical: u8,
    degree: i64,
    coeff: Value,
    rule: Option<usize>,
}

impl Presentation {
    /// Coordinate monomials of a slot (`None` for a zero coordinate).
    pub fn slot_monomials(&self, key: SlotKey) -> Vec<Option<Monomial>> {
        self.rules[key.rule].coords.iter().map(|t| t.as_ref().map(|t| t.at(key.degree))).collect()
    }

    pub fn slot_vector(&self, key: SlotKey) -> Vector {
        self.slot_monomials(key)
            .into_iter()
            .map(|m| m.map_or_else(Expr::zero, |m| Expr::term(Rational::one(), m)))
            .collect()
    }

    pub fn to_vector(&self, g: &GroupElement) -> Vector {
        let mut v = vec![Expr::zero(); self.dim];
        for (k, c) in g.coeffs() {
            for (j, m) in self.slot_monomials(*k).into_iter().enumerate() {
                if let Some(m) = m {
                    v[j].add_term(c.clone(), m);
                }
            }
        }
        v
    }

    /// Exact membership: every coefficient sits in a slot of the presentation
    /// and lies in that slot's ring.
    pub fn is_member(&self, g: &GroupElement) -> Membership {
        for (k, c) in g.coeffs() {
            let Some(rule) = self.rules.get(k.rule) else {
                return Membership::NonMember(format!("no basis rule {}", k.rule));
            };
            if !rule.degrees.contains(k.degree) {
                return Membership::NonMember(format!("rule {} has no slot at degree {}", k.rule, k.degree));
            }
            match rule.ring {
                CoeffRing::Q => {}
                CoeffRing::Z if c.is_integer() => {}
                CoeffRing::Z => {
                    return Membership::NonMember(format!(
                        "{} coefficient not integral: {} at degree {}",
                        rule.describe(k.degree),
                        format_rational(c),
                        k.degree
                    ))
                }
                CoeffRing::Zero => {
                    return Membership::NonMember(format!(
                        "{} slot admits only 0, found {} at degree {}",
                        rule.describe(k.degree),
                        format_rational(c),
                        k.degree
                    ))
                }
            }
        }
        Membership::Member
    }

    /// Slots whose coordinate `j` is the monomial `m`.
    fn slots_for(&self, j: usize, m: &Monomial) -> Result<Vec<SlotKey>> {
        let mut out = Vec::new();
        for (r, rule) in self.rules.iter().enumerate() {
            let Some(t) = &rule.coords[j] else { continue };
            match t.solve(m) {
                None => {}
                Some(Some(d)) => {
                    if rule.degrees.contains(d) {
                        out.push(SlotKey { rule: r, degree: d });
                    }
                }
                Some(None) => match &rule.degrees {
                    super::presentation::DegreeSet::Only(ds) => {
                        out.extend(ds.iter().map(|&d| SlotKey { rule: r, degree: d }));
                    }
                    _ => {
                        return Err(Error::DegeneratePresentation(format!(
                            "rule {r} has a degree-independent coordinate {t} over infinitely many degrees"
                        )))
                    }
                },
            }
        }
        Ok(out)
    }

    /// Writes `v` as a ℚ-combination of slot vectors. Distinct monomials are
    /// treated as linearly independent.
    pub fn resolve(&self, v: &Vector) -> Result<Resolution> {
        if v.len() != self.dim {
            return Err(Error::InvalidInput(format!("vector has {} coordinates, expected {}", v.len(), self.dim)));
        }
        let mut rows: BTreeSet<(usize, Monomial)> = BTreeSet::new();
        let mut pending: Vec<(usize, Monomial)> = Vec::new();
        for (j, e) in v.iter().enumerate() {
            for (m, _) in e.terms() {
                pending.push((j, m.clone()));
            }
        }
        let mut slots: BTreeSet<SlotKey> = BTreeSet::new();
        while let Some((j, m)) = pending.pop() {
            if !rows.insert((j, m.clone())) {
                continue;
            }
            let found = self.slots_for(j, &m)?;
            if found.is_empty() && !v[j].coeff(&m).is_zero() {
                return Ok(Resolution::OffBasis(format!(
                    "monomial {m} in coordinate {} matches no basis slot",
                    j + 1
                )));
            }
            for s in found {
                if slots.insert(s) {
                    if slots.len() > MAX_RESOLVE_SLOTS {
                        return Err(Error::DegeneratePresentation("slot closure does not terminate".into()));
                    }
                    for (k, mk) in self.slot_monomials(s).into_iter().enumerate() {
                        if let Some(mk) = mk {
                            pending.push((k, mk));
                        }
                    }
                }
            }
        }
        let cols: Vec<SlotKey> = slots.into_iter().collect();
        let row_list: Vec<(usize, Monomial)> = rows.into_iter().collect();
        let row_index: BTreeMap<&(usize, Monomial), usize> =
            row_list.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let n = cols.len();
        let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n + 1]; row_list.len()];
        for (c, s) in cols.iter().enumerate() {
            for (k, mk) in self.slot_monomials(*s).into_iter().enumerate() {
                if let Some(mk) = mk {
                    let r = row_index[&(k, mk)];
                    a[r][c] += Rational::one();
                }
            }
        }
        for (r, (j, m)) in row_list.iter().enumerate() {
            a[r][n] = v[*j].coeff(m);
        }
        match solve_exact(a, n) {
            Solve::Unique(x) => {
                let mut g = GroupElement::zero();
                for (s, c) in cols.iter().zip(x) {
                    g.add_slot(*s, c);
                }
                Ok(Resolution::Element(g))
            }
            Solve::Inconsistent => Ok(Resolution::OffBasis("not in the span of the basis slots".into())),
            Solve::Underdetermined => Err(Error::DegeneratePresentation(
                "basis slot vectors are linearly dependent".into(),
            )),
        }
    }

    /// Membership of an arbitrary coordinate vector.
    pub fn classify_vector(&self, v: &Vector) -> Result<Membership> {
        Ok(match self.resolve(v)? {
            Resolution::OffBasis(why) => Membership::NonMember(why),
            Resolution::Element(g) => self.is_member(&g),
        })
    }

    /// Parses `[{"radical": r, "degree": d, "coeff": "p/q", "rule"?: i}, ...]`.
    pub fn element_from_json(&self, v: &Value) -> Result<GroupElement> {
        let entries: Vec<EntryRepr> =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("element: {e}")))?;
        let mut g = GroupElement::zero();
        for e in entries {
            let c = match &e.coeff {
                Value::String(s) => parse_rational(s).map_err(Error::InvalidInput)?,
                Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().expect("i64").into()),
                other => return Err(Error::InvalidInput(format!("bad coefficient {other}"))),
            };
            let rule = match e.rule {
                Some(r) => {
                    let ok = self.rules.get(r).is_some_and(|rl| rl.radical == e.radical && rl.degrees.contains(e.degree));
                    if !ok {
                        return Err(Error::UnknownBasisMonomial(format!(
                            "rule {r} has no slot (radical {}, degree {})",
                            e.radical, e.degree
                        )));
                    }
                    r
                }
                None => self
                    .rules
                    .iter()
                    .position(|rl| rl.radical == e.radical && rl.degrees.contains(e.degree))
                    .ok_or_else(|| {
                        Error::UnknownBasisMonomial(format!(
                            "no basis slot with radical {} at degree {}",
                            e.radical, e.degree
                        ))
                    })?,
            };
            g.add_slot(SlotKey { rule, degree: e.degree }, c);
        }
        Ok(g)
    }

    /// Coordinate `k` (0-based) of `g`, with a numeric enclosure when every
    /// symbol carries an approximation.
    pub fn state_eval(&self, k: usize, g: &GroupElement) -> Result<(Expr, Option<Interval>)> {
        if k >= self.dim {
            return Err(Error::InvalidInput(format!("coordinate {} out of range 1..={}", k + 1, self.dim)));
        }
        let e = self.to_vector(g).swap_remove(k);
        let enc = self.env().ok().and_then(|env| e.enclosure(&env));
        Ok((e, enc))
    }

    /// Positive cone: zero, or strictly positive in every coordinate.
    pub fn is_positive(&self, g: &GroupElement) -> Result<bool> {
        if g.is_zero() {
            return Ok(true);
        }
        let env = self.env().unwrap_or_default();
        for e in self.to_vector(g) {
            if e.sign(&env)? <= 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x ≤ y` in the order with positive cone [`Presentation::is_positive`].
    pub fn le(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        self.is_positive(&y.sub(x))
    }
}

enum Solve {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined,
}

/// Gauss–Jordan on an augmented matrix with `n` unknowns.
fn solve_exact(mut a: Vec<Vec<Rational>>, n: usize) -> Solve {
    let rows = a.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(pivot_row, p);
        let inv = Rational::one() / a[pivot_row][col].clone();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let sub = &f * &a[pivot_row][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return Solve::Inconsistent;
    }
    if pivots.len() < n {
        return Solve::Underdetermined;
    }
    Solve::Unique((0..n).map(|i| a[i][n].clone()).collect())
}
