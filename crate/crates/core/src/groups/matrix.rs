use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::GroupElement;
use super::expr::{parse_term, Expr, Monomial, Vector};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::serde_util::format_rational;
use crate::Rational;

/// Positive scalar `q · m` with `q > 0`.
pub type Entry = (Rational, Monomial);

/// A matrix with exactly one nonzero entry per row, acting on row vectors:
/// `(v·M)[perm[i]] = v[i] · entries[i]`. For 2×2, `antidiag(a, b)` is
/// `[[0, a], [b, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    entries: Vec<Entry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Diagonal,
    Antidiagonal,
    Permutation,
}

fn entry_string((q, m): &Entry) -> String {
    match (q.is_one(), m.is_one()) {
        (_, true) => format_rational(q),
        (true, false) => m.to_string(),
        (false, false) => format!("{}*{m}", format_rational(q)),
    }
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, entries: Vec<Entry>) -> Result<Self> {
        let n = perm.len();
        if entries.len() != n || n == 0 {
            return Err(Error::InvalidInput("matrix needs one entry per row".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
            }
        }
        if let Some((q, m)) = entries.iter().find(|(q, _)| !q.is_positive()) {
            return Err(Error::InvalidInput(format!("entry {} is not positive", entry_string(&(q.clone(), m.clone())))));
        }
        Ok(Self { perm, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), entries: vec![(Rational::one(), Monomial::one()); n] }
    }

    pub fn diagonal(entries: Vec<Entry>) -> Result<Self> {
        Self::new((0..entries.len()).collect(), entries)
    }

    /// `[[0, a], [b, 0]]`.
    pub fn antidiagonal(a: Entry, b: Entry) -> Result<Self> {
        Self::new(vec![1, 0], vec![a, b])
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn shape(&self) -> Shape {
        if self.perm.iter().enumerate().all(|(i, &p)| i == p) {
            Shape::Diagonal
        } else if self.perm.iter().enumerate().all(|(i, &p)| p == self.dim() - 1 - i) {
            Shape::Antidiagonal
        } else {
            Shape::Permutation
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.entries.iter().flat_map(|(_, m)| m.exps().iter().map(|(s, _)| s.clone())).collect()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = vec![Expr::zero(); self.dim()];
        for (i, (q, m)) in self.entries.iter().enumerate() {
            out[self.perm[i]] = v[i].mul_term(q, m);
        }
        out
    }

    /// `self · other`: apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut perm = vec![0; self.dim()];
        let mut entries = Vec::with_capacity(self.dim());
        for (i, (q, m)) in self.entries.iter().enumerate() {
            let mid = self.perm[i];
            let (q2, m2) = &other.entries[mid];
            let (f, mm) = m.mul(m2);
            perm[i] = other.perm[mid];
            entries.push((q * q2 * f, mm));
        }
        Self { perm, entries }
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut entries = vec![(Rational::one(), Monomial::one()); n];
        for (i, (q, m)) in self.entries.iter().enumerate() {
            let j = self.perm[i];
            let (f, mi) = m.inverse();
            perm[j] = i;
            entries[j] = (f / q, mi);
        }
        Self { perm, entries }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.dim());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Some `n` with `gen^n == self`, if one exists within reach.
    pub fn log_base(&self, gen: &Self) -> Option<i64> {
        if self.dim() != gen.dim() {
            return None;
        }
        // An exponent of gen² grows linearly in n, which pins n down.
        let g2 = gen.then(gen);
        let s2 = self.then(self);
        if g2.shape() == Shape::Diagonal && s2.shape() == Shape::Diagonal {
            for (i, (_, m)) in g2.entries.iter().enumerate() {
                for (s, e) in m.exps() {
                    let target = s2.entries[i].1.exp(s);
                    if target % e != 0 {
                        return None;
                    }
                    let n = target / e;
                    return (gen.pow(n) == *self).then_some(n);
                }
            }
        }
        (-64..=64).find(|&n| gen.pow(n) == *self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<String> = self.entries.iter().map(entry_string).collect();
        match self.shape() {
            Shape::Diagonal => serde_json::json!({"shape": "diagonal", "entries": entries}),
            Shape::Antidiagonal if self.dim() == 2 => {
                serde_json::json!({"shape": "antidiagonal", "entries": entries})
            }
            _ => serde_json::json!({"shape": "permutation", "perm": self.perm, "entries": entries}),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Repr {
            shape: Shape,
            entries: Vec<String>,
            perm: Option<Vec<usize>>,
        }
        let r: Repr = serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("matrix: {e}")))?;
        let entries = r.entries.iter().map(|e| parse_term(e)).collect::<Result<Vec<_>>>()?;
        let n = entries.len();
        let perm = match (r.shape, r.perm) {
            (Shape::Diagonal, None) => (0..n).collect(),
            (Shape::Antidiagonal, None) => (0..n).rev().collect(),
            (Shape::Permutation, Some(p)) => p,
            _ => return Err(Error::InvalidInput("perm is given exactly for shape \"permutation\"".into())),
        };
        Self::new(perm, entries)
    }
}

impl Serialize for MonomialMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Self::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.entries.iter().map(entry_string).collect();
        match self.shape() {
            Shape::Diagonal => write!(f, "diag({})", entries.join(", ")),
            Shape::Antidiagonal => write!(f, "antidiag({})", entries.join(", ")),
            Shape::Permutation => write!(f, "perm({:?}; {})", self.perm, entries.join(", ")),
        }
    }
}

impl Presentation {
    fn check_expressible(&self, m: &MonomialMatrix) -> Result<()> {
        if m.dim() != self.dim {
            return Err(Error::InexpressibleAction(format!(
                "{}×{} matrix on a {}-dimensional group",
                m.dim(),
                m.dim(),
                self.dim
            )));
        }
        if let Some(s) = m.symbols().into_iter().find(|s| !self.has_symbol(s)) {
            return Err(Error::InexpressibleAction(format!("matrix uses symbol {s} unknown to the presentation")));
        }
        Ok(())
    }

    /// `g · M` as a coordinate vector; feed it to
    /// [`Presentation::classify_vector`] to test membership.
    pub fn apply_monomial(&self, g: &GroupElement, m: &MonomialMatrix) -> Result<Vector> {
        self.check_expressible(m)?;
        Ok(m.apply(&self.to_vector(g)))
    }

    pub(crate) fn expressible(&self, m: &MonomialMatrix) -> Result<()> {
        self.check_expressible(m)
    }
}
