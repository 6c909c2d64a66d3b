//! Basis-resolved presentations: a group is the set of finite sums of
//! basis slots with coefficients in each slot's ring.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::element::GroupElement;
use super::expr::{Env, Monomial};
use crate::error::{Error, Result};
use crate::exactnum::SymbolicReal;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoeffRing {
    Z,
    Q,
    #[serde(rename = "zero")]
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeSet {
    Even,
    Odd,
    All,
    Only(Vec<i64>),
}

impl DegreeSet {
    pub fn contains(&self, d: i64) -> bool {
        match self {
            DegreeSet::Even => d % 2 == 0,
            DegreeSet::Odd => d % 2 != 0,
            DegreeSet::All => true,
            DegreeSet::Only(v) => v.contains(&d),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, DegreeSet::Only(_))
    }

    fn label(&self, d: i64) -> String {
        match self {
            DegreeSet::Even => "even-degree".into(),
            DegreeSet::Odd => "odd-degree".into(),
            _ => format!("degree-{d}"),
        }
    }
}

/// `∛2^radical · ∏ s^{slope·d + offset}`: a coordinate as a function of the
/// slot degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub radical: u8,
    pub exps: Vec<(String, i64, i64)>,
}

impl Template {
    pub fn power(name: &str, slope: i64) -> Self {
        Self { radical: 0, exps: vec![(name.to_string(), slope, 0)] }
    }

    pub fn with_radical(mut self, radical: u8) -> Self {
        self.radical = radical;
        self
    }

    pub fn at(&self, d: i64) -> Monomial {
        Monomial::new(self.radical, self.exps.iter().map(|(s, a, b)| (s.clone(), a * d + b)))
    }

    /// Degrees `d` with `self.at(d) == m`: `None` means every degree.
    pub fn solve(&self, m: &Monomial) -> Option<Option<i64>> {
        if m.radical() != self.radical {
            return None;
        }
        let mut d: Option<i64> = None;
        for (s, e) in m.exps() {
            if !self.exps.iter().any(|(t, _, _)| t == s) && *e != 0 {
                return None;
            }
        }
        for (s, slope, offset) in &self.exps {
            let e = m.exp(s);
            if *slope == 0 {
                if *offset != e {
                    return None;
                }
                continue;
            }
            let diff = e - offset;
            if diff % slope != 0 {
                return None;
            }
            let cand = diff / slope;
            match d {
                Some(prev) if prev != cand => return None,
                _ => d = Some(cand),
            }
        }
        Some(d)
    }

    pub fn max_slope(&self) -> i64 {
        self.exps.iter().map(|(_, a, _)| a.abs()).max().unwrap_or(0)
    }

    pub fn max_offset(&self) -> i64 {
        self.exps.iter().map(|(_, _, b)| b.abs()).max().unwrap_or(0)
    }

    /// Parses `alpha^d`, `cbrt2*alpha^(2d+1)`, `beta^-d*gamma^3`, `1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut t = Template { radical: 0, exps: Vec::new() };
        let mut radical = 0u8;
        for factor in text.split('*') {
            let factor = factor.trim();
            match factor {
                "1" => {}
                "cbrt2" => radical += 1,
                "cbrt4" => radical += 2,
                _ => {
                    let (name, exp) = factor.split_once('^').unwrap_or((factor, "1"));
                    let name = name.trim();
                    if !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                    {
                        return Err(Error::InvalidInput(format!("bad template factor {factor:?}")));
                    }
                    let (a, b) = parse_affine(exp)?;
                    t.exps.push((name.to_string(), a, b));
                }
            }
        }
        if radical > 2 {
            return Err(Error::InvalidInput(format!("radical part of {text:?} exceeds cbrt4")));
        }
        t.radical = radical;
        Ok(t)
    }
}

/// `slope·d + offset` from text like `d`, `-d`, `(2d+1)`, `3`.
fn parse_affine(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidInput(format!("bad exponent {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
    if s.is_empty() {
        return Err(bad());
    }
    let (mut slope, mut offset) = (0i64, 0i64);
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() {
            tokens.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    tokens.push(cur);
    for tok in tokens {
        if let Some(coef) = tok.strip_suffix('d') {
            let c = match coef {
                "" | "+" => 1,
                "-" => -1,
                c => c.trim_start_matches('+').parse().map_err(|_| bad())?,
            };
            slope += c;
        } else {
            offset += tok.trim_start_matches('+').parse::<i64>().map_err(|_| bad())?;
        }
    }
    Ok((slope, offset))
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.radical {
            1 => parts.push("cbrt2".into()),
            2 => parts.push("cbrt4".into()),
            _ => {}
        }
        for (s, a, b) in &self.exps {
            let lin = match *a {
                0 => String::new(),
                1 => "d".into(),
                -1 => "-d".into(),
                a => format!("{a}d"),
            };
            let exp = match (lin.is_empty(), *b) {
                (true, b) => b.to_string(),
                (false, 0) => lin,
                (false, b) if b > 0 => format!("({lin}+{b})"),
                (false, b) => format!("({lin}{b})"),
            };
            parts.push(if exp == "1" { s.clone() } else { format!("{s}^{exp}") });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A family of basis slots `(radical, d)` for `d` in `degrees`, each
/// carrying the coordinate vector given by `coords` at `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisRule {
    pub radical: u8,
    pub degrees: DegreeSet,
    pub ring: CoeffRing,
    pub coords: Vec<Option<Template>>,
}

impl BasisRule {
    pub fn describe(&self, d: i64) -> String {
        let mut s = self.degrees.label(d);
        match self.radical {
            1 => s.push_str(" cbrt2"),
            2 => s.push_str(" cbrt4"),
            _ => {}
        }
        s
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "radical": self.radical,
            "ring": self.ring,
            "coords": self.coords.iter().map(|c| c.as_ref().map_or("0".to_string(), |t| t.to_string())).collect::<Vec<_>>(),
        });
        match &self.degrees {
            DegreeSet::Even => v["degree_parity"] = json!("even"),
            DegreeSet::Odd => v["degree_parity"] = json!("odd"),
            DegreeSet::All => v["degree_parity"] = json!("all"),
            DegreeSet::Only(ds) => v["degrees"] = json!(ds),
        }
        v
    }
}

#[derive(Deserialize)]
struct RuleRepr {
    #[serde(default)]
    radical: u8,
    degree_parity: Option<String>,
    degrees: Option<Vec<i64>>,
    ring: CoeffRing,
    coords: Vec<String>,
}

impl TryFrom<RuleRepr> for BasisRule {
    type Error = Error;

    fn try_from(r: RuleRepr) -> Result<Self> {
        if r.radical > 2 {
            return Err(Error::InvalidInput(format!("radical index {} out of range", r.radical)));
        }
        let degrees = match (r.degree_parity.as_deref(), r.degrees) {
            (Some("even"), None) => DegreeSet::Even,
            (Some("odd"), None) => DegreeSet::Odd,
            (Some("all"), None) => DegreeSet::All,
            (None, Some(ds)) => DegreeSet::Only(ds),
            _ => return Err(Error::InvalidInput("basis rule needs degree_parity (even|odd|all) or degrees".into())),
        };
        let coords = r
            .coords
            .iter()
            .map(|c| if c.trim() == "0" { Ok(None) } else { Template::parse(c).map(Some) })
            .collect::<Result<Vec<_>>>()?;
        Ok(BasisRule { radical: r.radical, degrees, ring: r.ring, coords })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BuilderTag {
    T1,
    T3,
    T5,
    T6,
    #[serde(rename = "custom")]
    Custom,
}

impl fmt::Display for BuilderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BuilderTag::T1 => "T1",
            BuilderTag::T3 => "T3",
            BuilderTag::T5 => "T5",
            BuilderTag::T6 => "T6",
            BuilderTag::Custom => "custom",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub tag: BuilderTag,
    pub dim: usize,
    pub symbols: Vec<SymbolicReal>,
    pub rules: Vec<BasisRule>,
    /// Per-coordinate monomial by which the natural degree shift acts; used
    /// to generate candidate matrices.
    pub shift: Vec<Monomial>,
    pub assumptions: Vec<String>,
    unit: GroupElement,
}

fn sym_names(symbols: &[SymbolicReal]) -> Vec<&str> {
    symbols.iter().map(|s| s.name.as_str()).collect()
}

impl Presentation {
    /// Validates the rule table and resolves the order unit `(1, …, 1)`.
    pub fn new(
        tag: BuilderTag,
        symbols: Vec<SymbolicReal>,
        rules: Vec<BasisRule>,
        shift: Vec<Monomial>,
        assumptions: Vec<String>,
    ) -> Result<Self> {
        let dim = rules.first().map(|r| r.coords.len()).unwrap_or(0);
        if dim == 0 {
            return Err(Error::InvalidParams("presentation needs at least one rule with coordinates".into()));
        }
        if rules.iter().any(|r| r.coords.len() != dim) {
            return Err(Error::InvalidParams("all basis rules must have the same number of coordinates".into()));
        }
        let names = sym_names(&symbols);
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidParams(format!("symbol {n} declared twice")));
            }
        }
        for r in &rules {
            for t in r.coords.iter().flatten() {
                if let Some((s, _, _)) = t.exps.iter().find(|(s, _, _)| !names.contains(&s.as_str())) {
                    return Err(Error::InvalidParams(format!("template {t} uses undeclared symbol {s}")));
                }
            }
            if r.coords.iter().all(Option::is_none) {
                return Err(Error::InvalidParams("a basis rule with all coordinates zero".into()));
            }
        }
        let shift = if shift.is_empty() { vec![Monomial::one(); dim] } else { shift };
        if shift.len() != dim {
            return Err(Error::InvalidParams("shift generator needs one monomial per coordinate".into()));
        }
        let mut p = Presentation {
            tag,
            dim,
            symbols,
            rules,
            shift,
            assumptions,
            unit: GroupElement::zero(),
        };
        let ones = vec![super::expr::Expr::constant(Rational::one()); dim];
        let unit = match p.resolve(&ones)? {
            super::element::Resolution::Element(e) => e,
            super::element::Resolution::OffBasis(why) => {
                return Err(Error::InvalidParams(format!("order unit is not representable: {why}")))
            }
        };
        if let super::element::Membership::NonMember(why) = p.is_member(&unit) {
            return Err(Error::InvalidParams(format!("order unit is not a member: {why}")));
        }
        p.unit = unit;
        Ok(p)
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.symbols.iter().any(|s| s.name == name)
    }

    /// Symbol enclosures; fails if some symbol has no approximation.
    pub fn env(&self) -> Result<Env> {
        self.symbols
            .iter()
            .map(|s| {
                s.enclosure()
                    .map(|i| (s.name.clone(), i))
                    .ok_or_else(|| Error::InvalidInput(format!("symbol {} has no numeric approximation", s.name)))
            })
            .collect()
    }

    /// `Q(α^{2i}, β^{2i}) + Z(α^{2i+1}, β^{2i+1})`.
    pub fn t1(alpha: SymbolicReal, beta: SymbolicReal) -> Result<Self> {
        if alpha.name == beta.name {
            return Err(Error::InvalidParams("T1 needs beta distinct from alpha".into()));
        }
        let coords = vec![Some(Template::power(&alpha.name, 1)), Some(Template::power(&beta.name, 1))];
        let rules = vec![
            BasisRule { radical: 0, degrees: DegreeSet::Even, ring: CoeffRing::Q, coords: coords.clone() },
            BasisRule { radical: 0, degrees: DegreeSet::Odd, ring: CoeffRing::Z, coords },
        ];
        let shift = vec![Monomial::symbol(&alpha.name, 1), Monomial::symbol(&beta.name, 1)];
        let assumptions = vec![format!(
            "{} and {} are positive transcendentals, algebraically independent (so beta is not 1, alpha or 1/alpha)",
            alpha.name, beta.name
        )];
        Self::new(BuilderTag::T1, vec![alpha, beta], rules, shift, assumptions)
    }

    fn t3_like(tag: BuilderTag, alpha: SymbolicReal, second_slope: i64) -> Result<Self> {
        let a = alpha.name.clone();
        let coords = vec![Some(Template::power(&a, 1)), Some(Template::power(&a, second_slope))];
        let rules = vec![
            BasisRule { radical: 0, degrees: DegreeSet::Even, ring: CoeffRing::Q, coords: coords.clone() },
            BasisRule { radical: 0, degrees: DegreeSet::Odd, ring: CoeffRing::Z, coords },
            BasisRule {
                radical: 1,
                degrees: DegreeSet::Odd,
                ring: CoeffRing::Z,
                coords: vec![Some(Template::power(&a, 1).with_radical(1)), None],
            },
        ];
        let shift = vec![Monomial::symbol(&a, 1), Monomial::symbol(&a, second_slope)];
        let assumptions = vec![format!("{a} is a positive transcendental")];
        Self::new(tag, vec![alpha], rules, shift, assumptions)
    }

    /// Coordinates `(α^d, α^{-d})` plus the odd `(∛2·α^d, 0)` slots.
    pub fn t3(alpha: SymbolicReal) -> Result<Self> {
        Self::t3_like(BuilderTag::T3, alpha, -1)
    }

    /// As [`Presentation::t3`] with second coordinate `α^d`.
    pub fn t5(alpha: SymbolicReal) -> Result<Self> {
        Self::t3_like(BuilderTag::T5, alpha, 1)
    }

    /// `{(Σ aᵢ αⁱ, l₁ + l₂ γ)}` with integer `aᵢ`, `l₁`, `l₂`.
    pub fn t6(alpha: SymbolicReal, gamma: SymbolicReal) -> Result<Self> {
        if alpha.name == gamma.name {
            return Err(Error::InvalidParams("T6 needs a second symbol distinct from alpha".into()));
        }
        let rules = vec![
            BasisRule {
                radical: 0,
                degrees: DegreeSet::All,
                ring: CoeffRing::Z,
                coords: vec![Some(Template::power(&alpha.name, 1)), None],
            },
            BasisRule {
                radical: 0,
                degrees: DegreeSet::Only(vec![0, 1]),
                ring: CoeffRing::Z,
                coords: vec![None, Some(Template::power(&gamma.name, 1))],
            },
        ];
        let shift = vec![Monomial::symbol(&alpha.name, 1), Monomial::one()];
        let assumptions = vec![
            format!("{} is a positive transcendental", alpha.name),
            format!(
                "{} is positive and not in the algebraic closure of Q({}); declared, not checked",
                gamma.name, alpha.name
            ),
        ];
        Self::new(BuilderTag::T6, vec![alpha, gamma], rules, shift, assumptions)
    }

    /// Builds from `{"tag": ..., "symbols": [...], "basis_rules": [...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Repr {
            tag: BuilderTag,
            #[serde(default)]
            symbols: Vec<SymbolicReal>,
            #[serde(default)]
            basis_rules: Vec<RuleRepr>,
            #[serde(default)]
            shift: Vec<String>,
            #[serde(default)]
            assumptions: Vec<String>,
        }
        let r: Repr =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("presentation: {e}")))?;
        let need = |n: usize| -> Result<()> {
            if r.symbols.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{} expects {n} symbols, got {}", r.tag, r.symbols.len())))
            }
        };
        let mut s = r.symbols.clone().into_iter();
        match r.tag {
            BuilderTag::T1 => {
                need(2)?;
                Self::t1(s.next().expect("len"), s.next().expect("len"))
            }
            BuilderTag::T3 => {
                need(1)?;
                Self::t3(s.next().expect("len"))
            }
            BuilderTag::T5 => {
                need(1)?;
                Self::t5(s.next().expect("len"))
            }
            BuilderTag::T6 => {
                need(2)?;
                Self::t6(s.next().expect("len"), s.next().expect("len"))
            }
            BuilderTag::Custom => {
                let rules = r.basis_rules.into_iter().map(BasisRule::try_from).collect::<Result<Vec<_>>>()?;
                let shift = r.shift.iter().map(|m| Monomial::parse(m)).collect::<Result<Vec<_>>>()?;
                Self::new(BuilderTag::Custom, r.symbols, rules, shift, r.assumptions)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tag": self.tag,
            "dim": self.dim,
            "symbols": self.symbols,
            "basis_rules": self.rules.iter().map(BasisRule::to_json).collect::<Vec<_>>(),
            "shift": self.shift.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "assumptions": self.assumptions,
            "unit": self.unit.to_json(),
        })
    }
}
