//! Real algebraic numbers as a primitive integer polynomial plus an
//! isolating interval with rational endpoints. All decisions are exact:
//! root counting uses Taylor-shift bounds on subintervals and refinement is
//! plain bisection.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::divisors;
use crate::serde_util::{format_rational, int_poly, parse_rational};
use crate::{IntPoly, Interval, RatPoly, Rational};

/// Subinterval budget for root counting; squarefree inputs finish far
/// below this.
const MAX_NODES: usize = 200_000;
/// Cap on (d0, d1, d2) triples tried by the quadratic-factor search.
const KRONECKER_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    lo: Rational,
    hi: Rational,
    asserted_minimal: bool,
}

/// Outcome of the cheap irreducibility screen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Screen {
    Irreducible,
    Factor(IntPoly),
    Undecided,
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Coefficients of `f(c + x)`.
fn taylor_at(f: &RatPoly, c: &Rational) -> RatPoly {
    f.compose(&RatPoly::new(vec![c.clone(), Rational::one()]))
}

/// Tail bound `Σ_{k ≥ from} weight_k · |a_k| · w^{k - from + 1}` with
/// `weight_k = k` when `deriv`. With `from = 1` it bounds `|f - a_0|` on the
/// cell, with `from = 2` and `deriv` it bounds `|f' - a_1|`.
fn tail(shifted: &RatPoly, w: &Rational, from: usize, deriv: bool) -> Rational {
    let mut total = Rational::zero();
    let mut wk = w.clone();
    for (k, a) in shifted.coeffs().iter().enumerate().skip(from) {
        let weight = if deriv { Rational::from_integer(k.into()) } else { Rational::one() };
        total += weight * a.abs() * &wk;
        wk = &wk * w;
    }
    total
}

enum Cell {
    NoRoot,
    Monotone,
    Split,
}

fn classify(f: &RatPoly, l: &Rational, h: &Rational) -> Cell {
    let two = Rational::from_integer(2.into());
    let c = (l + h) / &two;
    let w = (h - l) / &two;
    let s = taylor_at(f, &c);
    if s.coeff(0).abs() > tail(&s, &w, 1, false) {
        Cell::NoRoot
    } else if s.coeff(1).abs() > tail(&s, &w, 2, true) {
        Cell::Monotone
    } else {
        Cell::Split
    }
}

/// Visits `(l, h)` open cells: calls `on_cell` for each monotone cell with
/// a sign change and `on_point` for each split point that is a root.
fn subdivide(
    f: &RatPoly,
    l: Rational,
    h: Rational,
    mut on_cell: impl FnMut(Rational, Rational),
    mut on_point: impl FnMut(Rational),
) -> Result<()> {
    let mut stack = vec![(l, h)];
    let mut nodes = 0usize;
    let two = Rational::from_integer(2.into());
    while let Some((l, h)) = stack.pop() {
        nodes += 1;
        if nodes > MAX_NODES {
            return Err(Error::Internal(format!("root isolation for {f} did not converge")));
        }
        if l >= h {
            continue;
        }
        match classify(f, &l, &h) {
            Cell::NoRoot => {}
            Cell::Monotone => {
                if sign(&f.eval(&l)) * sign(&f.eval(&h)) < 0 {
                    on_cell(l, h);
                }
            }
            Cell::Split => {
                let c = (&l + &h) / &two;
                // push right first so cells come out in ascending order
                stack.push((c.clone(), h));
                if f.eval(&c).is_zero() {
                    stack.push((c.clone(), c.clone()));
                    on_point(c.clone());
                }
                stack.push((l, c));
            }
        }
    }
    Ok(())
}

fn is_squarefree(f: &RatPoly) -> bool {
    f.gcd(&f.derivative()).degree() == Some(0)
}

/// Number of distinct real roots of a squarefree `f` in the closed `[lo, hi]`.
pub fn count_roots(f: &RatPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot count roots of the zero polynomial".into()));
    }
    if lo > hi {
        return Ok(0);
    }
    let mut n = usize::from(f.eval(lo).is_zero());
    if lo == hi {
        return Ok(n);
    }
    n += usize::from(f.eval(hi).is_zero());
    let mut inner = 0;
    let mut points = 0;
    subdivide(f, lo.clone(), hi.clone(), |_, _| inner += 1, |_| points += 1)?;
    Ok(n + inner + points)
}

/// Isolating intervals for the real roots of a squarefree polynomial, in
/// ascending order. Rational roots come back as degenerate intervals.
pub fn real_roots(f: &IntPoly) -> Result<Vec<(Rational, Rational)>> {
    let f = f.to_rational();
    if f.degree().is_none_or(|d| d == 0) {
        return Ok(Vec::new());
    }
    if !is_squarefree(&f) {
        return Err(Error::InvalidInput(format!("{f} is not squarefree")));
    }
    let lead = f.leading().expect("nonzero").abs();
    let n = f.degree().expect("nonzero");
    let bound = f.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    let mut out = Vec::new();
    let cells = std::cell::RefCell::new(&mut out);
    subdivide(
        &f,
        -bound.clone(),
        bound,
        |l, h| cells.borrow_mut().push((l, h)),
        |c| cells.borrow_mut().push((c.clone(), c)),
    )?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn rational_roots(f: &IntPoly) -> Result<Vec<Rational>> {
    let a0 = f.coeff(0);
    let mut out = Vec::new();
    if a0.is_zero() {
        out.push(Rational::zero());
    }
    let shift = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let g = IntPoly::new(f.coeffs()[shift..].to_vec());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let fr = g.to_rational();
    let tops = divisors(&g.coeff(0))?;
    let bottoms = divisors(g.leading().expect("nonzero"))?;
    for p in &tops {
        for q in &bottoms {
            for s in [p.clone(), -p.clone()] {
                let r = Rational::new(s, q.clone());
                if fr.eval(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn quadratic_factor(f: &IntPoly) -> Result<Option<IntPoly>> {
    let at = |x: i64| f.to_rational().eval(&Rational::from_integer(x.into())).to_integer();
    let (v0, v1, v2) = (at(0), at(1), at(-1));
    if v0.is_zero() || v1.is_zero() || v2.is_zero() {
        return Ok(None);
    }
    let d0s = divisors(&v0)?;
    let signed = |v: &BigInt| -> Result<Vec<BigInt>> {
        let d = divisors(v)?;
        Ok(d.iter().cloned().chain(d.iter().map(|x| -x)).collect())
    };
    let (d1s, d2s) = (signed(&v1)?, signed(&v2)?);
    if d0s.len().saturating_mul(d1s.len()).saturating_mul(d2s.len()) > KRONECKER_CAP {
        return Err(Error::HypothesisViolation(format!(
            "coefficients of {f} too large for the quadratic-factor screen; assert minimality instead"
        )));
    }
    let fr = f.to_rational();
    let two = BigInt::from(2);
    for c in &d0s {
        for d1 in &d1s {
            for d2 in &d2s {
                let s = d1 + d2;
                if !(&s % &two).is_zero() {
                    continue;
                }
                let a = &s / &two - c;
                let b = (d1 - d2) / &two;
                if a.is_zero() {
                    continue;
                }
                let g = IntPoly::new(vec![c.clone(), b, a]);
                let (_, r) = fr.div_rem(&g.to_rational()).expect("nonzero divisor");
                if r.is_zero() {
                    return Ok(Some(g.primitive()));
                }
            }
        }
    }
    Ok(None)
}

/// Squarefree check, rational-root elimination and, in degree 4, an
/// exhaustive quadratic-factor search. Degree ≥ 5 without a rational root
/// is `Undecided`.
pub fn screen_irreducible(f: &IntPoly) -> Result<Screen> {
    let f = f.primitive();
    let d = match f.degree() {
        None | Some(0) => return Err(Error::InvalidInput("constant polynomial has no roots".into())),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(Screen::Irreducible);
    }
    let fr = f.to_rational();
    let g = fr.gcd(&fr.derivative());
    if g.degree() != Some(0) {
        return Ok(Screen::Factor(g.primitive_integer().primitive()));
    }
    if let Some(r) = rational_roots(&f)?.first() {
        let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        return Ok(Screen::Factor(lin));
    }
    match d {
        2 | 3 => Ok(Screen::Irreducible),
        4 => Ok(match quadratic_factor(&f)? {
            Some(g) => Screen::Factor(g),
            None => Screen::Irreducible,
        }),
        _ => Ok(Screen::Undecided),
    }
}

/// Splits a primitive polynomial into screened factors; each entry is
/// `(factor, proven_irreducible)`.
fn split_factors(f: &IntPoly) -> Result<Vec<(IntPoly, bool)>> {
    let mut todo = vec![f.primitive()];
    let mut done = Vec::new();
    while let Some(p) = todo.pop() {
        match screen_irreducible(&p)? {
            Screen::Irreducible => done.push((p, true)),
            Screen::Undecided => done.push((p, false)),
            Screen::Factor(g) => {
                let (q, r) = p.to_rational().div_rem(&g.to_rational()).expect("nonzero");
                if !r.is_zero() {
                    return Err(Error::Internal(format!("screen factor {g} does not divide {p}")));
                }
                todo.push(g);
                todo.push(q.primitive_integer().primitive());
            }
        }
    }
    Ok(done)
}

impl AlgebraicNumber {
    /// The unique root of `minpoly` in `[lo, hi]`. Unless `asserted_minimal`
    /// is set, `minpoly` must pass the irreducibility screen.
    pub fn new(minpoly: IntPoly, lo: Rational, hi: Rational, asserted_minimal: bool) -> Result<Self> {
        let minpoly = minpoly.primitive();
        if minpoly.degree().is_none_or(|d| d == 0) {
            return Err(Error::InvalidInput(format!("minimal polynomial {minpoly} must have positive degree")));
        }
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
        }
        let fr = minpoly.to_rational();
        if !is_squarefree(&fr) {
            return Err(Error::InvalidInput(format!("{minpoly} is not squarefree")));
        }
        let roots = count_roots(&fr, &lo, &hi)?;
        if roots != 1 {
            return Err(Error::InvalidInput(format!(
                "{minpoly} has {roots} roots in [{lo}, {hi}], expected exactly one"
            )));
        }
        if !asserted_minimal {
            match screen_irreducible(&minpoly)? {
                Screen::Irreducible => {}
                Screen::Factor(g) => {
                    return Err(Error::HypothesisViolation(format!(
                        "{minpoly} is not minimal: it has the factor {g}"
                    )))
                }
                Screen::Undecided => {
                    return Err(Error::HypothesisViolation(format!(
                        "irreducibility of the degree-{} polynomial {minpoly} cannot be screened; assert minimality",
                        minpoly.degree().unwrap_or(0)
                    )))
                }
            }
        }
        let (lo, hi) = if fr.eval(&lo).is_zero() {
            (lo.clone(), lo)
        } else if fr.eval(&hi).is_zero() {
            (hi.clone(), hi)
        } else {
            (lo, hi)
        };
        Ok(Self { minpoly, lo, hi, asserted_minimal })
    }

    pub fn rational(q: &Rational) -> Self {
        let minpoly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        Self { minpoly, lo: q.clone(), hi: q.clone(), asserted_minimal: false }
    }

    /// The root of `poly` inside `[lo, hi]`, described by whichever screened
    /// factor of `poly` owns it. Non-squarefree input is allowed.
    pub fn root_of(poly: &IntPoly, lo: Rational, hi: Rational, assume_irreducible: bool) -> Result<Self> {
        let p = poly.primitive();
        if p.degree().is_none_or(|d| d == 0) {
            return Err(Error::InvalidInput(format!("{poly} has no roots")));
        }
        let pr = p.to_rational();
        let sqf = pr.div_rem(&pr.gcd(&pr.derivative())).expect("nonzero").0;
        let mut owner = None;
        for (factor, proven) in split_factors(&sqf.primitive_integer())? {
            if count_roots(&factor.to_rational(), &lo, &hi)? > 0 {
                if owner.is_some() {
                    return Err(Error::InvalidInput(format!("[{lo}, {hi}] holds several roots of {poly}")));
                }
                owner = Some((factor, proven));
            }
        }
        let (factor, proven) =
            owner.ok_or_else(|| Error::InvalidInput(format!("{poly} has no root in [{lo}, {hi}]")))?;
        Self::new(factor, lo, hi, !proven && assume_irreducible)
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn asserted_minimal(&self) -> bool {
        self.asserted_minimal
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().expect("positive degree")
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1)
            .then(|| Rational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let f = self.minpoly.to_rational();
        let m = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let sm = sign(&f.eval(&m));
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
        } else if sm == sign(&f.eval(&self.lo)) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Same number, isolating interval no wider than `width`.
    pub fn refined(&self, width: &Rational) -> Self {
        let mut x = self.clone();
        while &x.hi - &x.lo > *width {
            x.bisect();
        }
        x
    }

    /// Sign of `f` at this number. The zero case is settled by a gcd test,
    /// so refinement always terminates.
    pub fn sign_of(&self, f: &RatPoly) -> i8 {
        if let Some(q) = self.as_rational() {
            return sign(&f.eval(&q));
        }
        let g = self.minpoly.to_rational().gcd(f);
        if g.degree().is_some_and(|d| d > 0)
            && count_roots(&g, &self.lo, &self.hi).expect("g divides a squarefree polynomial") > 0
        {
            return 0;
        }
        let two = Rational::from_integer(2.into());
        let mut x = self.clone();
        loop {
            if x.lo == x.hi {
                return sign(&f.eval(&x.lo));
            }
            let c = (&x.lo + &x.hi) / &two;
            let w = (&x.hi - &x.lo) / &two;
            let s = taylor_at(f, &c);
            if s.coeff(0).abs() > tail(&s, &w, 1, false) {
                return sign(&s.coeff(0));
            }
            x.bisect();
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let f = RatPoly::new(vec![-q.clone(), Rational::one()]);
        self.sign_of(&f).cmp(&0)
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_rational(&Rational::zero()) == Ordering::Greater
    }

    /// Exact equality of the described reals.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.minpoly != other.minpoly {
            return false;
        }
        let lo = std::cmp::max(&self.lo, &other.lo);
        let hi = std::cmp::min(&self.hi, &other.hi);
        count_roots(&self.minpoly.to_rational(), lo, hi).unwrap_or(0) == 1
    }

    /// Outward-rounded enclosure of width below `2^-50` relative.
    pub fn enclosure(&self) -> Interval {
        let scale = self.hi.abs().max(self.lo.abs()).max(Rational::one());
        let x = self.refined(&(scale / Rational::from_integer(BigInt::one() << 50)));
        let l = Interval::from_rational(&x.lo);
        let h = Interval::from_rational(&x.hi);
        Interval::new(l.lo, h.hi)
    }

    pub fn approx(&self) -> f64 {
        self.enclosure().mid()
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "root of {} in [{}, {}]", self.minpoly, self.lo, self.hi),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct AlgebraicRepr {
    #[serde(with = "int_poly")]
    minpoly: IntPoly,
    interval: [String; 2],
    #[serde(default)]
    asserted_minimal: bool,
}

impl TryFrom<AlgebraicRepr> for AlgebraicNumber {
    type Error = Error;

    fn try_from(r: AlgebraicRepr) -> Result<Self> {
        let lo = parse_rational(&r.interval[0]).map_err(Error::InvalidInput)?;
        let hi = parse_rational(&r.interval[1]).map_err(Error::InvalidInput)?;
        AlgebraicNumber::new(r.minpoly, lo, hi, r.asserted_minimal)
    }
}

impl From<&AlgebraicNumber> for AlgebraicRepr {
    fn from(a: &AlgebraicNumber) -> Self {
        AlgebraicRepr {
            minpoly: a.minpoly.clone(),
            interval: [format_rational(&a.lo), format_rational(&a.hi)],
            asserted_minimal: a.asserted_minimal,
        }
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraicRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AlgebraicRepr::deserialize(d)?;
        AlgebraicNumber::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn rational_to_f64(q: &BigRational) -> f64 {
        q.to_f64().unwrap()
    }

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt2() -> AlgebraicNumber {
        AlgebraicNumber::new(ip(&[-2, 0, 1]), q(1, 1), q(2, 1), false).unwrap()
    }

    #[test]
    fn sign_examples() {
        let x = sqrt2();
        assert_eq!(x.sign_of(&ip(&[-1, 1]).to_rational()), 1);
        assert_eq!(x.sign_of(&ip(&[-2, 0, 1]).to_rational()), 0);
        assert_eq!(x.sign_of(&ip(&[-2, 1]).to_rational()), -1);
        // (t - 1)(t^2 - 2) vanishes at sqrt 2 through the gcd test
        assert_eq!(x.sign_of(&ip(&[2, -2, -1, 1]).to_rational()), 0);
    }

    #[test]
    fn rejects_bad_intervals_and_reducible_polys() {
        assert!(AlgebraicNumber::new(ip(&[-2, 0, 1]), q(-2, 1), q(2, 1), false).is_err());
        assert!(AlgebraicNumber::new(ip(&[-2, 0, 1]), q(2, 1), q(3, 1), false).is_err());
        let r = AlgebraicNumber::new(ip(&[-2, 1, 1]), q(1, 2), q(3, 2), false);
        assert!(matches!(r, Err(Error::HypothesisViolation(_))));
        // (t^2 - 2)(t^2 - 3) has no rational root but splits into quadratics
        let r = AlgebraicNumber::new(ip(&[6, 0, -5, 0, 1]), q(1, 1), q(3, 2), false);
        assert!(matches!(r, Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn quartic_irreducible_passes() {
        // t^4 - 10 t^2 + 1, minimal polynomial of sqrt2 + sqrt3
        let x = AlgebraicNumber::new(ip(&[1, 0, -10, 0, 1]), q(3, 1), q(4, 1), false).unwrap();
        assert!((x.approx() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn degree_five_needs_assertion() {
        let p = ip(&[-2, 0, 0, 0, 0, 1]);
        assert!(matches!(
            AlgebraicNumber::new(p.clone(), q(1, 1), q(2, 1), false),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(AlgebraicNumber::new(p, q(1, 1), q(2, 1), true).is_ok());
    }

    #[test]
    fn root_of_picks_owning_factor() {
        let x = AlgebraicNumber::root_of(&ip(&[2, -5, 2]), q(3, 2), q(3, 1), false).unwrap();
        assert_eq!(x.as_rational(), Some(q(2, 1)));
        let y = AlgebraicNumber::root_of(&ip(&[4, 0, -4, 0, 1]), q(1, 1), q(2, 1), false).unwrap();
        assert!(y.same_as(&sqrt2()));
    }

    #[test]
    fn isolates_all_real_roots() {
        // (t^2 - 2)(t - 1/2)·2 = 2t^3 - t^2 - 4t + 2
        let roots = real_roots(&ip(&[2, -4, -1, 2])).unwrap();
        assert_eq!(roots.len(), 3);
        let inside = |i: usize, x: f64| rational_to_f64(&roots[i].0) <= x && x <= rational_to_f64(&roots[i].1);
        assert!(inside(0, -(2f64.sqrt())) && inside(1, 0.5) && inside(2, 2f64.sqrt()));
        assert!(roots.iter().all(|(l, h)| count_roots(&ip(&[2, -4, -1, 2]).to_rational(), l, h).unwrap() == 1));
    }

    #[test]
    fn enclosure_contains_value() {
        let e = sqrt2().enclosure();
        assert!(e.lo <= 2f64.sqrt() && 2f64.sqrt() <= e.hi);
        assert!(e.width() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let x = sqrt2();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"minpoly":["-2","0","1"],"interval":["1","2"],"asserted_minimal":false}"#);
        assert_eq!(serde_json::from_str::<AlgebraicNumber>(&s).unwrap(), x);
    }
}
