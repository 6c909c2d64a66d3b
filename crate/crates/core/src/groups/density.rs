//! Short independent group elements and Riesz interpolation.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Zero};

use super::element::{GroupElement, SlotKey};
use super::expr::{Env, Expr, Vector};
use super::presentation::{CoeffRing, Presentation};
use crate::error::{Error, Result};
use crate::{Interval, Rational};

/// Largest denominator or multiplier tried by the density search.
pub const DENSITY_DENOMINATOR_BOUND: u64 = 1 << 16;
/// Slots with `|degree|` up to this bound are used as raw material.
const DENSITY_DEGREE_REACH: i64 = 4;

fn norm_upper(v: &Vector, env: &Env) -> Option<f64> {
    let mut acc = Interval::point(0.0);
    for e in v {
        let x = e.enclosure(env)?;
        acc = acc + x * x;
    }
    Some(acc.sqrt().hi)
}

/// Symbolic determinant by cofactor expansion along the first row.
pub fn determinant(rows: &[Vector]) -> Expr {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut total = Expr::zero();
    for col in 0..n {
        if rows[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vector> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = rows[0][col].mul(&determinant(&minor));
        total = if col % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// Continued-fraction convergents `p/q` of `x` with `q ≤ bound`.
fn convergents(x: f64, bound: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (a.saturating_mul(p1).saturating_add(p0), a.saturating_mul(q1).saturating_add(q0));
        if q2 as u64 > bound || q2 <= 0 {
            break;
        }
        out.push((p2, q2));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

fn search_slots(p: &Presentation) -> Vec<SlotKey> {
    let mut out = Vec::new();
    let degrees = std::iter::once(0).chain((1..=DENSITY_DEGREE_REACH).flat_map(|d| [d, -d]));
    for d in degrees {
        for (r, rule) in p.rules.iter().enumerate() {
            if rule.degrees.contains(d) && rule.ring != CoeffRing::Zero {
                out.push(SlotKey { rule: r, degree: d });
            }
        }
    }
    out
}

fn support(v: &Vector) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, _)| i).collect()
}

impl Presentation {
    /// Short elements in deterministic order: scaled ℚ-slots, short
    /// ℤ-slots, then two-slot integer combinations along one coordinate.
    fn short_candidates(&self, eps: &Rational, env: &Env) -> Vec<GroupElement> {
        let eps_lo = Interval::from_rational(eps).lo;
        let slots = search_slots(self);
        let mut out = Vec::new();
        let certified = |g: &GroupElement| norm_upper(&self.to_vector(g), env).is_some_and(|n| n < eps_lo);
        for &s in &slots {
            if self.rules[s.rule].ring != CoeffRing::Q {
                continue;
            }
            let Some(n) = norm_upper(&self.slot_vector(s), env) else { continue };
            let guess = (n / eps_lo).floor() + 1.0;
            if !(guess.is_finite() && guess <= DENSITY_DENOMINATOR_BOUND as f64) {
                continue;
            }
            for k in [guess as u64, guess as u64 + 1] {
                let g = GroupElement::slot(s, Rational::new(BigInt::one(), BigInt::from(k)));
                if certified(&g) {
                    out.push(g);
                    break;
                }
            }
        }
        let zs: Vec<SlotKey> = slots.iter().copied().filter(|s| self.rules[s.rule].ring == CoeffRing::Z).collect();
        for &s in &zs {
            let g = GroupElement::slot(s, Rational::one());
            if certified(&g) {
                out.push(g);
            }
        }
        for (i, &s1) in zs.iter().enumerate() {
            let v1 = self.slot_vector(s1);
            let sup = support(&v1);
            if sup.len() != 1 {
                continue;
            }
            let k = sup[0];
            for &s2 in &zs[i + 1..] {
                let v2 = self.slot_vector(s2);
                if support(&v2) != sup {
                    continue;
                }
                let (Some(x1), Some(x2)) = (v1[k].enclosure(env), v2[k].enclosure(env)) else { continue };
                for (a, b) in convergents(x2.mid() / x1.mid(), DENSITY_DENOMINATOR_BOUND) {
                    // b·v2 − a·v1 is small when a/b ≈ v2/v1
                    let mut g = GroupElement::slot(s2, Rational::from_integer(b.into()));
                    g.add_slot(s1, Rational::from_integer((-a).into()));
                    if !g.is_zero() && certified(&g) {
                        out.push(g);
                        break;
                    }
                }
            }
        }
        out
    }

    /// `dim` members of `G`, linearly independent over ℝ (nonzero symbolic
    /// determinant), each with certified Euclidean norm below `eps`.
    pub fn density_witness(&self, eps: &Rational) -> Result<Vec<GroupElement>> {
        if *eps <= Rational::zero() {
            return Err(Error::InvalidInput("eps must be positive".into()));
        }
        let env = self.env()?;
        let cands = self.short_candidates(eps, &env);
        let n = self.dim;
        let vectors: Vec<Vector> = cands.iter().map(|g| self.to_vector(g)).collect();
        let mut idx: Vec<usize> = (0..n).collect();
        if cands.len() >= n {
            loop {
                let rows: Vec<Vector> = idx.iter().map(|&i| vectors[i].clone()).collect();
                if !determinant(&rows).is_zero() {
                    return Ok(idx.iter().map(|&i| cands[i].clone()).collect());
                }
                if !next_combination(&mut idx, cands.len()) {
                    break;
                }
            }
        }
        Err(Error::SearchExhausted(format!(
            "no {n} independent elements of norm < {eps} among slots with |degree| ≤ {DENSITY_DEGREE_REACH} \
             and multipliers ≤ {DENSITY_DENOMINATOR_BOUND} ({} short candidates)",
            cands.len()
        )))
    }

    /// Some `z ∈ G` with `gᵢ ≤ z ≤ hⱼ` for all `i, j`.
    pub fn riesz_interpolate(
        &self,
        g1: &GroupElement,
        g2: &GroupElement,
        h1: &GroupElement,
        h2: &GroupElement,
    ) -> Result<GroupElement> {
        for (name, x) in [("g1", g1), ("g2", g2), ("h1", h1), ("h2", h2)] {
            if let super::element::Membership::NonMember(why) = self.is_member(x) {
                return Err(Error::InvalidInput(format!("{name} is not a member: {why}")));
            }
        }
        let gs = [g1, g2];
        let hs = [h1, h2];
        for g in gs {
            for h in hs {
                if !self.le(g, h)? {
                    return Err(Error::SearchExhausted(
                        "interpolation box is empty: some g_i ≤ h_j fails".into(),
                    ));
                }
            }
        }
        let fits = |z: &GroupElement| -> Result<bool> {
            for g in gs {
                if !self.le(g, z)? {
                    return Ok(false);
                }
            }
            for h in hs {
                if !self.le(z, h)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        for z in [g1, g2, h1, h2] {
            if fits(z)? {
                return Ok(z.clone());
            }
        }
        let env = self.env()?;
        let enc = |g: &GroupElement| -> Result<Vec<Interval>> {
            self.to_vector(g)
                .iter()
                .map(|e| e.enclosure(&env).ok_or_else(|| Error::Internal("missing enclosure".into())))
                .collect()
        };
        let (eg1, eg2, eh1, eh2) = (enc(g1)?, enc(g2)?, enc(h1)?, enc(h2)?);
        let n = self.dim;
        let mut target = vec![0.0; n];
        let mut rmin = f64::INFINITY;
        for k in 0..n {
            let lower = eg1[k].hi.max(eg2[k].hi);
            let upper = eh1[k].lo.min(eh2[k].lo);
            if upper <= lower {
                return Err(Error::SearchExhausted(format!(
                    "interpolation box has empty interior in coordinate {}",
                    k + 1
                )));
            }
            target[k] = (lower + upper) / 2.0 - eg1[k].mid();
            rmin = rmin.min((upper - lower) / 2.0);
        }
        let mut last_err = None;
        for attempt in 0..8 {
            let eps_f = rmin / (4.0 * n as f64) / 4f64.powi(attempt);
            let Some(eps) = Rational::from_f64(eps_f).filter(|e| !e.is_zero()) else { break };
            let basis = match self.density_witness(&eps) {
                Ok(b) => b,
                Err(e) => {
                    last_err = Some(e);
                    break;
                }
            };
            let rows: Vec<Vec<f64>> = basis
                .iter()
                .map(|b| self.to_vector(b).iter().map(|e| e.enclosure(&env).map_or(f64::NAN, |i| i.mid())).collect())
                .collect();
            let Some(x) = solve_rows(&rows, &target) else { continue };
            let mut z = g1.clone();
            for (b, xi) in basis.iter().zip(x) {
                let Some(k) = BigInt::from_f64(xi.round()) else { continue };
                z = z.add(&b.scale(&Rational::from_integer(k)));
            }
            match fits(&z) {
                Ok(true) => return Ok(z),
                Ok(false) => {}
                Err(e) => last_err = Some(e),
            }
        }
        Err(Error::SearchExhausted(format!(
            "no interpolant found near the box centre{}",
            last_err.map(|e| format!(" ({e})")).unwrap_or_default()
        )))
    }
}

/// Advances `idx` to the next `k`-subset of `0..total` in lexicographic order.
fn next_combination(idx: &mut [usize], total: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < total - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves `Σ xᵢ·rowsᵢ = target` by Gaussian elimination with partial pivoting.
fn solve_rows(rows: &[Vec<f64>], target: &[f64]) -> Option<Vec<f64>> {
    let n = target.len();
    // column-major system: a[k][i] = rows[i][k]
    let mut a: Vec<Vec<f64>> = (0..n).map(|k| (0..n).map(|i| rows[i][k]).chain([target[k]]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for j in c..=n {
                    a[r][j] -= f * a[c][j];
                }
            }
        }
    }
    let x: Vec<f64> = (0..n).map(|i| a[i][n] / a[i][i]).collect();
    x.iter().all(|v| v.is_finite()).then_some(x)
}
