//! Realization reports: the claimed invariance group `{Aⁿ}` is checked in
//! the inclusion direction, and every alternative in a finite family of
//! monomial matrices is either refuted with a replayable witness or
//! reported as a counterexample.

use std::fmt;
use std::str::FromStr;
use std::thread;

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::SymbolicReal;
use crate::groups::{Invariance, Monomial, MonomialMatrix, Presentation, Shape, Witness};
use crate::Rational;

pub const DEFAULT_HEIGHT: u32 = 10;
pub const DEFAULT_EXPONENT_BOUND: u32 = 6;
pub const DEFAULT_N_BOUND: u32 = 5;
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Candidates `diag(q₁·s₁ᵏ, q₂·s₂ᵏ)` or `antidiag(q₁·s₂ᵏ, q₂·s₁ᵏ)` where
/// `s` is the presentation's shift, `q₁, q₂` positive rationals of height
/// at most `H` and `|k| ≤ K`. With `radical_parts`, each entry may also
/// carry a factor `∛2` or `∛4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFamily {
    pub shape: Shape,
    pub rational_height: u32,
    pub exponent_bound: u32,
    pub radical_parts: bool,
}

impl CandidateFamily {
    pub fn new(shape: Shape, rational_height: u32, exponent_bound: u32, radical_parts: bool) -> Result<Self> {
        if shape == Shape::Permutation {
            return Err(Error::InvalidParams("candidate families are diagonal or antidiagonal".into()));
        }
        if rational_height < 1 || exponent_bound < 1 {
            return Err(Error::InvalidParams(format!(
                "need H ≥ 1 and K ≥ 1, got H = {rational_height}, K = {exponent_bound}"
            )));
        }
        Ok(Self { shape, rational_height, exponent_bound, radical_parts })
    }

    /// Positive rationals `p/q` in lowest terms with `1 ≤ p, q ≤ H`, ascending.
    pub fn rationals(&self) -> Vec<Rational> {
        let h = self.rational_height as i64;
        let mut out: Vec<Rational> = (1..=h)
            .flat_map(|p| (1..=h).filter(move |q| p.gcd(q) == 1).map(move |q| Rational::new(p.into(), q.into())))
            .collect();
        out.sort();
        out
    }

    pub fn size(&self) -> u64 {
        let r = self.rationals().len() as u64;
        let radicals = if self.radical_parts { 9 } else { 1 };
        r * r * (2 * self.exponent_bound as u64 + 1) * radicals
    }

    /// All candidates, sorted.
    pub fn enumerate(&self, shift: &[Monomial]) -> Result<Vec<MonomialMatrix>> {
        if shift.len() != 2 {
            return Err(Error::InvalidParams("candidate families need a 2-dimensional presentation".into()));
        }
        let qs = self.rationals();
        let k = self.exponent_bound as i64;
        let radicals: &[u8] = if self.radical_parts { &[0, 1, 2] } else { &[0] };
        let (s0, s1) = match self.shape {
            Shape::Diagonal => (&shift[0], &shift[1]),
            _ => (&shift[1], &shift[0]),
        };
        let entry = |q: &Rational, s: &Monomial, k: i64, r: u8| -> (Rational, Monomial) {
            let (c1, m) = s.pow(k);
            let (c2, m) = m.mul(&Monomial::new(r, []));
            (q * c1 * c2, m)
        };
        let mut out = Vec::with_capacity(self.size() as usize);
        for e in -k..=k {
            for q1 in &qs {
                for q2 in &qs {
                    for &r1 in radicals {
                        for &r2 in radicals {
                            let (a, b) = (entry(q1, s0, e, r1), entry(q2, s1, e, r2));
                            out.push(match self.shape {
                                Shape::Diagonal => MonomialMatrix::diagonal(vec![a, b])?,
                                _ => MonomialMatrix::antidiagonal(a, b)?,
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InclusionProof {
    pub n: i64,
    pub matrix: MonomialMatrix,
}

/// Checks `G·genⁿ = G` for all `|n| ≤ bound`.
pub fn verify_inclusion(p: &Presentation, gen: &MonomialMatrix, bound: u32) -> Result<Vec<InclusionProof>> {
    let b = bound as i64;
    let mut out = Vec::with_capacity(2 * bound as usize + 1);
    for n in -b..=b {
        let matrix = gen.pow(n);
        match p.check_invariance(&matrix)? {
            Invariance::Invariant => out.push(InclusionProof { n, matrix }),
            Invariance::NotInvariant(w) => {
                return Err(Error::NotInvariant(format!("G is not invariant under {matrix} (n = {n}): {}", w.reason)))
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Refutation {
    pub candidate: MonomialMatrix,
    pub witness: Witness,
}

/// What happened to one family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyOutcome {
    pub family: CandidateFamily,
    pub candidates: usize,
    /// Members of the claimed group, not tested.
    pub skipped: Vec<MonomialMatrix>,
    pub refutations: Vec<Refutation>,
    /// Outside the claimed group yet invariant.
    pub counterexamples: Vec<MonomialMatrix>,
    /// Candidates the decision procedure could not handle, with the reason.
    pub unresolved: Vec<(MonomialMatrix, String)>,
}

enum Outcome {
    Skipped,
    Refuted(Box<Witness>),
    Counterexample,
    Unresolved(String),
}

fn decide(p: &Presentation, gen: &MonomialMatrix, m: &MonomialMatrix) -> Outcome {
    if m.log_base(gen).is_some() {
        return Outcome::Skipped;
    }
    let forward = match p.check_invariance(m) {
        Ok(Invariance::Invariant) => return Outcome::Counterexample,
        Ok(Invariance::NotInvariant(w)) => w,
        Err(e) => return Outcome::Unresolved(e.to_string()),
    };
    // Non-invariance under M is non-invariance under M⁻¹.
    match p.check_invariance(&m.inverse()) {
        Ok(Invariance::NotInvariant(_)) => Outcome::Refuted(forward),
        Ok(Invariance::Invariant) => Outcome::Unresolved(format!("{m} refuted but its inverse is invariant")),
        Err(e) => Outcome::Unresolved(e.to_string()),
    }
}

/// Runs every candidate of `family` against `p`, skipping powers of `gen`.
/// Work is split over `jobs` threads; the result order is the sorted
/// candidate order regardless of `jobs`.
pub fn refute_candidates(
    p: &Presentation,
    gen: &MonomialMatrix,
    family: &CandidateFamily,
    budget: u64,
    jobs: usize,
) -> Result<FamilyOutcome> {
    let estimate = family.size();
    if estimate > budget {
        return Err(Error::FamilyTooLarge { estimate, budget });
    }
    let candidates = family.enumerate(&p.shift)?;
    let jobs = jobs.max(1);
    let chunk = candidates.len().div_ceil(jobs).max(1);
    let outcomes: Vec<Outcome> = thread::scope(|s| {
        let handles: Vec<_> = candidates
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|m| decide(p, gen, m)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = FamilyOutcome {
        family: *family,
        candidates: candidates.len(),
        skipped: Vec::new(),
        refutations: Vec::new(),
        counterexamples: Vec::new(),
        unresolved: Vec::new(),
    };
    for (m, o) in candidates.into_iter().zip(outcomes) {
        match o {
            Outcome::Skipped => out.skipped.push(m),
            Outcome::Refuted(w) => out.refutations.push(Refutation { candidate: m, witness: *w }),
            Outcome::Counterexample => out.counterexamples.push(m),
            Outcome::Unresolved(why) => out.unresolved.push((m, why)),
        }
    }
    Ok(out)
}

/// The second diagonal entry of the realized matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum BetaCase {
    /// A symbol independent of alpha.
    Independent(SymbolicReal),
    Alpha,
    InvAlpha,
    One,
}

impl FromStr for BetaCase {
    type Err = Error;

    /// `indep`, `indep:<name>`, `alpha`, `inv-alpha` or `one`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(BetaCase::Alpha),
            "inv-alpha" => Ok(BetaCase::InvAlpha),
            "one" => Ok(BetaCase::One),
            "indep" => Ok(BetaCase::Independent(SymbolicReal::new("beta")?)),
            _ => match s.strip_prefix("indep:") {
                Some(text) => Ok(BetaCase::Independent(parse_symbol(text)?)),
                None => Err(Error::UnsupportedBeta(format!(
                    "{s:?}; supported: indep, indep:<name>[=approx], alpha, inv-alpha, one"
                ))),
            },
        }
    }
}

/// `name` or `name=approx`.
pub fn parse_symbol(text: &str) -> Result<SymbolicReal> {
    match text.split_once('=') {
        None => SymbolicReal::new(text),
        Some((name, v)) => {
            let x: f64 = v.parse().map_err(|_| Error::InvalidInput(format!("bad approximation {v:?}")))?;
            SymbolicReal::with_approx(name, x, 0.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportVerdict {
    ConsistentWithClaim,
    CounterexampleFound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FGroupReport {
    pub presentation_tag: String,
    pub claimed_generator: MonomialMatrix,
    pub claimed_description: String,
    pub substitutions: Vec<String>,
    pub verified_inclusions: Vec<InclusionProof>,
    pub families: Vec<FamilyOutcome>,
    pub assumptions: Vec<String>,
    pub verdict: ReportVerdict,
}

/// Refutation samples included in the JSON form of each family.
pub const REPORT_SAMPLES: usize = 5;

impl FGroupReport {
    pub fn refutation_count(&self) -> usize {
        self.families.iter().map(|f| f.refutations.len()).sum()
    }

    pub fn counterexample_count(&self) -> usize {
        self.families.iter().map(|f| f.counterexamples.len()).sum()
    }

    /// JSON report; `full` lists every refutation instead of a sample.
    pub fn to_json(&self, full: bool) -> Value {
        let families: Vec<Value> = self
            .families
            .iter()
            .map(|f| {
                let take = if full { f.refutations.len() } else { REPORT_SAMPLES };
                json!({
                    "family": f.family,
                    "candidates": f.candidates,
                    "skipped": f.skipped.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "refuted": f.refutations.len(),
                    "refutations": f.refutations.iter().take(take).map(|r| json!({
                        "candidate": r.candidate.to_string(),
                        "witness": r.witness.to_json(),
                    })).collect::<Vec<_>>(),
                    "counterexamples": f.counterexamples.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "unresolved": f.unresolved.iter().map(|(m, why)| json!({"candidate": m.to_string(), "reason": why})).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "presentation_tag": self.presentation_tag,
            "claimed_group": {
                "generator": self.claimed_generator.to_json(),
                "description": self.claimed_description,
            },
            "substitutions": self.substitutions,
            "verified_inclusions": self.verified_inclusions.iter().map(|p| json!({
                "n": p.n,
                "matrix": p.matrix.to_string(),
            })).collect::<Vec<_>>(),
            "families": families,
            "assumptions": self.assumptions,
            "verdict": self.verdict,
        })
    }

    /// Fixed-width summary table.
    pub fn summary_table(&self) -> String {
        let mut s = format!(
            "presentation {}  claimed {}  generator {}\n",
            self.presentation_tag, self.claimed_description, self.claimed_generator
        );
        s += &format!("inclusions verified: {}\n", self.verified_inclusions.len());
        s += &format!(
            "{:<13} {:>3} {:>3} {:>5} {:>10} {:>8} {:>8} {:>10} {:>10}\n",
            "shape", "H", "K", "rad", "candidates", "skipped", "refuted", "unresolved", "counterex"
        );
        for f in &self.families {
            let shape = match f.family.shape {
                Shape::Diagonal => "diagonal",
                Shape::Antidiagonal => "antidiagonal",
                Shape::Permutation => "permutation",
            };
            s += &format!(
                "{:<13} {:>3} {:>3} {:>5} {:>10} {:>8} {:>8} {:>10} {:>10}\n",
                shape,
                f.family.rational_height,
                f.family.exponent_bound,
                f.family.radical_parts,
                f.candidates,
                f.skipped.len(),
                f.refutations.len(),
                f.unresolved.len(),
                f.counterexamples.len()
            );
        }
        s += &format!("verdict: {}\n", match self.verdict {
            ReportVerdict::ConsistentWithClaim => "consistent_with_claim",
            ReportVerdict::CounterexampleFound => "counterexample_found",
        });
        s
    }
}

impl fmt::Display for FGroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_table())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizeOptions {
    pub height: u32,
    pub exponent_bound: u32,
    pub n_bound: u32,
    pub budget: u64,
    pub radical_parts: bool,
    pub jobs: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self {
            height: DEFAULT_HEIGHT,
            exponent_bound: DEFAULT_EXPONENT_BOUND,
            n_bound: DEFAULT_N_BOUND,
            budget: DEFAULT_BUDGET,
            radical_parts: false,
            jobs: thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

const REDUCTION_ASSUMPTION: &str = "an invariant matrix has monomial entries q·(shift)^k; only this monomial family is refuted, the reduction of arbitrary matrices to it is not re-proved";

fn half(s: &SymbolicReal) -> Result<SymbolicReal> {
    let name = format!("{}_half", s.name);
    match s.approx {
        Some(x) => SymbolicReal::with_approx(&name, x.sqrt(), (x + s.radius).sqrt() - x.sqrt()),
        None => SymbolicReal::new(&name),
    }
}

fn sym(name: &str, e: i64) -> (Rational, Monomial) {
    (Rational::one(), Monomial::symbol(name, e))
}

/// Builds the presentation for `diag(α, β)`, verifies the inclusion of the
/// claimed group and refutes the diagonal and antidiagonal candidates.
pub fn realize_dispatch(
    alpha: &SymbolicReal,
    beta: &BetaCase,
    opts: &RealizeOptions,
) -> Result<(Presentation, FGroupReport)> {
    let a = &alpha.name;
    let sigma = half(alpha)?;
    let s = sigma.name.clone();
    let mut substitutions = Vec::new();
    let (p, gen, description) = match beta {
        BetaCase::Independent(b) => {
            if b.name == *a {
                return Err(Error::UnsupportedBeta(format!("independent beta must not be named {a}")));
            }
            let tau = half(b)?;
            let t = tau.name.clone();
            substitutions.push(format!("{s} = {a}^(1/2)"));
            substitutions.push(format!("{t} = {}^(1/2)", b.name));
            let p = Presentation::t1(sigma, tau)?;
            let gen = MonomialMatrix::diagonal(vec![sym(&s, 2), sym(&t, 2)])?;
            (p, gen, format!("{{diag({a}^n, {}^n) : n ∈ Z}}", b.name))
        }
        BetaCase::InvAlpha => {
            substitutions.push(format!("{s} = {a}^(1/2)"));
            let gen = MonomialMatrix::diagonal(vec![sym(&s, 2), sym(&s, -2)])?;
            (Presentation::t3(sigma)?, gen, format!("{{diag({a}^n, {a}^-n) : n ∈ Z}}"))
        }
        BetaCase::Alpha => {
            substitutions.push(format!("{s} = {a}^(1/2)"));
            let gen = MonomialMatrix::diagonal(vec![sym(&s, 2), sym(&s, 2)])?;
            (Presentation::t5(sigma)?, gen, format!("{{diag({a}^n, {a}^n) : n ∈ Z}}"))
        }
        BetaCase::One => {
            let gamma = SymbolicReal::new("gamma")?;
            let gen = MonomialMatrix::diagonal(vec![sym(a, 1), (Rational::one(), Monomial::one())])?;
            (Presentation::t6(alpha.clone(), gamma)?, gen, format!("{{diag({a}^n, 1) : n ∈ Z}}"))
        }
    };
    let verified_inclusions = verify_inclusion(&p, &gen, opts.n_bound)?;
    let mut families = Vec::new();
    for shape in [Shape::Diagonal, Shape::Antidiagonal] {
        let fam = CandidateFamily::new(shape, opts.height, opts.exponent_bound, opts.radical_parts)?;
        families.push(refute_candidates(&p, &gen, &fam, opts.budget, opts.jobs)?);
    }
    let mut assumptions = p.assumptions.clone();
    assumptions.push(REDUCTION_ASSUMPTION.to_string());
    let verdict = if families.iter().any(|f| !f.counterexamples.is_empty()) {
        ReportVerdict::CounterexampleFound
    } else {
        ReportVerdict::ConsistentWithClaim
    };
    let report = FGroupReport {
        presentation_tag: p.tag.to_string(),
        claimed_generator: gen,
        claimed_description: description,
        substitutions,
        verified_inclusions,
        families,
        assumptions,
        verdict,
    };
    Ok((p, report))
}
