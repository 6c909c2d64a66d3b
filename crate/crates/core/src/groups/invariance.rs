//! Deciding `G·M = G` slot by slot.

use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::element::{GroupElement, Membership, Resolution, SlotKey};
use super::expr::Vector;
use super::matrix::MonomialMatrix;
use super::presentation::{CoeffRing, DegreeSet, Presentation};
use crate::error::Result;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `element ∈ G` but `element · M ∉ G`.
    Forward,
    /// `element ∈ G` but `element · M⁻¹ ∉ G`, so `element ∉ G·M`.
    Inverse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub element: GroupElement,
    /// The matrix actually applied: `M` or `M⁻¹`.
    pub applied: MonomialMatrix,
    pub image: Vector,
    pub direction: Direction,
    pub reason: String,
}

impl Witness {
    /// Replays the witness from scratch against `p`.
    pub fn replays(&self, p: &Presentation) -> bool {
        p.is_member(&self.element).is_member()
            && p.apply_monomial(&self.element, &self.applied).ok().as_ref() == Some(&self.image)
            && matches!(p.classify_vector(&self.image), Ok(Membership::NonMember(_)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "element": self.element.to_json(),
            "applied": self.applied.to_json(),
            "image": self.image,
            "direction": match self.direction { Direction::Forward => "forward", Direction::Inverse => "inverse" },
            "reason": self.reason,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Invariance {
    Invariant,
    NotInvariant(Box<Witness>),
}

impl Invariance {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Invariance::Invariant)
    }
}

/// `0, 1, -1, 2, -2, …, W, -W`.
fn degree_order(w: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=w).flat_map(|d| [d, -d]))
}

fn lcm(a: i64, b: i64) -> i64 {
    use num_integer::Integer;
    a.lcm(&b)
}

impl Presentation {
    /// Degree window outside which slot images repeat the pattern seen inside.
    fn invariance_window(&self, m: &MonomialMatrix) -> i64 {
        let entry_w = m.entries().iter().map(|(_, mo)| mo.weight()).max().unwrap_or(0);
        let mut period = 2;
        let mut reach = 0;
        let mut listed = 0;
        for r in &self.rules {
            for t in r.coords.iter().flatten() {
                for (_, a, b) in &t.exps {
                    if *a != 0 {
                        period = lcm(period, *a);
                    }
                    reach = reach.max(a.abs() + b.abs());
                }
            }
            if let DegreeSet::Only(ds) = &r.degrees {
                listed = ds.iter().map(|d| d.abs()).max().unwrap_or(0).max(listed);
            }
        }
        4 + 2 * period + 2 * entry_w + 2 * reach + listed
    }

    /// Checks whether the image of one slot stays inside `G`.
    fn slot_image_failure(
        &self,
        key: SlotKey,
        applied: &MonomialMatrix,
        direction: Direction,
    ) -> Result<Option<Witness>> {
        let ring = self.rules[key.rule].ring;
        let image = applied.apply(&self.slot_vector(key));
        let witness = |c: Rational, reason: String| -> Result<Option<Witness>> {
            let element = GroupElement::slot(key, c);
            let image = self.apply_monomial(&element, applied)?;
            Ok(Some(Witness { element, applied: applied.clone(), image, direction, reason }))
        };
        match self.resolve(&image)? {
            Resolution::OffBasis(why) => witness(Rational::one(), why),
            Resolution::Element(e) => {
                if ring == CoeffRing::Z {
                    return match self.is_member(&e) {
                        Membership::Member => Ok(None),
                        Membership::NonMember(why) => witness(Rational::one(), why),
                    };
                }
                // A ℚ-slot: every rational multiple must land in G, so the
                // image may only touch ℚ-slots.
                for (k, rho) in e.coeffs() {
                    match self.rules[k.rule].ring {
                        CoeffRing::Q => {}
                        CoeffRing::Zero => {
                            return witness(Rational::one(), self.is_member(&e).reason_or_default());
                        }
                        CoeffRing::Z => {
                            let c = Rational::one() / Rational::from_integer(rho.numer().abs() * 2);
                            let scaled = e.scale(&c);
                            return witness(c, self.is_member(&scaled).reason_or_default());
                        }
                    }
                }
                Ok(None)
            }
        }
    }

    /// Decides `G·M = G` by checking `G·M ⊆ G` and `G·M⁻¹ ⊆ G` on every
    /// slot of a degree window wide enough to cover one full period of the
    /// (affine, parity-periodic) slot structure beyond all offsets.
    pub fn check_invariance(&self, m: &MonomialMatrix) -> Result<Invariance> {
        self.expressible(m)?;
        let inv = m.inverse();
        let w = self.invariance_window(m);
        let mut finite: Vec<SlotKey> = Vec::new();
        for (r, rule) in self.rules.iter().enumerate() {
            if let DegreeSet::Only(ds) = &rule.degrees {
                finite.extend(ds.iter().map(|&d| SlotKey { rule: r, degree: d }));
            }
        }
        let infinite_rules: Vec<usize> = self
            .rules
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.degrees.is_finite())
            .map(|(i, _)| i)
            .collect();
        let window = degree_order(w).flat_map(|d| {
            infinite_rules
                .iter()
                .filter(move |&&r| self.rules[r].degrees.contains(d))
                .map(move |&r| SlotKey { rule: r, degree: d })
        });
        for key in finite.into_iter().chain(window) {
            if self.rules[key.rule].ring == CoeffRing::Zero {
                continue;
            }
            for (applied, dir) in [(m, Direction::Forward), (&inv, Direction::Inverse)] {
                if let Some(w) = self.slot_image_failure(key, applied, dir)? {
                    return Ok(Invariance::NotInvariant(Box::new(w)));
                }
            }
        }
        Ok(Invariance::Invariant)
    }
}

impl Membership {
    fn reason_or_default(&self) -> String {
        match self {
            Membership::Member => "image leaves the group".into(),
            Membership::NonMember(why) => why.clone(),
        }
    }
}
