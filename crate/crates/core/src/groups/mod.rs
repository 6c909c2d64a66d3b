//! Structured subgroups of ℝⁿ given by basis rules: membership, monomial
//! matrix action, invariance, density and interpolation.

mod density;
mod element;
mod expr;
mod invariance;
mod matrix;
mod orbit;
mod presentation;

pub use density::{determinant, DENSITY_DENOMINATOR_BOUND};
pub use element::{GroupElement, Membership, Resolution, SlotKey};
pub use expr::{parse_term, Env, Expr, Monomial, Vector};
pub use invariance::{Direction, Invariance, Witness};
pub use matrix::{Entry, MonomialMatrix, Shape};
pub use orbit::{OrbitModule, OrbitPoint};
pub use presentation::{BasisRule, BuilderTag, CoeffRing, DegreeSet, Presentation, Template};

#[cfg(test)]
mod tests;
