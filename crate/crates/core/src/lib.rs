//! Exact arithmetic for structured subgroups of ℝ² and their invariance
//! groups: number tower, Laurent-polynomial engines, basis-resolved group
//! presentations, replayable certificates and realization reports.
//!
//! Polynomial types are generic over a scalar ring through `num-traits`;
//! the aliases below fix the exact instantiations used by the decision
//! procedures.

pub mod certificates;
pub mod error;
pub mod exactnum;
pub mod fgroup;
pub mod groups;
pub mod laurent;
pub mod numtheory;
pub mod scalar;
pub mod serde_util;

pub use error::{Error, ErrorClass, Result};
pub use scalar::{Field, Interval, Ring};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type IntPoly = laurent::Poly<Integer>;
pub type RatPoly = laurent::Poly<Rational>;
pub type LaurentPoly = laurent::Laurent<Rational>;
pub type CubicExtElement = exactnum::CubicExt<exactnum::RatFunction>;
