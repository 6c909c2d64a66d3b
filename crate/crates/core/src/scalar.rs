//! Coefficient traits shared by the polynomial types, plus an outward-rounded
//! `f64` interval used wherever a numeric enclosure has to be certified.
//!
//! The polynomial and extension types are generic over [`Ring`] / [`Field`];
//! the crate root fixes the exact instantiations (`IntPoly`, `RatPoly`, ...).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring with identity, as far as the polynomial code cares.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Rings whose nonzero elements are invertible. Implemented explicitly: a
/// blanket impl over `Div` would wrongly admit truncating integer division.
pub trait Field: Ring + Div<Output = Self> {}

impl Field for BigRational {}
impl Field for Ratio<i64> {}
impl Field for f64 {}
impl Field for f32 {}
impl Field for Interval {}

/// Closed interval `[lo, hi]` of doubles. Every operation rounds outward by
/// one ulp so the true real result is always enclosed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// `center ± radius`, widened by one ulp on each side.
    pub fn around(center: f64, radius: f64) -> Self {
        Interval {
            lo: (center - radius).next_down(),
            hi: (center + radius).next_up(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let x = r.to_f64().unwrap_or(f64::NAN);
        if x.is_finite() {
            Interval { lo: x.next_down(), hi: x.next_up() }
        } else if r.is_positive() {
            Interval { lo: f64::MAX, hi: f64::INFINITY }
        } else {
            Interval { lo: f64::NEG_INFINITY, hi: -f64::MAX }
        }
    }

    pub fn from_integer(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    pub fn cbrt2() -> Self {
        // 2^(1/3) = 1.2599210498948731647672...
        Interval::around(1.259_921_049_894_873_2, 0.0)
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo).next_up()
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval {
            lo: (1.0 / self.hi).next_down(),
            hi: (1.0 / self.lo).next_up(),
        })
    }

    pub fn powi(&self, k: i64) -> Option<Self> {
        if k < 0 {
            return self.recip()?.powi(-k);
        }
        let mut acc = Interval::point(1.0);
        for _ in 0..k {
            acc = acc * *self;
        }
        Some(acc)
    }

    pub fn sqrt(&self) -> Self {
        Interval {
            lo: self.lo.max(0.0).sqrt().next_down().max(0.0),
            hi: self.hi.max(0.0).sqrt().next_up(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: (self.lo + o.lo).next_down(), hi: (self.hi + o.hi).next_up() }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: (self.lo - o.hi).next_down(), hi: (self.hi - o.lo).next_up() }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: lo.next_down(), hi: hi.next_up() }
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Division by an interval containing zero yields the whole line.
    fn div(self, o: Interval) -> Interval {
        match o.recip() {
            Some(r) => self * r,
            None => Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY },
        }
    }
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval::point(0.0)
    }
    fn is_zero(&self) -> bool {
        self.lo == 0.0 && self.hi == 0.0
    }
}

impl One for Interval {
    fn one() -> Self {
        Interval::point(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cbrt2_enclosure_cubes_to_two() {
        let c = Interval::cbrt2();
        let cube = c * c * c;
        assert!(cube.lo <= 2.0 && cube.hi >= 2.0, "{cube}");
    }

    #[test]
    fn rational_enclosure_contains_value() {
        let third = BigRational::new(1.into(), 3.into());
        let i = Interval::from_rational(&third);
        let back = i * Interval::point(3.0);
        assert!(back.lo <= 1.0 && back.hi >= 1.0);
    }

    #[test]
    fn recip_refuses_zero() {
        assert!(Interval::new(-1.0, 1.0).recip().is_none());
        assert!(Interval::new(2.0, 4.0).recip().unwrap().contains_zero() == false);
    }
}
