//! The radical extension `F(∛2)` with basis `1, ∛2, ∛4`, generic over the
//! coefficient field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// `c[0] + c[1]·∛2 + c[2]·∛4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicExt<F> {
    pub c: [F; 3],
}

impl<F: Field> CubicExt<F> {
    pub fn new(c0: F, c1: F, c2: F) -> Self {
        Self { c: [c0, c1, c2] }
    }

    pub fn from_base(c0: F) -> Self {
        Self::new(c0, F::zero(), F::zero())
    }

    pub fn cbrt2() -> Self {
        Self::new(F::zero(), F::one(), F::zero())
    }

    fn two() -> F {
        F::one() + F::one()
    }

    /// Product of the three conjugates:
    /// `c0³ + 2·c1³ + 4·c2³ − 6·c0·c1·c2`.
    pub fn norm(&self) -> F {
        let [a, b, c] = &self.c;
        let two = Self::two();
        let four = two.clone() * two.clone();
        let six = two.clone() + four.clone();
        a.clone() * a.clone() * a.clone() + two * b.clone() * b.clone() * b.clone()
            + four * c.clone() * c.clone() * c.clone()
            - six * a.clone() * b.clone() * c.clone()
    }

    /// `x · cofactor(x) = norm(x)`; the cofactor is the product of the two
    /// non-trivial conjugates.
    pub fn cofactor(&self) -> Self {
        let [a, b, c] = &self.c;
        let two = Self::two();
        Self::new(
            a.clone() * a.clone() - two.clone() * b.clone() * c.clone(),
            two * c.clone() * c.clone() - a.clone() * b.clone(),
            b.clone() * b.clone() - a.clone() * c.clone(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let [a, b, c] = self.cofactor().c;
        Ok(Self::new(a / n.clone(), b / n.clone(), c / n))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> CubicExt<G> {
        CubicExt { c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2])] }
    }
}

impl<F: Field> Add for CubicExt<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = o.c;
        Self::new(a0 + b0, a1 + b1, a2 + b2)
    }
}

impl<F: Field> Sub for CubicExt<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Neg for CubicExt<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a, b, c] = self.c;
        Self::new(-a, -b, -c)
    }
}

impl<F: Field> Mul for CubicExt<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = o.c;
        let two = Self::two();
        Self::new(
            a0.clone() * b0.clone() + two.clone() * (a1.clone() * b2.clone() + a2.clone() * b1.clone()),
            a0.clone() * b1.clone() + a1.clone() * b0.clone() + two * a2.clone() * b2.clone(),
            a0 * b2 + a1 * b1 + a2 * b0,
        )
    }
}

impl<F: Field> Zero for CubicExt<F> {
    fn zero() -> Self {
        Self::from_base(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl<F: Field> One for CubicExt<F> {
    fn one() -> Self {
        Self::from_base(F::one())
    }
}

impl<F: Field + fmt::Display> fmt::Display for CubicExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .zip(["", "·∛2", "·∛4"])
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, r)| format!("({c}){r}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
