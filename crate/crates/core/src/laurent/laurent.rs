use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::scalar::{Field, Ring};

/// Laurent polynomial `Σ coeffs[i] · t^(lowest + i)`.
///
/// Canonical form: first and last stored coefficients are nonzero; the zero
/// polynomial is `lowest = 0` with no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<T> {
    lowest: i64,
    coeffs: Vec<T>,
}

impl<T: Ring> Laurent<T> {
    pub fn new(lowest: i64, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Laurent::zero();
        }
        coeffs.drain(..lead);
        Laurent { lowest: lowest + lead as i64, coeffs }
    }

    pub fn zero() -> Self {
        Laurent { lowest: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Laurent::new(0, vec![c])
    }

    pub fn monomial(c: T, exp: i64) -> Self {
        Laurent::new(exp, vec![c])
    }

    /// `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Laurent::monomial(T::one(), exp)
    }

    pub fn from_poly(p: &Poly<T>) -> Self {
        Laurent::new(0, p.coeffs().to_vec())
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Highest exponent; `None` for zero.
    pub fn highest(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.lowest + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> T {
        let i = exp - self.lowest;
        if i < 0 {
            return T::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lowest + i as i64, c))
    }

    /// Split as `t^k · p(t)` with `p(0) ≠ 0` (or zero).
    pub fn as_shifted_poly(&self) -> (i64, Poly<T>) {
        (self.lowest, Poly::new(self.coeffs.clone()))
    }

    /// `Some` iff no negative exponents occur.
    pub fn to_poly(&self) -> Option<Poly<T>> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.lowest < 0 {
            return None;
        }
        Some(Poly::new(self.coeffs.clone()).shift(self.lowest as usize))
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { lowest: self.lowest + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Laurent::new(self.lowest, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Laurent::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `t ↦ 1/t`.
    pub fn invert_variable(&self) -> Self {
        match self.highest() {
            None => Laurent::zero(),
            Some(h) => {
                let mut c = self.coeffs.clone();
                c.reverse();
                Laurent::new(-h, c)
            }
        }
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Laurent<U> {
        Laurent::new(self.lowest, self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Laurent<T> {
    /// Evaluate at a nonzero point; `None` at zero when negative powers occur.
    pub fn eval(&self, x: &T) -> Option<T> {
        if self.is_zero() {
            return Some(T::zero());
        }
        let body = Poly::new(self.coeffs.clone()).eval(x);
        let k = self.lowest;
        if k < 0 && x.is_zero() {
            return None;
        }
        let mut factor = T::one();
        let base = if k < 0 { T::one() / x.clone() } else { x.clone() };
        for _ in 0..k.unsigned_abs() {
            factor = factor * base.clone();
        }
        Some(body * factor)
    }
}

impl Laurent<BigRational> {
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn from_int_poly(p: &Poly<BigInt>) -> Self {
        Laurent::from_poly(&p.to_rational())
    }
}

impl<T: Ring> Add for &Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, o: &Laurent<T>) -> Laurent<T> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lowest.min(o.lowest);
        let hi = self.highest().unwrap().max(o.highest().unwrap());
        Laurent::new(lo, (lo..=hi).map(|e| self.coeff(e) + o.coeff(e)).collect())
    }
}

impl<T: Ring> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Ring> Sub for &Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, o: &Laurent<T>) -> Laurent<T> {
        self + &(-o)
    }
}

impl<T: Ring> Mul for &Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, o: &Laurent<T>) -> Laurent<T> {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let p = &Poly::new(self.coeffs.clone()) * &Poly::new(o.coeffs.clone());
        Laurent::new(self.lowest + o.lowest, p.into_coeffs())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr for Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, o: Laurent<T>) -> Laurent<T> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Ring> Neg for Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        -&self
    }
}

impl<T: Ring> Zero for Laurent<T> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Laurent<T> {
    fn one() -> Self {
        Laurent::one()
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, String)> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        super::write_terms(f, terms.into_iter().rev())
    }
}
