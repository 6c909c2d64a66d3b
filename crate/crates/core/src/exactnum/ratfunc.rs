use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{RatPoly, Rational};

/// Element of ℚ(t): coprime numerator and monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunction {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunction {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd_primitive(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (exact_div(&num, &g), exact_div(&den, &g))
        };
        let lead = den.leading().expect("nonzero").clone();
        let inv = Rational::one() / lead;
        Ok(Self { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: RatPoly) -> Self {
        Self { num: p, den: RatPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(RatPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(RatPoly::t())
    }

    pub fn numer(&self) -> &RatPoly {
        &self.num
    }

    pub fn denom(&self) -> &RatPoly {
        &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl Zero for RatFunction {
    fn zero() -> Self {
        Self { num: RatPoly::zero(), den: RatPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunction {
    fn one() -> Self {
        Self::from_poly(RatPoly::one())
    }
}

fn exact_div(p: &RatPoly, d: &RatPoly) -> RatPoly {
    p.div_rem(d).expect("nonzero divisor").0
}

/// Sums over the least common denominator `d₁·(d₂/g)`, `g = gcd(d₁, d₂)`.
impl Add for &RatFunction {
    type Output = RatFunction;
    fn add(self, o: &RatFunction) -> RatFunction {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd_primitive(&o.den);
        let (c1, c2) = (exact_div(&o.den, &g), exact_div(&self.den, &g));
        let num = &(&self.num * &c1) + &(&o.num * &c2);
        RatFunction::new(num, &self.den * &c1).expect("nonzero")
    }
}

impl Sub for &RatFunction {
    type Output = RatFunction;
    fn sub(self, o: &RatFunction) -> RatFunction {
        self + &(-o)
    }
}

impl Mul for &RatFunction {
    type Output = RatFunction;
    fn mul(self, o: &RatFunction) -> RatFunction {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunction::zero();
        }
        // Cross-cancel first so the product needs no further reduction.
        let g1 = self.num.gcd_primitive(&o.den);
        let g2 = o.num.gcd_primitive(&self.den);
        let num = &exact_div(&self.num, &g1) * &exact_div(&o.num, &g2);
        let den = &exact_div(&o.den, &g1) * &exact_div(&self.den, &g2);
        let lead = den.leading().expect("nonzero").clone();
        let inv = Rational::one() / lead;
        RatFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

/// Panics on a zero divisor, like the rational division it mirrors; use
/// [`RatFunction::checked_div`] when the divisor is not known to be nonzero.
impl Div for &RatFunction {
    type Output = RatFunction;
    fn div(self, o: &RatFunction) -> RatFunction {
        self.checked_div(o).expect("division by zero rational function")
    }
}

impl Neg for &RatFunction {
    type Output = RatFunction;
    fn neg(self) -> RatFunction {
        RatFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunction {
    type Output = RatFunction;
    fn neg(self) -> RatFunction {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunction {
            type Output = RatFunction;
            fn $m(self, o: RatFunction) -> RatFunction {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl crate::Field for RatFunction {}

impl fmt::Display for RatFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
