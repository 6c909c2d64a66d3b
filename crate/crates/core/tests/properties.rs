//! Randomized algebraic invariants.

mod common;

use afgroup::exactnum::{CubicExt, SymbolicReal};
use afgroup::groups::{Entry, Expr, GroupElement, Monomial, MonomialMatrix, Presentation, SlotKey};
use afgroup::laurent::{eval_mod, q_adic_certificate, solve_unit_power};
use afgroup::{IntPoly, LaurentPoly, RatPoly, Rational};
use common::{ip, q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;

const ALPHA: f64 = 2.5;
const BETA: f64 = 1.7;

fn t1() -> Presentation {
    Presentation::t1(
        SymbolicReal::with_approx("alpha", ALPHA, 0.0).unwrap(),
        SymbolicReal::with_approx("beta", BETA, 0.0).unwrap(),
    )
    .unwrap()
}

fn rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

fn cubic() -> impl Strategy<Value = CubicExt<Rational>> {
    (rat(), rat(), rat()).prop_map(|(a, b, c)| CubicExt::new(a, b, c))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-6i64..=3, prop::collection::vec(-9i64..=9, 0..8))
        .prop_map(|(lo, c)| LaurentPoly::new(lo, c.into_iter().map(|x| q(x, 1)).collect()))
}

/// Monic with nonzero constant term, so `t` is a unit modulo it.
fn modulus() -> impl Strategy<Value = IntPoly> {
    (prop::collection::vec(-5i64..=5, 1..4), prop_oneof![-3i64..=-1, 1i64..=3]).prop_map(|(mut c, c0)| {
        c[0] = c0;
        c.push(1);
        ip(&c)
    })
}

/// Members of T1: rational slots at even degrees, integral at odd ones.
fn member() -> impl Strategy<Value = GroupElement> {
    prop::collection::vec((-3i64..=3, -6i64..=6, 1i64..=4), 1..4).prop_map(|slots| {
        let mut g = GroupElement::zero();
        for (d, n, den) in slots {
            if d % 2 == 0 {
                g.add_slot(SlotKey { rule: 0, degree: d }, q(n, den));
            } else {
                g.add_slot(SlotKey { rule: 1, degree: d }, q(n, 1));
            }
        }
        g
    })
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u8..3, -3i64..=3, -3i64..=3).prop_map(|(r, i, j)| Monomial::new(r, [("alpha".into(), i), ("beta".into(), j)]))
}

fn expr() -> impl Strategy<Value = Expr> {
    prop::collection::vec((rat(), monomial()), 1..5).prop_map(|terms| {
        let mut e = Expr::zero();
        for (c, m) in terms {
            e.add_term(c, m);
        }
        e
    })
}

/// Direct floating-point evaluation, independent of the interval code.
fn expr_f64(e: &Expr) -> f64 {
    e.terms()
        .map(|(m, c)| {
            let c = c.numer().to_string().parse::<f64>().unwrap() / c.denom().to_string().parse::<f64>().unwrap();
            let rad = 2f64.powf(f64::from(m.radical()) / 3.0);
            c * rad * ALPHA.powi(m.exp("alpha") as i32) * BETA.powi(m.exp("beta") as i32)
        })
        .sum()
}

fn reduce(p: &RatPoly, psi: &IntPoly) -> RatPoly {
    p.rem(&psi.to_rational()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cubic_field_axioms(x in cubic(), y in cubic(), z in cubic()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!(x.clone() - x.clone(), CubicExt::zero());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inverse().unwrap(), CubicExt::one());
        }
    }

    #[test]
    fn cubic_norm_is_multiplicative(x in cubic(), y in cubic()) {
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.norm().is_zero(), x.is_zero());
    }

    #[test]
    fn eval_mod_is_a_ring_homomorphism(f in laurent(), g in laurent(), psi in modulus()) {
        let (ef, eg) = (eval_mod(&f, &psi).unwrap(), eval_mod(&g, &psi).unwrap());
        prop_assert_eq!(eval_mod(&(&f + &g), &psi).unwrap(), reduce(&(&ef + &eg), &psi));
        prop_assert_eq!(eval_mod(&(&f * &g), &psi).unwrap(), reduce(&(&ef * &eg), &psi));
        prop_assert!(ef.degree().is_none_or(|d| d < psi.degree().unwrap()));
    }

    #[test]
    fn eval_mod_of_t_times_t_inverse_is_one(psi in modulus(), k in 1i64..40) {
        let f = &LaurentPoly::t_pow(k) * &LaurentPoly::t_pow(-k);
        prop_assert_eq!(eval_mod(&f, &psi).unwrap(), RatPoly::one());
        let (pos, neg) = (eval_mod(&LaurentPoly::t_pow(k), &psi).unwrap(), eval_mod(&LaurentPoly::t_pow(-k), &psi).unwrap());
        prop_assert_eq!(reduce(&(&pos * &neg), &psi), RatPoly::one());
    }

    #[test]
    fn state_eval_is_additive(g in member(), h in member()) {
        let p = t1();
        for k in 0..p.dim {
            let sum = p.state_eval(k, &g.add(&h)).unwrap().0;
            let parts = p.state_eval(k, &g).unwrap().0.add(&p.state_eval(k, &h).unwrap().0);
            prop_assert_eq!(sum, parts);
        }
    }

    #[test]
    fn membership_is_closed_under_group_operations(g in member(), h in member(), n in -5i64..=5) {
        let p = t1();
        prop_assert!(p.is_member(&g).is_member());
        prop_assert!(p.is_member(&g.add(&h)).is_member());
        prop_assert!(p.is_member(&g.sub(&h)).is_member());
        prop_assert!(p.is_member(&g.scale(&q(n, 1))).is_member());
    }

    #[test]
    fn sign_agrees_with_floating_point(e in expr()) {
        let env = t1().env().unwrap();
        let x = expr_f64(&e);
        if let Ok(s) = e.sign(&env) {
            if x.abs() > 1e-9 {
                prop_assert_eq!(f64::from(s), x.signum());
            }
        } else {
            prop_assert!(x.abs() < 1e-6, "undecided sign for clearly nonzero value {}", x);
        }
    }

    #[test]
    fn invariance_is_symmetric_under_inversion(
        c in prop_oneof![Just(q(1, 1)), Just(q(2, 1)), Just(q(1, 2)), Just(q(5, 3)), Just(q(3, 2))],
        i in -2i64..=2, j in -2i64..=2, k in -2i64..=2, l in -2i64..=2,
    ) {
        let p = t1();
        let e1: Entry = (c, Monomial::new(0, [("alpha".into(), i), ("beta".into(), j)]));
        let e2: Entry = (q(1, 1), Monomial::new(0, [("alpha".into(), k), ("beta".into(), l)]));
        let m = MonomialMatrix::diagonal(vec![e1, e2]).unwrap();
        let fwd = p.check_invariance(&m).unwrap().is_invariant();
        let inv = p.check_invariance(&m.inverse()).unwrap().is_invariant();
        prop_assert_eq!(fwd, inv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn q_adic_split_is_exact(m in prop_oneof![-100_000i64..=-1, 1i64..=100_000], qq in prop_oneof![-30i64..=-2, 2i64..=30]) {
        let (mb, qb) = (BigInt::from(m), BigInt::from(qq));
        let s = q_adic_certificate(&mb, &qb).unwrap();
        let qn: BigInt = Pow::pow(&qb, s.n);
        prop_assert_eq!(&s.amp * &mb, &s.r * &qn);
        prop_assert!(s.r.gcd(&qb).is_one());
        prop_assert!(qn.is_multiple_of(&s.amp));
        // minimal n: with one fewer power the split is impossible
        if s.n > 0 {
            let smaller: BigInt = Pow::pow(&qb, s.n - 1);
            prop_assert!(!(&mb / mb.gcd(&smaller)).gcd(&qb).is_one());
        }
    }

    #[test]
    fn unit_power_solves_the_equation(r in prop_oneof![-500i64..=-1, 1i64..=500], qq in 2i64..=40, min_n in 0u32..6) {
        let (rb, qb) = (BigInt::from(r), BigInt::from(qq));
        match solve_unit_power(&rb, &qb, min_n) {
            Ok(u) => {
                prop_assert!(u.n >= min_n);
                let qn: BigInt = Pow::pow(&qb, u.n);
                prop_assert_eq!(&u.s * &rb + qn, BigInt::one());
            }
            Err(_) => prop_assert!(!rb.gcd(&qb).is_one()),
        }
    }
}
