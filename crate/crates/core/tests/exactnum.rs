mod common;

use std::cmp::Ordering;

use afgroup::exactnum::{rational_arith, real_roots, screen_irreducible, AlgebraicNumber, ArithOp, Number, Screen};
use afgroup::{Error, IntPoly, RatPoly, Rational};
use common::*;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

fn poly_f64(f: &IntPoly, x: f64) -> f64 {
    f.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
}

/// Real roots of `f` by sign changes on a fine grid plus bisection.
fn float_roots(f: &IntPoly) -> Vec<f64> {
    let mut out = Vec::new();
    let (lo, hi, n) = (-40.0, 40.0, 80_000);
    let step = (hi - lo) / n as f64;
    let mut prev = poly_f64(f, lo);
    for i in 1..=n {
        let x = lo + i as f64 * step;
        let cur = poly_f64(f, x);
        if cur == 0.0 {
            out.push(x);
        } else if prev != 0.0 && prev.signum() != cur.signum() {
            let (mut a, mut b) = (x - step, x);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if poly_f64(f, m).signum() == poly_f64(f, a).signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev = cur;
    }
    out
}

#[test]
fn isolated_roots_match_a_floating_point_scan() {
    let mut r = rng(31);
    let mut checked = 0;
    while checked < 40 {
        let deg = r.gen_range(1..=5);
        let f = random_poly(&mut r, deg, 9);
        let Ok(roots) = real_roots(&f) else { continue };
        let floats = float_roots(&f);
        assert_eq!(roots.len(), floats.len(), "{f}: {roots:?} vs {floats:?}");
        for ((lo, hi), x) in roots.iter().zip(&floats) {
            assert!(lo.to_f64().unwrap() - 1e-9 <= *x && *x <= hi.to_f64().unwrap() + 1e-9, "{f}: {x} outside [{lo}, {hi}]");
        }
        checked += 1;
    }
}

#[test]
fn comparisons_agree_with_floating_point() {
    let mut r = rng(32);
    for _ in 0..60 {
        let a = random_algebraic(&mut r, 4);
        let x = q(r.gen_range(-20..=40), r.gen_range(1..=6));
        let want = a.approx().partial_cmp(&x.to_f64().unwrap()).unwrap();
        if (a.approx() - x.to_f64().unwrap()).abs() > 1e-9 {
            assert_eq!(a.cmp_rational(&x), want, "{a} vs {x}");
        }
        assert_eq!(a.is_positive(), a.approx() > 0.0);
        let refined = a.refined(&q(1, 1_000_000));
        assert!(refined.same_as(&a));
        let (lo, hi) = refined.interval();
        assert!(hi - lo <= q(1, 1_000_000));
    }
}

#[test]
fn root_of_selects_the_factor_that_vanishes() {
    // (t - 2)(t² - 2): the root in [1, 3/2] is √2
    let f = &ip(&[-2, 1]) * &ip(&[-2, 0, 1]);
    let a = AlgebraicNumber::root_of(&f, q(1, 1), q(3, 2), false).unwrap();
    assert_eq!(a.minpoly(), &ip(&[-2, 0, 1]));
    let two = AlgebraicNumber::root_of(&f, q(3, 2), q(5, 2), false).unwrap();
    assert_eq!(two.as_rational(), Some(q(2, 1)));
    assert!(AlgebraicNumber::root_of(&f, q(3, 1), q(4, 1), false).is_err());
    // 2t² − 5t + 2 = (2t − 1)(t − 2)
    let b = AlgebraicNumber::root_of(&ip(&[2, -5, 2]), q(1, 1), q(10, 1), false).unwrap();
    assert_eq!(b.as_rational(), Some(q(2, 1)));
}

#[test]
fn irreducibility_screen_finds_small_factors() {
    let reducible = &ip(&[1, 1, 1]) * &ip(&[-3, 0, 1]);
    match screen_irreducible(&reducible).unwrap() {
        Screen::Factor(g) => assert!(g.degree().unwrap() >= 1 && g.degree().unwrap() < 4),
        other => panic!("{other:?}"),
    }
    assert_eq!(screen_irreducible(&ip(&[-2, 0, 0, 1])).unwrap(), Screen::Irreducible);
    assert_eq!(screen_irreducible(&ip(&[1, 0, 0, 0, 1])).unwrap(), Screen::Irreducible);
}

#[test]
fn sign_of_polynomial_at_a_root() {
    let s2 = AlgebraicNumber::new(ip(&[-2, 0, 1]), q(1, 1), q(2, 1), false).unwrap();
    let rp = |c: &[i64]| RatPoly::new(c.iter().map(|&x| q(x, 1)).collect());
    assert_eq!(s2.sign_of(&rp(&[-2, 0, 1])), 0);
    assert_eq!(s2.sign_of(&rp(&[-1, 1])), 1);
    assert_eq!(s2.sign_of(&rp(&[3, -2])), 1);
    assert_eq!(s2.sign_of(&rp(&[-3, 2])), -1);
    assert_eq!(s2.cmp_rational(&q(141, 100)), Ordering::Greater);
    assert_eq!(s2.cmp_rational(&q(1415, 1000)), Ordering::Less);
}

#[test]
fn rational_arithmetic_and_errors() {
    assert_eq!(rational_arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
    assert_eq!(rational_arith(&q(1, 2), &q(1, 3), ArithOp::Div).unwrap(), q(3, 2));
    assert_eq!(rational_arith(&q(1, 2), &Rational::zero(), ArithOp::Div), Err(Error::DivisionByZero));
}

#[test]
fn numbers_round_trip_through_json() {
    let values = [
        Number::Rational(q(-7, 3)),
        Number::Algebraic(AlgebraicNumber::new(ip(&[-2, 0, 0, 1]), q(1, 1), q(2, 1), false).unwrap()),
    ];
    for n in values {
        let text = serde_json::to_string(&n).unwrap();
        assert_eq!(serde_json::from_str::<Number>(&text).unwrap(), n, "{text}");
    }
    let huge = r#"{"kind":"rational","num":"123456789012345678901234567891","den":"2"}"#;
    let n: Number = serde_json::from_str(huge).unwrap();
    assert!(serde_json::to_string(&n).unwrap().contains("\"123456789012345678901234567891\""));
    assert!(serde_json::from_str::<Number>(r#"{"kind":"rational","num":"1","den":"0"}"#).is_err());
}
