mod common;

use afgroup::laurent::{bezout_integerized, eval_mod, monic_lemma, monic_lemma_with_budget, solve_unit_power};
use afgroup::{Error, IntPoly, LaurentPoly, Rational};
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Resultant as the determinant of the Sylvester matrix, by Gaussian
/// elimination over ℚ; shares no code with the library.
fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    let mut a = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            a[i][i + k] = Rational::from_integer(f.coeff(m - k));
        }
    }
    for i in 0..m {
        for k in 0..=n {
            a[n + i][i + k] = Rational::from_integer(g.coeff(n - k));
        }
    }
    let mut det = Rational::one();
    for c in 0..size {
        let Some(p) = (c..size).find(|&r| !a[r][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..size {
            let f = a[r][c].clone() / a[c][c].clone();
            for k in c..size {
                let v = a[c][k].clone() * f.clone();
                a[r][k] -= v;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

fn eval_laurent(f: &LaurentPoly, x: &Rational) -> Rational {
    f.terms().map(|(e, c)| c * pow(x, e)).fold(Rational::zero(), |a, b| a + b)
}

fn pow(x: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[test]
fn bezout_constant_divides_the_resultant() {
    let mut r = rng(21);
    let mut done = 0;
    while done < 40 {
        let (df, dg) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let f = random_poly(&mut r, df, 6);
        let g = random_poly(&mut r, dg, 6);
        let res = resultant(&f, &g);
        match bezout_integerized(&f, &g) {
            Ok(b) => {
                assert!(!res.is_zero(), "coprime result for {f} and {g} with zero resultant");
                assert_eq!(&(&b.a_poly * &f) + &(&b.b_poly * &g), IntPoly::constant(b.m.clone()));
                assert!(b.m.is_positive());
                assert!(res.is_multiple_of(&b.m), "M = {} does not divide Res = {res}", b.m);
                done += 1;
            }
            Err(e) => {
                assert!(matches!(e, Error::NotCoprime { .. }), "{e}");
                assert!(res.is_zero(), "{f} and {g} reported not coprime, Res = {res}");
            }
        }
    }
}

#[test]
fn bezout_constant_is_minimal_for_simple_pairs() {
    // (t - a) and (t - b): the ideal meets ℤ in (a - b)
    for (a, b) in [(0i64, 3), (2, 7), (-4, 5), (1, 2)] {
        let r = bezout_integerized(&ip(&[-a, 1]), &ip(&[-b, 1])).unwrap();
        assert_eq!(r.m, BigInt::from((a - b).abs()));
    }
    let r = bezout_integerized(&ip(&[-2, 0, 1]), &ip(&[-3, 0, 1])).unwrap();
    assert_eq!(r.m, BigInt::one());
}

#[test]
fn monic_lemma_holds_at_rational_points() {
    let cases: [(&[i64], i64); 5] = [(&[-2, 0, 1], 3), (&[-1, -1, 1], 5), (&[-2, 0, 0, 1], 7), (&[3, 1, 1], 2), (&[-1, -1, 0, 1], 4)];
    for (psi, m) in cases {
        let psi = ip(psi);
        let mb = BigInt::from(m);
        let res = monic_lemma(&psi, &mb).unwrap();
        assert!(res.phi1.is_integral() && res.phi2.is_integral());
        assert!(res.n < 0);
        let bound = num_traits::pow(BigInt::from(m), psi.degree().unwrap()) + 1;
        assert!(BigInt::from(res.steps) <= bound, "{} steps exceed the pigeonhole bound {bound}", res.steps);
        let mq = Rational::from_integer(mb.clone());
        for x in [q(1, 2), q(-3, 1), q(5, 7), q(2, 1), q(-1, 3)] {
            let px = eval_laurent(&LaurentPoly::from_int_poly(&psi), &x);
            let lhs = &mq * eval_laurent(&res.phi1, &x) + px * eval_laurent(&res.phi2, &x) + pow(&x, res.n);
            assert_eq!(lhs, Rational::one(), "psi = {psi}, m = {m}, x = {x}");
        }
    }
}

#[test]
fn monic_lemma_rejects_bad_inputs() {
    assert!(monic_lemma(&ip(&[-2, 0, 2]), &BigInt::from(3)).is_err());
    assert!(monic_lemma(&ip(&[-2, 0, 1]), &BigInt::one()).is_err());
    assert!(monic_lemma(&ip(&[-2, 0, 1]), &BigInt::zero()).is_err());
    let tight = monic_lemma_with_budget(&ip(&[-1, -1, 0, 1]), &BigInt::from(1_000_003), 3);
    assert!(matches!(tight, Err(Error::SearchExhausted(_))), "{tight:?}");
}

#[test]
fn eval_mod_matches_evaluation_at_real_roots() {
    let mut r = rng(22);
    let sqrt2 = 2f64.sqrt();
    for _ in 0..50 {
        let lo = r.gen_range(-8..=2);
        let c: Vec<Rational> = (0..r.gen_range(1..8)).map(|_| q(r.gen_range(-5..=5), r.gen_range(1..=3))).collect();
        let f = LaurentPoly::new(lo, c);
        let res = eval_mod(&f, &ip(&[-2, 0, 1])).unwrap();
        let direct: f64 = f.terms().map(|(e, c)| ratf(c) * sqrt2.powi(e as i32)).sum();
        let via: f64 = res.coeffs().iter().enumerate().map(|(i, c)| ratf(c) * sqrt2.powi(i as i32)).sum();
        assert!((direct - via).abs() < 1e-9 * direct.abs().max(1.0), "{f}");
    }
}

fn ratf(x: &Rational) -> f64 {
    x.to_f64().unwrap()
}

#[test]
fn eval_mod_needs_t_invertible_for_negative_powers() {
    let f = LaurentPoly::t_pow(-1);
    assert!(matches!(eval_mod(&f, &ip(&[0, 1, 1])), Err(Error::TNotInvertible(_))));
    assert!(eval_mod(&LaurentPoly::t_pow(3), &ip(&[0, 1, 1])).is_ok());
}

#[test]
fn unit_power_exponent_is_the_least_multiple_of_the_order() {
    for (r, base, min_n) in [(10007i64, 2i64, 1u32), (10007, 3, 5000), (-91, 10, 7), (1, 6, 4), (625, 3, 1)] {
        let (rb, qb) = (BigInt::from(r), BigInt::from(base));
        let u = solve_unit_power(&rb, &qb, min_n).unwrap();
        assert_eq!(&u.s * &rb + qb.pow(u.n), BigInt::one());
        // order of q mod |r| by direct iteration
        let m = r.abs();
        let ord = if m == 1 {
            1
        } else {
            let (mut x, mut k) = (base.rem_euclid(m), 1u32);
            while x != 1 {
                x = x * base % m;
                k += 1;
            }
            k
        };
        assert_eq!(u.n, min_n.div_ceil(ord) * ord, "r = {r}, q = {base}");
    }
}
