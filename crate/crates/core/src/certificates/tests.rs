use num_bigint::BigInt;
use serde_json::Value;

use super::*;
use crate::exactnum::AlgebraicNumber;
use crate::groups::OrbitModule;
use crate::{Error, IntPoly, Rational};

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn alg(c: &[i64], lo: Rational, hi: Rational) -> AlgebraicNumber {
    AlgebraicNumber::new(ip(c), lo, hi, false).unwrap()
}

fn sqrt(n: i64) -> AlgebraicNumber {
    alg(&[-n, 0, 1], q(1, 1), q(n, 1))
}

fn accepted(certs: &[Certificate]) {
    for c in certs {
        assert_eq!(verify_certificate(c), Verdict::Accepted, "{}", c.to_json_string());
        let round: Value = serde_json::from_str(&c.to_json_string()).unwrap();
        assert_eq!(verify_json(&round), Verdict::Accepted);
    }
}

/// `P(a)` in floating point, with `a` approximated from its interval.
fn eval_f64(p: &crate::LaurentPoly, x: f64) -> f64 {
    use num_traits::ToPrimitive;
    p.terms().map(|(e, c)| c.to_f64().unwrap() * x.powi(e as i32)).sum()
}

#[test]
fn sqrt_two_and_one_half() {
    let certs = certify_rational_b(&sqrt(2), &q(1, 2)).unwrap();
    accepted(&certs);
    let (down, up) = (&certs[0], &certs[1]);
    assert!((eval_f64(&down.identity, 2f64.sqrt()) - 1.0).abs() < 1e-6);
    let n = down.constants["N"].as_i64().unwrap();
    assert_eq!(up.constants["N"].as_i64().unwrap(), n);
    let half = q(1, 2);
    let at = |p: &crate::LaurentPoly| p.eval(&half).unwrap();
    assert_eq!(at(&down.identity), Rational::from_integer(BigInt::from(2).pow(n as u32)).recip());
    assert_eq!(at(&up.identity), Rational::from_integer(BigInt::from(2).pow(n as u32)));
}

#[test]
fn integral_b_goes_through_reversal() {
    let certs = certify_rational_b(&sqrt(2), &q(3, 1)).unwrap();
    accepted(&certs);
    assert_eq!(certs[0].constants["reversed"], Value::Bool(true));
    let n = certs[0].constants["N"].as_i64().unwrap() as u32;
    assert_eq!(certs[0].identity.eval(&q(3, 1)).unwrap(), Rational::from_integer(BigInt::from(3).pow(n)).recip());
}

#[test]
fn rational_pairs() {
    for (a, b) in [(q(2, 1), q(3, 1)), (q(3, 2), q(5, 7)), (q(1, 3), q(4, 9)), (q(6, 1), q(1, 6))] {
        accepted(&certify_rational_b(&AlgebraicNumber::rational(&a), &b).unwrap());
    }
}

#[test]
fn laurent_unit_family() {
    let a = sqrt(2);
    let phi = crate::LaurentPoly::new(-1, vec![q(1, 1), q(0, 1), q(1, 1)]);
    for c2 in [-5i64, -7, -9] {
        let b = AlgebraicNumber::root_of(&ip(&[2, c2, 2]), q(1, 1), q(10, 1), false).unwrap();
        let certs = certify_laurent_unit(&a, &b, &phi, Some(&q(-c2, 2))).unwrap();
        accepted(&certs);
    }
    let b = AlgebraicNumber::root_of(&ip(&[2, -5, 2]), q(1, 1), q(10, 1), false).unwrap();
    assert_eq!(b.as_rational(), Some(q(2, 1)));
}

#[test]
fn laurent_unit_rejects_wrong_witness() {
    let a = sqrt(2);
    let b = AlgebraicNumber::root_of(&ip(&[2, -7, 2]), q(1, 1), q(10, 1), false).unwrap();
    let phi = crate::LaurentPoly::new(-1, vec![q(1, 1), q(0, 1), q(1, 1)]);
    assert!(matches!(certify_laurent_unit(&a, &b, &phi, Some(&q(5, 2))), Err(Error::WitnessMismatch(_))));
    let not_rational = crate::LaurentPoly::t_pow(1);
    assert!(matches!(certify_laurent_unit(&a, &b, &not_rational, None), Err(Error::WitnessMismatch(_))));
}

#[test]
fn monic_regimes() {
    let short = certify_monic(&AlgebraicNumber::rational(&q(2, 1)), &AlgebraicNumber::rational(&q(3, 1))).unwrap();
    assert_eq!(short[0].constants["m_bez"], Value::String("1".into()));
    accepted(&short);
    let lemma = certify_monic(&AlgebraicNumber::rational(&q(3, 1)), &sqrt(3)).unwrap();
    assert!(lemma[0].constants.contains_key("phi_lemma"));
    accepted(&lemma);
    accepted(&certify_monic(&sqrt(2), &sqrt(3)).unwrap());
}

#[test]
fn hypotheses_are_enforced() {
    let two = AlgebraicNumber::rational(&q(2, 1));
    let hyp = |r: crate::Result<[Certificate; 2]>| matches!(r, Err(Error::HypothesisViolation(_)));
    assert!(hyp(certify_rational_b(&two, &q(2, 1))));
    assert!(hyp(certify_rational_b(&two, &q(1, 1))));
    assert!(hyp(certify_rational_b(&AlgebraicNumber::rational(&q(-2, 1)), &q(1, 2))));
    let non_monic = alg(&[-1, 0, 2], q(0, 1), q(1, 1));
    assert!(hyp(certify(&two, &non_monic, None)));
}

#[test]
fn output_is_deterministic() {
    let x = certify(&sqrt(2), &AlgebraicNumber::rational(&q(1, 2)), None).unwrap();
    let y = certify(&sqrt(2), &AlgebraicNumber::rational(&q(1, 2)), None).unwrap();
    assert_eq!(x[0].to_json_string(), y[0].to_json_string());
    assert_eq!(x[1].to_json_string(), y[1].to_json_string());
}

#[test]
fn orbit_module_is_preserved() {
    let a = sqrt(2);
    let b = q(1, 2);
    let module = OrbitModule::new(a.minpoly().clone(), AlgebraicNumber::rational(&b).minpoly().clone()).unwrap();
    for cert in certify_rational_b(&a, &b).unwrap() {
        let (c, _) = &cert.target.entries()[1];
        let d2 = crate::LaurentPoly::constant(c.clone());
        for f in [crate::LaurentPoly::one(), crate::LaurentPoly::new(-2, vec![q(3, 1), q(-1, 1), q(0, 1), q(5, 1)])] {
            let image = module.apply_diagonal(&module.point(&f).unwrap(), &crate::LaurentPoly::one(), &d2).unwrap();
            assert!(module.is_member_witnessed(&image, &(&cert.identity * &f)));
        }
    }
}

#[test]
fn tampered_identity_is_rejected() {
    let mut c = certify_rational_b(&sqrt(2), &q(1, 2)).unwrap()[0].clone();
    c.identity = &c.identity + &crate::LaurentPoly::t_pow(3);
    assert!(!verify_certificate(&c).is_accepted());
    let mut c = certify_rational_b(&sqrt(2), &q(1, 2)).unwrap()[0].clone();
    c.constants.insert("extra".into(), Value::from(1));
    assert!(!verify_certificate(&c).is_accepted());
}
