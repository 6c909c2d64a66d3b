use num_traits::One;
use serde_json::json;

use super::*;
use crate::error::Error;
use crate::exactnum::SymbolicReal;
use crate::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn sym(name: &str, approx: f64) -> SymbolicReal {
    SymbolicReal::with_approx(name, approx, 1e-12).unwrap()
}

fn t1() -> Presentation {
    Presentation::t1(sym("alpha", 2.5), sym("beta", 0.3)).unwrap()
}

fn t3() -> Presentation {
    Presentation::t3(sym("alpha", 2.5)).unwrap()
}

fn t6() -> Presentation {
    Presentation::t6(sym("alpha", 2.5), sym("gamma", 0.7071)).unwrap()
}

fn mat(v: serde_json::Value) -> MonomialMatrix {
    MonomialMatrix::from_json(&v).unwrap()
}

#[test]
fn t1_membership_examples() {
    let p = t1();
    let g = p
        .element_from_json(&json!([
            {"radical": 0, "degree": 0, "coeff": "3/2"},
            {"radical": 0, "degree": 1, "coeff": "1"}
        ]))
        .unwrap();
    assert_eq!(p.is_member(&g), Membership::Member);
    let h = p.element_from_json(&json!([{"radical": 0, "degree": 1, "coeff": "1/2"}])).unwrap();
    assert_eq!(
        p.is_member(&h),
        Membership::NonMember("odd-degree coefficient not integral: 1/2 at degree 1".into())
    );
}

#[test]
fn t3_radical_slots() {
    let p = t3();
    let g = p.element_from_json(&json!([{"radical": 1, "degree": 3, "coeff": 2}])).unwrap();
    assert!(p.is_member(&g).is_member());
    let bad = p.element_from_json(&json!([{"radical": 1, "degree": 2, "coeff": 1}]));
    assert!(matches!(bad, Err(Error::UnknownBasisMonomial(_))));
}

#[test]
fn units_are_all_ones() {
    for p in [t1(), t3(), Presentation::t5(sym("alpha", 2.5)).unwrap(), t6()] {
        assert!(p.is_member(p.unit()).is_member());
        for e in p.to_vector(p.unit()) {
            assert_eq!(e, Expr::constant(Rational::one()));
        }
    }
    let p = t6();
    let expected = GroupElement::slot(SlotKey { rule: 0, degree: 0 }, q(1, 1))
        .add(&GroupElement::slot(SlotKey { rule: 1, degree: 0 }, q(1, 1)));
    assert_eq!(p.unit(), &expected);
}

#[test]
fn action_examples() {
    let p = t1();
    let u = p.unit().clone();
    let m = mat(json!({"shape": "diagonal", "entries": ["alpha^2", "beta^2"]}));
    let img = p.apply_monomial(&u, &m).unwrap();
    assert_eq!(
        p.resolve(&img).unwrap(),
        Resolution::Element(GroupElement::slot(SlotKey { rule: 0, degree: 2 }, q(1, 1)))
    );
    let id = MonomialMatrix::identity(2);
    assert_eq!(p.apply_monomial(&u, &id).unwrap(), p.to_vector(&u));
    let half = u.scale(&q(1, 2));
    let shift = mat(json!({"shape": "diagonal", "entries": ["alpha", "beta"]}));
    let img = p.apply_monomial(&half, &shift).unwrap();
    assert!(!p.classify_vector(&img).unwrap().is_member());
    let foreign = mat(json!({"shape": "diagonal", "entries": ["delta", "1"]}));
    assert!(matches!(p.apply_monomial(&u, &foreign), Err(Error::InexpressibleAction(_))));
}

#[test]
fn t1_invariance_examples() {
    let p = t1();
    for n in -5..=5 {
        let m = mat(json!({"shape": "diagonal", "entries": [format!("alpha^{}", 2 * n), format!("beta^{}", 2 * n)]}));
        assert!(p.check_invariance(&m).unwrap().is_invariant(), "n = {n}");
    }
    let m = mat(json!({"shape": "diagonal", "entries": ["2*alpha^2", "beta^2"]}));
    match p.check_invariance(&m).unwrap() {
        Invariance::NotInvariant(w) => assert!(w.replays(&p)),
        Invariance::Invariant => panic!("scaled shift must not be invariant"),
    }
}

#[test]
fn t3_antidiagonal_fails_on_radical_slot() {
    let p = t3();
    let m = mat(json!({"shape": "antidiagonal", "entries": ["alpha^-2", "alpha^2"]}));
    match p.check_invariance(&m).unwrap() {
        Invariance::NotInvariant(w) => {
            assert!(w.replays(&p));
            assert!(w.element.coeffs().keys().all(|k| k.rule == 2), "{:?}", w.element);
        }
        Invariance::Invariant => panic!("swap cannot preserve the cbrt2 slots"),
    }
}

#[test]
fn t6_shift_is_invariant_and_gamma_scaling_is_not() {
    let p = t6();
    let m = mat(json!({"shape": "diagonal", "entries": ["alpha", "1"]}));
    assert!(p.check_invariance(&m).unwrap().is_invariant());
    let m = mat(json!({"shape": "diagonal", "entries": ["1", "gamma"]}));
    assert!(!p.check_invariance(&m).unwrap().is_invariant());
}

#[test]
fn density_examples() {
    let p = t1();
    let w = p.density_witness(&q(1, 10)).unwrap();
    assert_eq!(w.len(), 2);
    let env = p.env().unwrap();
    for g in &w {
        assert!(p.is_member(g).is_member());
        let v = p.to_vector(g);
        let norm2 = v.iter().map(|e| e.enclosure(&env).unwrap().mid().powi(2)).sum::<f64>();
        assert!(norm2.sqrt() < 0.1);
    }
    let rows: Vec<Vector> = w.iter().map(|g| p.to_vector(g)).collect();
    assert!(!determinant(&rows).is_zero());
    let big = p.density_witness(&Rational::from_integer(1_000_000.into())).unwrap();
    assert!(big.iter().all(|g| g.coeffs().values().all(|c| c.is_one())));
    let lonely = Presentation::from_json(&json!({
        "tag": "custom",
        "symbols": [{"name": "alpha", "approx": 2.5, "radius": 1e-9}],
        "basis_rules": [{"radical": 0, "degrees": [0], "ring": "Z", "coords": ["1", "1"]}]
    }))
    .unwrap();
    assert!(matches!(lonely.density_witness(&q(1, 10)), Err(Error::SearchExhausted(_))));
}

#[test]
fn t6_density_uses_integer_combinations() {
    let p = t6();
    let w = p.density_witness(&q(1, 1000)).unwrap();
    assert_eq!(w.len(), 2);
    assert!(w.iter().all(|g| p.is_member(g).is_member()));
}

#[test]
fn riesz_examples() {
    let p = t1();
    let u = p.unit().clone();
    assert_eq!(p.riesz_interpolate(&u, &u, &u, &u).unwrap(), u);
    let zero = GroupElement::zero();
    let z = p.riesz_interpolate(&zero, &zero, &u, &u).unwrap();
    assert!(z == zero || z == u || (p.le(&zero, &z).unwrap() && p.le(&z, &u).unwrap()));
    // g1 = 2u is not below h = u
    let two = u.scale(&q(2, 1));
    assert!(matches!(p.riesz_interpolate(&two, &zero, &u, &u), Err(Error::SearchExhausted(_))));
}

#[test]
fn riesz_finds_interior_point() {
    let p = t1();
    let u = p.unit().clone();
    let a = GroupElement::slot(SlotKey { rule: 1, degree: 1 }, q(1, 1)); // (alpha, beta)
    let b = GroupElement::slot(SlotKey { rule: 0, degree: 0 }, q(1, 3)); // (1/3, 1/3)
    let h1 = a.add(&u.scale(&q(1, 1)));
    let h2 = u.scale(&q(5, 1));
    let z = p.riesz_interpolate(&a, &b, &h1, &h2).unwrap();
    for g in [&a, &b] {
        assert!(p.le(g, &z).unwrap());
    }
    for h in [&h1, &h2] {
        assert!(p.le(&z, h).unwrap());
    }
    assert!(p.is_member(&z).is_member());
}

#[test]
fn state_eval_examples() {
    let p = t1();
    let (e, enc) = p.state_eval(0, p.unit()).unwrap();
    assert_eq!(e, Expr::constant(Rational::one()));
    assert!(enc.unwrap().lo <= 1.0);
    let t2 = GroupElement::slot(SlotKey { rule: 0, degree: 2 }, q(1, 1));
    assert_eq!(p.state_eval(1, &t2).unwrap().0, Expr::term(q(1, 1), Monomial::symbol("beta", 2)));
    assert_eq!(p.state_eval(0, &GroupElement::zero()).unwrap().0, Expr::zero());
    assert!(p.state_eval(2, &t2).is_err());
}

#[test]
fn custom_presentation_round_trips() {
    let p = t3();
    let j = p.to_json();
    let mut custom = j.clone();
    custom["tag"] = json!("custom");
    let q3 = Presentation::from_json(&custom).unwrap();
    assert_eq!(q3.rules, p.rules);
    assert_eq!(q3.unit(), p.unit());
}
