mod common;

use afgroup::exactnum::SymbolicReal;
use afgroup::groups::{determinant, CoeffRing, GroupElement, Invariance, Membership, MonomialMatrix, Presentation, SlotKey};
use afgroup::Error;
use common::*;
use rand::Rng;
use serde_json::json;

fn sym(name: &str, approx: f64) -> SymbolicReal {
    SymbolicReal::with_approx(name, approx, 0.0).unwrap()
}

fn all() -> Vec<(Presentation, MonomialMatrix)> {
    let m = |v| MonomialMatrix::from_json(&v).unwrap();
    vec![
        (
            Presentation::t1(sym("alpha", 2.5), sym("beta", 0.3)).unwrap(),
            m(json!({"shape": "diagonal", "entries": ["alpha^2", "beta^2"]})),
        ),
        (Presentation::t3(sym("alpha", 2.5)).unwrap(), m(json!({"shape": "diagonal", "entries": ["alpha^2", "alpha^-2"]}))),
        (Presentation::t5(sym("alpha", 2.5)).unwrap(), m(json!({"shape": "diagonal", "entries": ["alpha^2", "alpha^2"]}))),
        (
            Presentation::t6(sym("alpha", 2.5), sym("gamma", 0.7)).unwrap(),
            m(json!({"shape": "diagonal", "entries": ["alpha", "1"]})),
        ),
    ]
}

/// Random element built only from slots the presentation declares, with
/// coefficients from each slot's ring.
fn random_element(p: &Presentation, r: &mut impl Rng) -> GroupElement {
    let mut g = GroupElement::zero();
    for _ in 0..r.gen_range(1..=4) {
        let rule = r.gen_range(0..p.rules.len());
        let d = r.gen_range(-3..=3i64);
        if !p.rules[rule].degrees.contains(d) {
            continue;
        }
        let den = if matches!(p.rules[rule].ring, CoeffRing::Q) { r.gen_range(1..=5) } else { 1 };
        g.add_slot(SlotKey { rule, degree: d }, q(r.gen_range(-5..=5), den));
    }
    g
}

#[test]
fn presentations_round_trip_through_json() {
    for (p, _) in all() {
        let v = p.to_json();
        let mut input = v.clone();
        input.as_object_mut().unwrap().remove("dim");
        let back = Presentation::from_json(&input).unwrap();
        assert_eq!(back.to_json(), v);
    }
    let bad = json!({"tag": "T1", "symbols": [{"name": "alpha"}]});
    assert!(matches!(Presentation::from_json(&bad), Err(Error::InvalidParams(_))));
    assert!(matches!(Presentation::from_json(&json!({"tag": "T9"})), Err(Error::InvalidInput(_))));
}

#[test]
fn claimed_generators_map_members_to_members() {
    let mut r = rng(41);
    for (p, gen) in all() {
        for k in [-2i64, -1, 1, 2] {
            let m = gen.pow(k);
            assert!(p.check_invariance(&m).unwrap().is_invariant(), "{}: {m}", p.tag);
            for _ in 0..20 {
                let g = random_element(&p, &mut r);
                assert!(p.is_member(&g).is_member());
                let image = p.apply_monomial(&g, &m).unwrap();
                assert_eq!(p.classify_vector(&image).unwrap(), Membership::Member, "{}: {m} on {:?}", p.tag, g);
            }
        }
    }
}

#[test]
fn refutation_witnesses_replay() {
    let m = |v| MonomialMatrix::from_json(&v).unwrap();
    let cases = [
        (0usize, m(json!({"shape": "diagonal", "entries": ["alpha", "beta"]}))),
        (0, m(json!({"shape": "diagonal", "entries": ["1/2*alpha^2", "beta^2"]}))),
        (0, m(json!({"shape": "antidiagonal", "entries": ["alpha", "beta"]}))),
        (1, m(json!({"shape": "diagonal", "entries": ["alpha", "alpha^-1"]}))),
        (2, m(json!({"shape": "diagonal", "entries": ["2*alpha^2", "alpha^2"]}))),
        (3, m(json!({"shape": "diagonal", "entries": ["alpha", "gamma"]}))),
    ];
    let ps = all();
    for (i, mat) in cases {
        let p = &ps[i].0;
        match p.check_invariance(&mat).unwrap() {
            Invariance::NotInvariant(w) => {
                assert!(w.replays(p), "{}: {mat}", p.tag);
                assert!(p.is_member(&w.element).is_member());
                let image = p.apply_monomial(&w.element, &w.applied).unwrap();
                assert!(!p.classify_vector(&image).unwrap().is_member());
            }
            Invariance::Invariant => panic!("{}: {mat} reported invariant", p.tag),
        }
    }
}

#[test]
fn density_witnesses_are_short_and_independent() {
    for (p, _) in all() {
        let w = p.density_witness(&q(1, 100)).unwrap();
        assert_eq!(w.len(), p.dim);
        for g in &w {
            assert!(p.is_member(g).is_member());
            for k in 0..p.dim {
                let enc = p.state_eval(k, g).unwrap().1.unwrap();
                assert!(enc.lo.abs().max(enc.hi.abs()) < 0.01, "{}: coordinate {k} = {enc}", p.tag);
            }
        }
        let rows: Vec<_> = w.iter().map(|g| p.to_vector(g)).collect();
        // α is transcendental, so a nonzero expression is a nonzero number even
        // where the numeric approximation happens to be a root of it
        assert!(!determinant(&rows).is_zero(), "{}", p.tag);
    }
}

#[test]
fn order_unit_is_strictly_positive() {
    for (p, _) in all() {
        assert!(p.is_positive(p.unit()).unwrap());
        assert!(!p.is_positive(&p.unit().neg()).unwrap());
        assert!(p.le(&GroupElement::zero(), p.unit()).unwrap());
    }
}
