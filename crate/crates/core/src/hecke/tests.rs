use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::coxeter::{bruhat_leq, from_label, CoxeterDatum, GroupElement};
use crate::error::Error;
use crate::field::{rat, NumberField};
use crate::laurent::LaurentPoly;

fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms)
}

fn t(d: &CoxeterDatum, s: &str) -> HeckeElement {
    HeckeElement::t(d.parse(s).unwrap())
}

#[test]
fn quadratic_relation() {
    let d = from_label("A1").unwrap();
    let ts = t(&d, "s0");
    let sq = t_multiply(&d, &ts, &ts);
    let mut expect = HeckeElement::term(d.identity(), rho());
    expect.add_term(d.generator(0), &lp(&[(0, -1), (2, 1)]));
    assert_eq!(sq, expect);
}

#[test]
fn length_additive_product() {
    let d = from_label("A2").unwrap();
    assert_eq!(t_multiply(&d, &t(&d, "s0"), &t(&d, "s1")), t(&d, "s0.s1"));
    assert_eq!(
        t_multiply(&d, &t(&d, "s0.s1"), &t(&d, "s0")),
        t(&d, "s0.s1.s0")
    );
}

#[test]
fn specializations_of_ts_squared() {
    let d = from_label("A1").unwrap();
    let k = NumberField::rationals();
    let ts = t(&d, "s0");
    let sq = t_multiply(&d, &ts, &ts);
    // q = 1 gives the group algebra, q = 2 gives T_s + 2
    let one = sq.specialize(&k, &k.one()).unwrap();
    assert_eq!(one, BTreeMap::from([(d.identity(), k.one())]));
    let sqrt2 = NumberField::new(crate::field::RatPoly::from_ints(&[-2, 0, 1])).unwrap();
    let two = sq.specialize(&sqrt2, &sqrt2.generator()).unwrap();
    assert_eq!(
        two,
        BTreeMap::from([(d.identity(), sqrt2.from_int(2)), (d.generator(0), sqrt2.one())])
    );
    // q = -1: (T_s + 1)^2 = 0
    let gauss = NumberField::new(crate::field::RatPoly::from_ints(&[1, 0, 1])).unwrap();
    let x = ts.add(&t(&d, "e"));
    let sq = t_multiply(&d, &x, &x);
    assert!(sq.specialize(&gauss, &gauss.generator()).unwrap().is_empty());
}

#[test]
fn inverse_generator() {
    let d = from_label("B2").unwrap();
    for s in 0..2 {
        let ts = HeckeElement::t(d.generator(s));
        let inv = t_inverse_gen(&d, s);
        assert_eq!(t_multiply(&d, &ts, &inv), t(&d, "e"));
        assert_eq!(t_multiply(&d, &inv, &ts), t(&d, "e"));
        let k = NumberField::rationals();
        assert_eq!(
            inv.specialize(&k, &k.one()).unwrap(),
            BTreeMap::from([(d.generator(s), k.one())])
        );
    }
}

#[test]
fn kappa_examples() {
    let d = from_label("A1").unwrap();
    assert_eq!(kappa(&d, &t(&d, "e")), t(&d, "e"));
    let rte = HeckeElement::term(d.identity(), LaurentPoly::r_pow(1));
    assert_eq!(kappa(&d, &rte), HeckeElement::term(d.identity(), LaurentPoly::r_pow(-1)));
    assert_eq!(kappa(&d, &t(&d, "s0")), t_inverse_gen(&d, 0));
}

#[test]
fn kl_examples() {
    let d = from_label("A2").unwrap();
    let mut tab = KLTable::new("A2");
    let w0 = d.parse("s0.s1.s0").unwrap();
    for y in d.elements().unwrap() {
        assert_eq!(kl_polynomial(&d, &y, &w0, &mut tab), LaurentPoly::one());
        assert_eq!(kl_polynomial(&d, &y, &y, &mut tab), LaurentPoly::one());
    }
    assert!(kl_polynomial(&d, &d.generator(0), &d.generator(1), &mut tab).is_zero());
}

#[test]
fn a3_singular_polynomial() {
    // the smallest non-trivial KL polynomial: P_{e, s1 s0 s2 s1} = 1 + q
    let d = from_label("A3").unwrap();
    let mut tab = KLTable::new("A3");
    let w = d.parse("s1.s0.s2.s1").unwrap();
    let q1 = lp(&[(0, 1), (2, 1)]);
    assert_eq!(kl_polynomial(&d, &d.identity(), &w, &mut tab), q1);
    assert_eq!(kl_polynomial(&d, &d.generator(1), &w, &mut tab), q1);
    assert_eq!(kl_polynomial(&d, &d.generator(0), &w, &mut tab), LaurentPoly::one());
}

#[test]
fn c_basis_examples() {
    let d = from_label("A2").unwrap();
    let mut tab = KLTable::new("A2");
    assert_eq!(c_basis(&d, &d.identity(), &mut tab), t(&d, "e"));
    let cs = c_basis(&d, &d.generator(0), &mut tab);
    assert_eq!(cs, t(&d, "e").add(&t(&d, "s0")).scale(&LaurentPoly::r_pow(-1)));
    let w0 = d.parse("s0.s1.s0").unwrap();
    let cw = c_basis(&d, &w0, &mut tab);
    let mut all = HeckeElement::zero();
    for y in d.elements().unwrap() {
        all.add_term(y, &LaurentPoly::r_pow(-3));
    }
    assert_eq!(cw, all);
}

#[test]
fn h_constant_examples() {
    let d = from_label("A1").unwrap();
    let mut tab = KLTable::new("A1");
    let e = d.identity();
    let s = d.generator(0);
    for u in [&e, &s] {
        let h = h_constants(&d, &e, u, &mut tab);
        assert_eq!(h, BTreeMap::from([(u.clone(), LaurentPoly::one())]));
    }
    let h = h_constants(&d, &s, &s, &mut tab);
    assert_eq!(h, BTreeMap::from([(s.clone(), lp(&[(-1, 1), (1, 1)]))]));
    assert!(!h.contains_key(&e));
}

#[test]
fn solve_by_bar_small() {
    let d = from_label("A1").unwrap();
    let got = solve_kl_by_bar(&d, &d.generator(0), DEFAULT_INTERVAL_BOUND).unwrap();
    assert_eq!(
        got,
        BTreeMap::from([(d.identity(), LaurentPoly::one()), (d.generator(0), LaurentPoly::one())])
    );
    let a2 = from_label("A2").unwrap();
    let got = solve_kl_by_bar(&a2, &a2.parse("s0.s1").unwrap(), DEFAULT_INTERVAL_BOUND).unwrap();
    assert_eq!(got.len(), 4);
    assert!(got.values().all(|p| *p == LaurentPoly::one()));
    let a3 = from_label("A3").unwrap();
    let w0 = a3.longest_element().unwrap();
    assert_eq!(
        solve_kl_by_bar(&a3, &w0, 10),
        Err(Error::IntervalTooLarge { size: 24, bound: 10 })
    );
}

fn check_dual_agreement(d: &CoxeterDatum, ws: &[GroupElement]) {
    let mut tab = KLTable::new(d.label());
    for w in ws {
        let oracle = solve_kl_by_bar(d, w, DEFAULT_INTERVAL_BOUND).unwrap();
        let col = kl_column(d, &mut tab, w).clone();
        assert_eq!(col, oracle, "{} {w}", d.label());
        for (y, p) in &col {
            assert!(bruhat_leq(d, y, w));
            let c = p.poly_coeffs().unwrap();
            assert!(c.iter().all(|&x| x >= 0));
            if y != w {
                assert!(p.degree().unwrap() < (w.length() - y.length()) as i32);
            }
        }
    }
}

#[test]
fn dual_algorithm_agreement_finite() {
    for label in ["A2", "B2", "A3", "G2"] {
        let d = from_label(label).unwrap();
        check_dual_agreement(&d, &d.elements().unwrap());
    }
}

#[test]
fn kappa_fixes_c_basis() {
    for label in ["A2", "B2", "affine-A1", "ext-affine-A1"] {
        let d = from_label(label).unwrap();
        let ws = if d.is_finite() { d.elements().unwrap() } else { d.ball(5) };
        let mut tab = KLTable::new(label);
        let mut kc = KappaCache::new();
        for w in ws {
            let c = c_basis(&d, &w, &mut tab);
            assert_eq!(kc.kappa(&d, &c), c, "{label} {w}");
            // unitriangular: leading term r^{-l(w)} T_w, all other support strictly shorter
            assert_eq!(c.coeff(&w), LaurentPoly::r_pow(-(w.length() as i32)));
            assert!(c.terms().all(|(y, _)| y == &w || y.length() < w.length()));
        }
    }
}

#[test]
fn q_one_is_group_algebra() {
    let d = from_label("A2").unwrap();
    let k = NumberField::rationals();
    let elems = d.elements().unwrap();
    for x in &elems {
        for y in &elems {
            let p = t_multiply(&d, &HeckeElement::t(x.clone()), &HeckeElement::t(y.clone()));
            let got = p.specialize(&k, &k.one()).unwrap();
            assert_eq!(got, BTreeMap::from([(d.multiply(x, y), k.one())]));
        }
    }
}

#[test]
fn cache_roundtrip_and_validation() {
    let d = from_label("B2").unwrap();
    let mut tab = KLTable::new("B2");
    for w in d.elements().unwrap() {
        kl_column(&d, &mut tab, &w);
    }
    let text = cache::render(&tab);
    assert!(text.ends_with('\n'));
    let back = cache::parse(&d, &text).unwrap();
    assert_eq!(back, tab);
    assert_eq!(cache::render(&back), text);

    let bad = "B2|s0|s0|2\n";
    assert!(matches!(cache::parse(&d, bad), Err(Error::CacheLine { line: 1, .. })));
    let trailing = "B2|e|e|1,0\n";
    assert!(matches!(cache::parse(&d, trailing), Err(Error::CacheLine { line: 1, .. })));
    let unsorted = "B2|s0|s0|1\nB2|e|e|1\n";
    assert!(matches!(cache::parse(&d, unsorted), Err(Error::CacheLine { line: 2, .. })));
    let wrong = "A2|e|e|1\n";
    assert!(cache::parse(&d, wrong).is_err());
    let degree = "B2|e|s0|1\nB2|s0|s0|1\n";
    // P_{e,s0} = 1 is fine; but degree 1 would exceed the bound
    assert!(cache::parse(&d, degree).is_ok());
    assert!(cache::parse(&d, "B2|e|s0|1,1\nB2|s0|s0|1\n").is_err());

    let dir = std::env::temp_dir().join(format!("hecke-cache-test-{}", std::process::id()));
    let path = dir.join("B2.kl");
    cache::save(&tab, &path).unwrap();
    let a = cache::load(&d, &path).unwrap();
    let b = cache::load(&d, &path).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, tab);
    std::fs::remove_dir_all(&dir).unwrap();
}

type RawTerms = Vec<(Vec<usize>, usize, i32, i64)>;

fn raw_terms() -> impl Strategy<Value = RawTerms> {
    prop::collection::vec(
        (prop::collection::vec(0usize..2, 0..5), 0usize..2, -3i32..3, -4i64..5),
        0..4,
    )
}

fn build(d: &CoxeterDatum, raw: &RawTerms) -> HeckeElement {
    let mut h = HeckeElement::zero();
    for (w, o, e, c) in raw {
        let x = d.multiply(&d.from_word(w).unwrap(), &d.omega_element(o % d.omega_order()));
        h.add_term(x, &LaurentPoly::monomial(*c, *e));
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity_and_kappa(ra in raw_terms(), rb in raw_terms(), rc in raw_terms(), which in 0usize..4) {
        let d = from_label(["A2", "B2", "affine-A1", "ext-affine-A1"][which]).unwrap();
        let (a, b, c) = (build(&d, &ra), build(&d, &rb), build(&d, &rc));
        let left = t_multiply(&d, &t_multiply(&d, &a, &b), &c);
        let right = t_multiply(&d, &a, &t_multiply(&d, &b, &c));
        prop_assert_eq!(left, right);
        let mut kc = KappaCache::new();
        let ka = kc.kappa(&d, &a);
        prop_assert_eq!(kc.kappa(&d, &ka), a.clone());
        let kb = kc.kappa(&d, &b);
        let lhs = kc.kappa(&d, &t_multiply(&d, &a, &b));
        prop_assert_eq!(lhs, t_multiply(&d, &ka, &kb));
    }
}

#[test]
fn specialize_generic_rational_root() {
    // root 3/2: r^2 T_e specializes to 9/4
    let d = from_label("A1").unwrap();
    let k = NumberField::rationals();
    let h = HeckeElement::term(d.identity(), rho());
    let v = h.specialize(&k, &k.from_rational(rat(3, 2))).unwrap();
    assert_eq!(v[&d.identity()], k.from_rational(rat(9, 4)));
}
