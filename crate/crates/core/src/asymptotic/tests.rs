use super::*;
use crate::coxeter::from_label;
use crate::field::{rat, RatPoly};

fn el(d: &CoxeterDatum, s: &str) -> GroupElement {
    d.parse(s).unwrap()
}

fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms)
}

fn a_of(asy: &Asymptotic, d: &CoxeterDatum, s: &str) -> u32 {
    asy.a(&el(d, s)).unwrap()
}

#[test]
fn a_values_small_types() {
    let d = from_label("A1").unwrap();
    let asy = Asymptotic::finite(&d).unwrap();
    assert_eq!(a_of(&asy, &d, "e"), 0);
    assert_eq!(a_of(&asy, &d, "s0"), 1);

    let d = from_label("A2").unwrap();
    let asy = Asymptotic::finite(&d).unwrap();
    assert_eq!(a_of(&asy, &d, "e"), 0);
    for w in ["s0", "s1", "s0.s1", "s1.s0"] {
        assert_eq!(a_of(&asy, &d, w), 1, "{w}");
    }
    assert_eq!(a_of(&asy, &d, "s0.s1.s0"), 3);
    assert_eq!(asy.a_value(&el(&d, "s0")).unwrap().certificate, Certificate::Exact);

    let d = from_label("B2").unwrap();
    let asy = Asymptotic::finite(&d).unwrap();
    assert_eq!(a_of(&asy, &d, "s0.s1.s0.s1"), 4);
    assert_eq!(a_of(&asy, &d, "s0.s1.s0"), 1);
}

#[test]
fn a_value_bounds_and_inverse_symmetry() {
    for label in ["A2", "B2", "A3", "G2"] {
        let d = from_label(label).unwrap();
        let asy = Asymptotic::finite(&d).unwrap();
        let w0 = d.longest_element().unwrap();
        assert_eq!(asy.a(&w0).unwrap() as usize, w0.length(), "{label}");
        for w in asy.elements() {
            let a = asy.a(w).unwrap();
            assert!(a as usize <= w.length());
            assert_eq!(a, asy.a(&d.inverse(w)).unwrap(), "{label} {w}");
            if !w.is_identity() {
                assert!(a >= 1);
            }
        }
    }
}

#[test]
fn distinguished_sets() {
    for (label, expect) in [
        ("A1", vec!["e", "s0"]),
        ("A2", vec!["e", "s0", "s1", "s0.s1.s0"]),
        ("B2", vec!["e", "s0", "s1", "s0.s1.s0.s1"]),
    ] {
        let d = from_label(label).unwrap();
        let mut asy = Asymptotic::finite(&d).unwrap();
        let got: Vec<String> = asy
            .distinguished_involutions()
            .unwrap()
            .iter()
            .map(|w| w.key())
            .collect();
        assert_eq!(got, expect, "{label}");
    }
}

#[test]
fn distinguished_count_matches_left_cells_a3() {
    // A3 has 10 left cells (one per standard tableau of size 4).
    let d = from_label("A3").unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    let all = asy.distinguished().unwrap();
    assert_eq!(all.len(), 10);
    assert!(all.iter().all(|(_, inv)| *inv));
}

#[test]
fn gamma_conventions_a1() {
    let d = from_label("A1").unwrap();
    let asy = Asymptotic::finite(&d).unwrap();
    let s = el(&d, "s0");
    let e = d.identity();
    assert_eq!(asy.h_value(&s, &s, &s).unwrap(), lp(&[(-1, 1), (1, 1)]));
    assert_eq!(asy.gamma(&s, &s, &s, Convention::Normalized).unwrap(), 1);
    assert_eq!(asy.gamma(&s, &s, &s, Convention::Literal).unwrap(), -1);
    assert_eq!(asy.gamma(&e, &e, &e, Convention::Literal).unwrap(), 1);
    assert_eq!(asy.gamma(&s, &e, &s, Convention::Normalized).unwrap(), 0);
}

#[test]
fn gamma_table_lookup_and_dump() {
    let d = from_label("A1").unwrap();
    let asy = Asymptotic::finite(&d).unwrap();
    let g = asy.gamma_table(Convention::Literal).unwrap();
    let s = el(&d, "s0");
    assert_eq!(g.get(&s, &s, &s).unwrap(), -1);
    assert_eq!(g.get(&s, &s, &d.identity()).unwrap(), 0);
    assert_eq!(g.dump(), "g|e|e|e|1|literal\ng|s0|s0|s0|-1|literal\n");
    let b = from_label("A2").unwrap();
    assert!(matches!(
        g.get(&b.generator(1), &s, &s),
        Err(Error::MissingEntry(_))
    ));
}

#[test]
fn j_multiply_examples() {
    let d = from_label("A2").unwrap();
    let asy = Asymptotic::finite(&d).unwrap();
    let g = asy.gamma_table(Convention::Normalized).unwrap();
    let t = |s: &str| JElement::t(el(&d, s));
    assert_eq!(g.j_multiply(&t("s0"), &t("s0")).unwrap(), t("s0"));
    assert_eq!(g.j_multiply(&t("s0"), &t("s0.s1")).unwrap(), t("s0.s1"));
    assert_eq!(g.j_multiply(&t("s0.s1"), &t("s1.s0")).unwrap(), t("s0"));
    assert!(g.j_multiply(&t("s0"), &t("s1")).unwrap().is_zero());
    assert!(g.j_multiply(&t("e"), &t("s0")).unwrap().is_zero());
    let w0 = t("s0.s1.s0");
    assert_eq!(g.j_multiply(&w0, &w0).unwrap(), w0);
}

#[test]
fn gamma_is_integral_and_level_preserving() {
    for label in ["A2", "B2", "A3", "G2"] {
        let d = from_label(label).unwrap();
        let asy = Asymptotic::finite(&d).unwrap();
        for w in asy.elements() {
            for u in asy.elements() {
                for (z, p) in asy.h(w, u).unwrap() {
                    let a = asy.a(z).unwrap() as i32;
                    assert!(p.degree().unwrap() <= a, "{label} h({w},{u},{z}) = {p}");
                    assert!(p.valuation().unwrap() >= -a);
                }
            }
        }
        let g = asy.gamma_table(Convention::Normalized).unwrap();
        assert!(asy.gamma_level_violations(&g).unwrap().is_empty(), "{label}");
    }
}

#[test]
fn gamma_cyclic_symmetry_and_involution_rule() {
    for label in ["A2", "B2", "A3"] {
        let d = from_label(label).unwrap();
        let mut asy = Asymptotic::finite(&d).unwrap();
        let g = asy.gamma_table(Convention::Normalized).unwrap();
        for ((x, y, z), v) in &g.entries {
            let rot = g.get(y, &d.inverse(z), &d.inverse(x)).unwrap();
            assert_eq!(*v, rot, "{label} γ({x},{y},{z})");
        }
        for dd in asy.distinguished_involutions().unwrap() {
            for (x, y, z) in g.entries.keys() {
                if *z == dd {
                    assert_eq!(*x, d.inverse(y));
                }
            }
        }
    }
}

#[test]
fn j_is_associative() {
    for label in ["A2", "B2"] {
        let d = from_label(label).unwrap();
        let asy = Asymptotic::finite(&d).unwrap();
        for conv in [Convention::Normalized, Convention::Literal] {
            let g = asy.gamma_table(conv).unwrap();
            for x in asy.elements() {
                for y in asy.elements() {
                    let xy = g.j_multiply(&JElement::t(x.clone()), &JElement::t(y.clone())).unwrap();
                    for z in asy.elements() {
                        let tz = JElement::t(z.clone());
                        let l = g.j_multiply(&xy, &tz).unwrap();
                        let yz = g.j_multiply(&JElement::t(y.clone()), &tz).unwrap();
                        let r = g.j_multiply(&JElement::t(x.clone()), &yz).unwrap();
                        assert_eq!(l, r, "{label} {conv} ({x},{y},{z})");
                    }
                }
            }
        }
    }
}

#[test]
fn unit_signs_per_convention() {
    let d = from_label("B2").unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    let g = asy.gamma_table(Convention::Normalized).unwrap();
    let signs = asy.unit_signs(&g).unwrap().unwrap();
    assert!(signs.iter().all(|(_, e)| *e == 1));
    let g = asy.gamma_table(Convention::Literal).unwrap();
    let signs = asy.unit_signs(&g).unwrap().unwrap();
    for (dd, e) in signs {
        let a = asy.a(&dd).unwrap();
        assert_eq!(e, if a % 2 == 1 { -1 } else { 1 }, "{dd}");
    }
}

#[test]
fn filtration_levels() {
    let d = from_label("A2").unwrap();
    let asy = Asymptotic::finite(&d).unwrap();
    let g = asy.gamma_table(Convention::Normalized).unwrap();
    let (basis, levels) = asy.j_filtration(1, &g).unwrap();
    assert_eq!(basis.len(), 5);
    assert_eq!(levels.keys().copied().collect::<Vec<_>>(), vec![0, 1, 3]);
    assert_eq!(levels[&1].len(), 4);
    let (top, _) = asy.j_filtration(2, &g).unwrap();
    assert_eq!(top, vec![d.longest_element().unwrap()]);
}

#[test]
fn phi_a1_examples() {
    let d = from_label("A1").unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    let e = d.identity();
    let s = el(&d, "s0");
    let mut expect = JElement::t(e.clone());
    expect.add_term(s.clone(), &LaurentPoly::one());
    assert_eq!(asy.phi(&e).unwrap(), expect);
    let mut expect = JElement::default();
    expect.add_term(s.clone(), &lp(&[(-1, 1), (1, 1)]));
    assert_eq!(asy.phi(&s).unwrap(), expect);
    assert_eq!(expect.to_string(), "(1*r^-1+1*r^1)t[s0]");
}

#[test]
fn phi_is_multiplicative_normalized() {
    for label in ["A1", "A2", "B2"] {
        let d = from_label(label).unwrap();
        let mut asy = Asymptotic::finite(&d).unwrap();
        let bad = asy.phi_multiplicativity_failures(Convention::Normalized).unwrap();
        assert!(bad.is_empty(), "{label}: {bad:?}");
    }
}

#[test]
fn phi_fails_with_literal_signs_in_a1() {
    let d = from_label("A1").unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    let bad = asy.phi_multiplicativity_failures(Convention::Literal).unwrap();
    let s = el(&d, "s0");
    assert!(bad.contains(&(s.clone(), s)));
}

#[test]
fn phi_of_c_basis_combination() {
    let d = from_label("A1").unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    // T_s = r C_s - C_e maps to r^2 t_s - t_e
    let h = BTreeMap::from([
        (d.identity(), LaurentPoly::constant(-1)),
        (el(&d, "s0"), LaurentPoly::r_pow(1)),
    ]);
    let mut expect = JElement::t(d.identity()).scale(&LaurentPoly::constant(-1));
    expect.add_term(el(&d, "s0"), &LaurentPoly::r_pow(2));
    assert_eq!(asy.phi_of(&h).unwrap(), expect);
}

#[test]
fn affine_a1_ball_is_stable() {
    let d = from_label("affine-A1").unwrap();
    let asy = Asymptotic::ball(&d, 6, 2).unwrap();
    assert_eq!(asy.elements().len(), 13);
    for w in asy.elements() {
        let v = asy.a_value(w).unwrap();
        assert_eq!(v.value, if w.is_identity() { 0 } else { 1 }, "{w}");
        assert_eq!(v.certificate, Certificate::Stable { radius: 6, step: 2 });
    }
    assert!(asy.dump_a().starts_with("a|e|0|stable(R=6,step=2)\n"));
    let far = el(&d, "s0.s1.s0.s1.s0.s1.s0.s1");
    assert!(matches!(asy.a(&far), Err(Error::Inconclusive(_))));
}

#[test]
fn phi_q_at_one_is_invertible() {
    let d = from_label("A2").unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    let k = NumberField::rationals();
    let m = asy.phi_q_matrix(&k, &k.one()).unwrap();
    assert!(crate::linalg::inverse(&k, &m).is_some());
}

#[test]
fn phi_q_a1_t_basis_depends_only_on_q() {
    let d = from_label("A1").unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    let k = NumberField::new(RatPoly::from_ints(&[-2, 0, 1])).unwrap();
    let r = k.generator();
    let m = asy.phi_q_matrix_t_basis(&k, &r).unwrap();
    // columns T_e, T_s; rows t_e, t_s
    assert_eq!(m.get(0, 0), &k.one());
    assert_eq!(m.get(1, 0), &k.one());
    assert_eq!(m.get(0, 1), &k.from_int(-1));
    assert_eq!(m.get(1, 1), &k.from_rational(rat(2, 1)));
    let m2 = asy.phi_q_matrix_t_basis(&k, &k.neg(&r)).unwrap();
    assert_eq!(m, m2);
}

#[test]
fn phi_q_root_sign_acts_by_row_signs() {
    let k = NumberField::cyclotomic(4);
    let r = k.generator();
    for label in ["A2", "B2"] {
        let d = from_label(label).unwrap();
        let mut asy = Asymptotic::finite(&d).unwrap();
        let m1 = asy.phi_q_matrix_t_basis(&k, &r).unwrap();
        let m2 = asy.phi_q_matrix_t_basis(&k, &k.neg(&r)).unwrap();
        let c1 = asy.phi_q_matrix(&k, &r).unwrap();
        let c2 = asy.phi_q_matrix(&k, &k.neg(&r)).unwrap();
        let n = asy.elements().len();
        for i in 0..n {
            let z = &asy.elements()[i];
            let row_odd = (z.length() + asy.a(z).unwrap() as usize) % 2 == 1;
            for j in 0..n {
                let flip = |m: &Matrix, odd: bool| {
                    if odd {
                        k.neg(m.get(i, j))
                    } else {
                        m.get(i, j).clone()
                    }
                };
                assert_eq!(m2.get(i, j), &flip(&m1, row_odd), "{label} T ({i},{j})");
                let col_odd = asy.elements()[j].length() % 2 == 1;
                assert_eq!(c2.get(i, j), &flip(&c1, row_odd != col_odd), "{label} C ({i},{j})");
            }
        }
    }
}

#[test]
fn convention_text_roundtrip() {
    for c in [Convention::Normalized, Convention::Literal] {
        assert_eq!(c.to_string().parse::<Convention>().unwrap(), c);
    }
    assert!("lusztig".parse::<Convention>().is_err());
}
