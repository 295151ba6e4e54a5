use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::field::{int, rat};

fn a2() -> CoxeterDatum {
    from_label("A2").unwrap()
}

fn el(d: &CoxeterDatum, s: &str) -> GroupElement {
    d.parse(s).unwrap()
}

/// S3 acting on {0,1,2}; s0 = (0 1), s1 = (1 2).
fn perm_of(word: &[u8]) -> [usize; 3] {
    let mut p = [0, 1, 2];
    for &s in word {
        let (i, j) = if s == 0 { (0, 1) } else { (1, 2) };
        let q = p;
        for k in 0..3 {
            p[k] = if q[k] == i { j } else if q[k] == j { i } else { q[k] };
        }
    }
    p
}

/// Elements obtained from subwords of one fixed word.
fn subword_products(d: &CoxeterDatum, word: &[u8]) -> BTreeSet<GroupElement> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << word.len()) {
        let sub: Vec<usize> = (0..word.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| word[i] as usize)
            .collect();
        out.insert(d.from_word(&sub).unwrap());
    }
    out
}

#[test]
fn build_examples() {
    assert_eq!(a2().order().unwrap(), 6);
    let err = build_coxeter(vec![vec![1, 3], vec![2, 1]], None).unwrap_err();
    assert!(matches!(err, Error::InvalidCoxeterMatrix(_)));
    assert_eq!(
        build_coxeter(vec![vec![1, 5], vec![5, 1]], None).unwrap_err(),
        Error::UnsupportedLabel(5)
    );
    let a1t = from_label("affine-A1").unwrap();
    assert_eq!(a1t.kind(), Kind::Affine);
    assert!(a1t.elements().is_err());
    for r in [0, 1, 5, 12] {
        assert_eq!(a1t.ball(r).len(), 2 * r + 1);
    }
}

#[test]
fn group_orders() {
    for (label, order) in [
        ("A1", 2),
        ("A2", 6),
        ("B2", 8),
        ("A3", 24),
        ("G2", 12),
        ("B3", 48),
        ("A4", 120),
        ("I2(5)", 10),
        ("I2(7)", 14),
        ("I2(3)", 6),
    ] {
        assert_eq!(from_label(label).unwrap().order().unwrap(), order, "{label}");
    }
    let omega = OmegaSpec {
        perms: vec![vec![1, 0]],
        isometries: None,
    };
    let ext = build_coxeter(vec![vec![1, 3], vec![3, 1]], Some(omega)).unwrap();
    assert_eq!(ext.order().unwrap(), 12);
}

#[test]
fn reduce_examples() {
    let d = a2();
    let e = d.from_word(&[1, 1]).unwrap();
    assert!(e.is_identity());
    assert_eq!(d.from_word(&[1, 0, 1]).unwrap(), d.from_word(&[0, 1, 0]).unwrap());
    assert_eq!(d.from_word(&[1, 0, 1]).unwrap().key(), "s0.s1.s0");
    let a1t = from_label("affine-A1").unwrap();
    let x = a1t.from_word(&[0, 1, 0, 0]).unwrap();
    assert_eq!(x.key(), "s0.s1");
    assert_eq!(x.length(), 2);
    assert!(matches!(d.parse("s2"), Err(Error::UnknownLetter(_))));
    assert!(matches!(d.parse("x0"), Err(Error::UnknownLetter(_))));
    assert_eq!(d.parse("e").unwrap(), d.identity());
}

#[test]
fn s3_matches_permutations() {
    // every word of length ≤ 6 reduces to an element determined by its permutation
    let d = a2();
    let mut by_perm: std::collections::HashMap<[usize; 3], GroupElement> = Default::default();
    for len in 0..=6 {
        for code in 0..(1u32 << len) {
            let w: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
            let x = d.from_word(&w.iter().map(|&c| c as usize).collect::<Vec<_>>()).unwrap();
            assert_eq!(perm_of(&x.word), perm_of(&w));
            let prev = by_perm.entry(perm_of(&w)).or_insert_with(|| x.clone());
            assert_eq!(*prev, x);
        }
    }
    assert_eq!(by_perm.len(), 6);
}

#[test]
fn shortlex_is_minimal() {
    // canonical word is the lexicographically least among reduced words of
    // minimal length found by brute force
    for label in ["A2", "B2", "A3", "I2(5)"] {
        let d = from_label(label).unwrap();
        let n = d.rank();
        let all = d.elements().unwrap();
        let maxlen = all.iter().map(|x| x.length()).max().unwrap();
        let mut best: std::collections::HashMap<GroupElement, Vec<u8>> = Default::default();
        for len in 0..=maxlen {
            let total = (n as u64).pow(len as u32);
            for code in 0..total {
                let mut c = code;
                let w: Vec<u8> = (0..len)
                    .map(|_| {
                        let s = (c % n as u64) as u8;
                        c /= n as u64;
                        s
                    })
                    .collect();
                let x = d.from_word(&w.iter().map(|&s| s as usize).collect::<Vec<_>>()).unwrap();
                let entry = best.entry(x).or_insert_with(|| w.clone());
                if (w.len(), &w) < (entry.len(), &*entry) {
                    *entry = w;
                }
            }
        }
        for (x, w) in best {
            assert_eq!(x.word, w, "{label}");
        }
    }
}

#[test]
fn multiply_examples() {
    let d = a2();
    let x = el(&d, "s0.s1");
    assert!(d.multiply(&x, &d.inverse(&x)).is_identity());
    let p = d.multiply(&d.generator(0), &d.generator(1));
    assert_eq!(p.word(), &[0, 1]);
    assert_eq!(p.length(), 2);
    let a1t = from_label("affine-A1").unwrap();
    assert!(a1t.multiply(&a1t.generator(0), &a1t.generator(0)).is_identity());
    assert!(matches!(
        d.try_multiply(&d.identity(), &from_label("A3").unwrap().generator(2)),
        Err(Error::DatumMismatch(_))
    ));
}

#[test]
fn bruhat_examples() {
    let d = a2();
    let w0 = el(&d, "s0.s1.s0");
    for x in d.elements().unwrap() {
        assert!(bruhat_leq(&d, &d.identity(), &x));
    }
    assert!(!bruhat_leq(&d, &d.generator(0), &d.generator(1)));
    assert!(bruhat_leq(&d, &el(&d, "s0.s1"), &w0));
    assert_eq!(enumerate_interval(&d, &d.identity()).len(), 1);
    assert_eq!(enumerate_interval(&d, &w0).len(), 6);
    let a1t = from_label("affine-A1").unwrap();
    let iv = enumerate_interval(&a1t, &el(&a1t, "s0.s1"));
    let keys: Vec<String> = iv.iter().map(|x| x.key()).collect();
    assert_eq!(keys, vec!["e", "s0", "s1", "s0.s1"]);
}

#[test]
fn bruhat_matches_subword_oracle() {
    for label in ["A3", "B2", "I2(5)", "G2", "affine-A2"] {
        let d = from_label(label).unwrap();
        let elems = if d.is_finite() { d.elements().unwrap() } else { d.ball(4) };
        for w in &elems {
            let below = subword_products(&d, &w.word);
            assert_eq!(enumerate_interval(&d, w), below);
            for y in &elems {
                assert_eq!(bruhat_leq(&d, y, w), below.contains(y), "{label} {y} {w}");
            }
        }
    }
}

#[test]
fn interval_monotone() {
    let d = from_label("A3").unwrap();
    let elems = d.elements().unwrap();
    for w in &elems {
        for y in &elems {
            if bruhat_leq(&d, y, w) {
                assert!(enumerate_interval(&d, y).len() <= enumerate_interval(&d, w).len());
            }
        }
    }
}

#[test]
fn affine_examples() {
    let d = from_label("affine-A1").unwrap();
    let (a, fin) = d.affine_data(&d.identity()).unwrap();
    assert_eq!(a, Affine::identity(1));
    assert!(fin);
    let (a, fin) = d.affine_data(&d.generator(0)).unwrap();
    assert_eq!(a.lin, vec![vec![int(-1)]]);
    assert_eq!(a.trans, vec![int(0)]);
    assert!(fin);
    let (a, fin) = d.affine_data(&el(&d, "s0.s1")).unwrap();
    assert_eq!(a.lin, vec![vec![int(1)]]);
    assert_ne!(a.trans, vec![int(0)]);
    assert!(!fin);
    assert!(matches!(
        a2().affine_data(&a2().identity()),
        Err(Error::NoRealization(_))
    ));
    let ext = from_label("ext-affine-A1").unwrap();
    let (a, _) = ext.affine_data(&el(&ext, "s0.w1")).unwrap();
    // s0 ∘ ω : x -> -(1/2 - x)
    assert_eq!(a.trans, vec![rat(-1, 2)]);
    assert_eq!(ext.element_order(&el(&ext, "w1")), Some(2));
}

#[test]
fn omega_twisted_action() {
    let ext = from_label("ext-affine-A2").unwrap();
    assert_eq!(ext.omega_order(), 3);
    let w1 = ext.omega_element(1);
    // ω s ω^-1 is again a generator, and lengths ignore Ω
    for s in 0..3 {
        let c = ext.conjugate(&ext.generator(s), &w1);
        assert_eq!(c.length(), 1);
        assert_eq!(c.omega(), 0);
    }
    let x = el(&ext, "s0.s1.w1");
    assert_eq!(x.length(), 2);
    assert_eq!(x.key(), "s0.s1.w1");
    assert!(ext.multiply(&x, &ext.inverse(&x)).is_identity());
}

#[test]
fn omega_rejects_non_automorphism() {
    let m = vec![vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]];
    let bad = OmegaSpec {
        perms: vec![vec![1, 0, 2]],
        isometries: None,
    };
    assert!(matches!(build_coxeter(m, Some(bad)), Err(Error::InvalidOmega(_))));
}

fn arb_word(n: usize, len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..len)
}

proptest! {
    #[test]
    fn length_bounds(a in arb_word(3, 10), b in arb_word(3, 10)) {
        for label in ["affine-A2", "A3"] {
            let d = from_label(label).unwrap();
            let x = d.from_word(&a).unwrap();
            let y = d.from_word(&b).unwrap();
            let xy = d.multiply(&x, &y);
            prop_assert!(xy.length() <= x.length() + y.length());
            prop_assert_eq!(xy.length() % 2, (x.length() + y.length()) % 2);
        }
    }

    #[test]
    fn reduce_idempotent_and_associative(a in arb_word(3, 9), b in arb_word(3, 9), c in arb_word(3, 9)) {
        let d = from_label("ext-affine-A2").unwrap();
        let w1 = d.omega_element(1);
        let x = d.multiply(&d.from_word(&a).unwrap(), &w1);
        let y = d.from_word(&b).unwrap();
        let z = d.multiply(&w1, &d.from_word(&c).unwrap());
        prop_assert_eq!(d.from_word(&x.word.iter().map(|&s| s as usize).collect::<Vec<_>>()).unwrap().word, x.word.clone());
        prop_assert_eq!(d.multiply(&d.multiply(&x, &y), &z), d.multiply(&x, &d.multiply(&y, &z)));
    }

    #[test]
    fn braid_rewrites_agree(a in arb_word(2, 8), b in arb_word(2, 8)) {
        // inserting a braid relation anywhere leaves the canonical form unchanged
        let d = from_label("B2").unwrap();
        let mut with = a.clone();
        with.extend([0, 1, 0, 1]);
        with.extend(b.iter().copied());
        let mut other = a.clone();
        other.extend([1, 0, 1, 0]);
        other.extend(b.iter().copied());
        prop_assert_eq!(d.from_word(&with).unwrap(), d.from_word(&other).unwrap());
    }

    #[test]
    fn affine_data_is_homomorphism(a in arb_word(3, 8), b in arb_word(3, 8), wa in 0usize..3) {
        let d = from_label("ext-affine-A2").unwrap();
        let x = d.multiply(&d.from_word(&a).unwrap(), &d.omega_element(wa));
        let y = d.from_word(&b).unwrap();
        let lhs = d.affine_map(&d.multiply(&x, &y)).unwrap();
        let rhs = d.affine_map(&x).unwrap().compose(&d.affine_map(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dihedral_engine_matches_cartan(a in arb_word(2, 14)) {
        for m in [3u32, 4, 6] {
            let dih = CoxeterDatum::dihedral(m).unwrap();
            let cart = build_coxeter(vec![vec![1, m], vec![m, 1]], None).unwrap();
            prop_assert_eq!(dih.from_word(&a).unwrap(), cart.from_word(&a).unwrap());
        }
    }
}
