use proptest::prelude::*;

use super::random::{self, bratteli_embedding, random_instance};
use super::*;
use crate::asymptotic::{Asymptotic, Convention};
use crate::coxeter::from_label;
use crate::field::NumberField;
use crate::linalg::{Matrix, Subspace};

fn q() -> NumberField {
    NumberField::rationals()
}

fn blocks(a: &FinDimAlgebra) -> Vec<usize> {
    wedderburn_blocks(a, DEFAULT_SEED).unwrap().blocks
}

fn check_dims(a: &FinDimAlgebra) {
    let s = wedderburn_blocks(a, DEFAULT_SEED).unwrap();
    let sq: usize = s.blocks.iter().map(|n| n * n).sum();
    assert_eq!(sq + s.radical_dim(), a.dim(), "{}", a.label());
    assert!(a.nilpotency_index(&s.radical).unwrap() <= a.dim().max(1));
}

#[test]
fn radicals_of_small_algebras() {
    let k = q();
    assert_eq!(jacobson_radical(&FinDimAlgebra::matrix_algebra(&k, 2)).unwrap().dim(), 0);
    let upper = FinDimAlgebra::incidence(&k, &[(0, 0), (0, 1), (1, 1)]).unwrap();
    let rad = jacobson_radical(&upper).unwrap();
    assert_eq!(rad.dim(), 1);
    assert!(rad.contains(&k, &upper.basis(1)));
    assert_eq!(blocks(&upper), vec![1, 1]);
    let dual = FinDimAlgebra::truncated_polynomials(&k, 2);
    assert_eq!(jacobson_radical(&dual).unwrap().dim(), 1);
    assert_eq!(blocks(&dual), vec![1]);
}

#[test]
fn non_unital_radical_uses_unit_adjunction() {
    let k = q();
    // the augmentation ideal x k[x]/x^3 is nilpotent and has no unit
    let a = FinDimAlgebra::from_entries("n", k.clone(), 2, &[(0, 0, 1, k.one())]).unwrap();
    assert!(!a.is_unital());
    assert_eq!(jacobson_radical(&a).unwrap().dim(), 2);
    assert!(blocks(&a).is_empty());
}

#[test]
fn semisimple_block_sizes() {
    let k = q();
    for sizes in [vec![1], vec![1, 1, 1], vec![1, 2], vec![2, 2]] {
        assert_eq!(blocks(&FinDimAlgebra::split_semisimple(&k, &sizes)), sizes);
    }
    let mut r = random::rng(3);
    let p = random::random_basis_change(&k, &mut r, 5);
    let a = FinDimAlgebra::split_semisimple(&k, &[1, 2]).change_basis(&p).unwrap();
    assert_eq!(blocks(&a), vec![1, 2]);
}

#[test]
fn non_split_block_is_reported() {
    // Q(i) as a 2-dimensional Q-algebra
    let k = q();
    let m1 = k.from_int(-1);
    let a = FinDimAlgebra::from_entries(
        "Q(i)",
        k.clone(),
        2,
        &[(0, 0, 0, k.one()), (0, 1, 1, k.one()), (1, 0, 1, k.one()), (1, 1, 0, m1)],
    )
    .unwrap();
    assert!(matches!(wedderburn_blocks(&a, DEFAULT_SEED), Err(Error::NonSplit(_))));
    // the quaternions are a non-split central simple algebra
    let mut e = Vec::new();
    let sign = |x: i64| k.from_int(x);
    let mul = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    for (i, row) in mul.iter().enumerate() {
        for (j, &(l, s)) in row.iter().enumerate() {
            e.push((i, j, l, sign(s)));
        }
    }
    let h = FinDimAlgebra::from_entries("H", k, 4, &e).unwrap();
    assert!(matches!(wedderburn_blocks(&h, DEFAULT_SEED), Err(Error::NonSplit(_))));
}

#[test]
fn non_associative_table_is_rejected() {
    let k = q();
    let r = FinDimAlgebra::from_entries("x", k.clone(), 2, &[(0, 0, 1, k.one()), (1, 0, 0, k.one())]);
    assert!(matches!(r, Err(Error::NotAssociative(..))));
}

#[test]
fn bratteli_examples() {
    let k = q();
    let diag = bratteli_embedding(&k, &[1], &[1, 1], &[vec![1], vec![1]]);
    assert_eq!(bratteli(&diag, DEFAULT_SEED).unwrap(), vec![vec![1], vec![1]]);
    assert!(!is_spectrum_preserving(&diag, DEFAULT_SEED).unwrap().holds);
    let scalar = bratteli_embedding(&k, &[1], &[2], &[vec![2]]);
    assert_eq!(bratteli(&scalar, DEFAULT_SEED).unwrap(), vec![vec![2]]);
    assert!(is_spectrum_preserving(&scalar, DEFAULT_SEED).unwrap().holds);
    let two = bratteli_embedding(&k, &[1, 1], &[2], &[vec![1, 1]]);
    assert!(!is_spectrum_preserving(&two, DEFAULT_SEED).unwrap().holds);
    let iso = AlgebraMorphism::identity(&FinDimAlgebra::split_semisimple(&k, &[1, 2]));
    assert!(is_generalized_permutation(&bratteli(&iso, DEFAULT_SEED).unwrap()));
}

#[test]
fn quotient_by_radical_preserves_spectrum() {
    let k = q();
    let a = FinDimAlgebra::incidence(&k, &[(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]).unwrap();
    let rad = jacobson_radical(&a).unwrap();
    let (s, proj) = a.quotient(&rad).unwrap();
    let phi = AlgebraMorphism::new(a, s, proj).unwrap();
    let v = is_spectrum_preserving(&phi, DEFAULT_SEED).unwrap();
    assert!(v.holds, "{}", v.reason);
    assert!(!v.unit_adjoined);
}

#[test]
fn corner_embedding_loses_spectrum_preservation_after_unit_adjunction() {
    let k = q();
    let phi = bratteli_embedding(&k, &[1], &[2], &[vec![1]]);
    assert!(!phi.is_unital());
    let v = is_spectrum_preserving(&phi, DEFAULT_SEED).unwrap();
    assert!(!v.unit_adjoined);
    assert!(v.holds);
    let plus = is_spectrum_preserving(&phi.adjoin_unit(), DEFAULT_SEED).unwrap();
    assert!(!plus.holds);
}

#[test]
fn trivial_filtration_reduces_to_plain_check() {
    let k = q();
    let phi = bratteli_embedding(&k, &[1, 2], &[2, 1], &[vec![0, 1], vec![1, 0]]);
    let w = is_weakly_spectrum_preserving(
        &phi,
        &Filtration::trivial(phi.source()),
        &Filtration::trivial(phi.target()),
        DEFAULT_SEED,
    )
    .unwrap();
    assert!(w.holds, "{}", w.render());
    assert_eq!(w.layers.len(), 1);
}

#[test]
fn malformed_filtration_is_an_error() {
    let k = q();
    let a = FinDimAlgebra::incidence(&k, &[(0, 0), (0, 1), (1, 1)]).unwrap();
    let not_ideal = Subspace::span(&k, 3, vec![a.basis(0)]);
    assert!(Filtration::new(&a, vec![Subspace::zero(3), not_ideal, a.whole()]).is_err());
}

#[test]
fn q_specs_parse_and_print() {
    for s in ["2", "-1", "3/2", "root-of-unity:3", "generic"] {
        assert_eq!(s.parse::<QSpec>().unwrap().to_string(), s);
    }
    assert!(matches!("0".parse::<QSpec>(), Err(Error::ZeroRoot)));
    assert!("root-of-unity:0".parse::<QSpec>().is_err());
    assert!(q_field(&QSpec::Generic).is_err());
}

#[test]
fn q_fields_contain_a_square_root() {
    for s in ["4", "2", "-1", "-2", "9/4", "root-of-unity:1", "root-of-unity:2", "root-of-unity:3", "root-of-unity:4", "root-of-unity:5"] {
        let spec: QSpec = s.parse().unwrap();
        let (k, r) = q_field(&spec).unwrap();
        let sq = k.mul(&r, &r);
        match &spec {
            QSpec::Rational(x) => assert_eq!(k.to_rational(&sq).as_ref(), Some(x), "{s}"),
            QSpec::RootOfUnity(n) => {
                let n = i64::from(*n);
                assert!(k.is_one(&k.pow(&sq, n).unwrap()), "{s}");
                for d in 1..n {
                    assert!(!k.is_one(&k.pow(&sq, d).unwrap()), "{s}");
                }
            }
            QSpec::Generic => unreachable!(),
        }
    }
}

fn hecke(label: &str, q: &str) -> HeckeFinDim {
    let d = from_label(label).unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    let (k, r) = q_field(&q.parse().unwrap()).unwrap();
    hecke_as_findim(&mut asy, &k, &r, Convention::Normalized).unwrap()
}

fn spec(label: &str, q: &str) -> WeakReport {
    let d = from_label(label).unwrap();
    let mut asy = Asymptotic::finite(&d).unwrap();
    spec_check(&mut asy, &q.parse().unwrap(), DEFAULT_SEED).unwrap()
}

#[test]
fn a1_generic_q_is_split_and_phi_invertible() {
    let hf = hecke("A1", "2");
    assert_eq!(blocks(&hf.hecke), vec![1, 1]);
    assert_eq!(blocks(&hf.j), vec![1, 1]);
    assert!(hf.phi.kernel().dim() == 0);
    let v = is_spectrum_preserving(&hf.phi, DEFAULT_SEED).unwrap();
    assert!(v.holds);
}

#[test]
fn a1_at_minus_one_is_local() {
    let hf = hecke("A1", "-1");
    let s = wedderburn_blocks(&hf.hecke, DEFAULT_SEED).unwrap();
    assert_eq!((s.blocks.clone(), s.radical_dim()), (vec![1], 1));
    assert_eq!(blocks(&hf.j), vec![1, 1]);
    let w = spec("A1", "-1");
    assert!(!w.holds);
    assert!(w.render().contains("prim 1 -> 2"), "{}", w.render());
}

#[test]
fn a2_spectrum_check_at_q_two() {
    let hf = hecke("A2", "2");
    assert_eq!(blocks(&hf.hecke), vec![1, 1, 2]);
    let w = spec("A2", "2");
    assert!(w.holds, "{}", w.render());
    assert_eq!(w.layers.len(), 3);
}

#[test]
fn a2_at_cube_root_of_unity_fails() {
    let w = spec("A2", "root-of-unity:3");
    assert!(!w.holds, "{}", w.render());
}

#[test]
fn a2_at_q_one_is_the_group_algebra() {
    let d = from_label("A2").unwrap();
    let k = q();
    let ht = hecke_t_basis(&d, &k, &k.one()).unwrap();
    let g = group_algebra(&d, &k).unwrap();
    assert_eq!(ht.entries(), g.entries());
    assert_eq!(blocks(&g), vec![1, 1, 2]);
    assert_eq!(blocks(&hecke("A2", "1").hecke), vec![1, 1, 2]);
}

#[test]
fn cell_filtration_levels() {
    let hf = hecke("A2", "3");
    let (fl, fj) = cell_filtrations(&hf).unwrap();
    let dims: Vec<usize> = fj.ideals.iter().map(|s| s.dim()).collect();
    assert_eq!(dims, vec![0, 1, 5, 6]);
    assert_eq!(fl.len(), fj.len());
}

#[test]
fn b2_blocks_at_q_two() {
    let hf = hecke("B2", "2");
    assert_eq!(blocks(&hf.hecke), vec![1, 1, 1, 1, 2]);
    check_dims(&hf.j);
}

#[test]
fn structural_suite_on_fixed_instances() {
    let k = q();
    let phi = bratteli_embedding(&k, &[1, 1], &[1, 2], &[vec![1, 0], vec![0, 2]]);
    let psi = AlgebraMorphism::identity(phi.target());
    let ideals = vec![Subspace::zero(5), phi.target().whole()];
    let src = vec![phi.source().whole(), Subspace::zero(2)];
    let rep = structural_suite(&phi, &psi, &ideals, &src, DEFAULT_SEED).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.failures());
    assert!(rep.checks.len() > 4);
}

#[test]
fn change_of_basis_matrix_morphism() {
    let k = q();
    let a = FinDimAlgebra::truncated_polynomials(&k, 3);
    let p = Matrix::from_rows(
        vec![
            vec![k.one(), k.zero(), k.zero()],
            vec![k.one(), k.one(), k.zero()],
            vec![k.zero(), k.one(), k.one()],
        ],
        3,
    );
    let phi = AlgebraMorphism::identity(&a).change_bases(&p, &p).unwrap();
    assert!(phi.is_unital());
    assert!(is_spectrum_preserving(&phi, DEFAULT_SEED).unwrap().holds);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn same_up_to_block_order(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let (r, c) = (b.len(), b.first().map_or(0, Vec::len));
    if a.len() != r || a.iter().any(|row| row.len() != c) {
        return false;
    }
    permutations(r).iter().any(|pr| {
        permutations(c)
            .iter()
            .any(|pc| (0..r).all(|i| (0..c).all(|j| a[pr[i]][pc[j]] == b[i][j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, .. ProptestConfig::default() })]

    #[test]
    fn block_dimensions_add_up(seed in any::<u64>()) {
        let a = random::random_algebra(&mut random::rng(seed), 6);
        check_dims(&a);
    }

    #[test]
    fn bratteli_agrees_with_spectrum_check(seed in any::<u64>(), sp in any::<bool>()) {
        let k = q();
        let mut r = random::rng(seed);
        let src = random::random_sizes(&mut r, 4);
        let (dst, mult) = random::random_bratteli(&mut r, &src, 6, sp);
        let phi = bratteli_embedding(&k, &src, &dst, &mult);
        let b = bratteli(&phi, DEFAULT_SEED).unwrap();
        prop_assert!(same_up_to_block_order(&b, &mult), "{:?} vs {:?}", b, mult);
        if phi.is_unital() {
            let v = is_spectrum_preserving(&phi, DEFAULT_SEED).unwrap();
            prop_assert_eq!(v.holds, is_generalized_permutation(&b));
            let plus = is_spectrum_preserving(&phi.adjoin_unit(), DEFAULT_SEED).unwrap();
            prop_assert_eq!(plus.holds, v.holds);
        }
    }

    #[test]
    fn structural_identities_hold(seed in any::<u64>()) {
        let inst = random_instance(&mut random::rng(seed), 6);
        let rep = structural_suite(&inst.phi, &inst.psi, &inst.target_ideals, &inst.source_ideals, DEFAULT_SEED).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn seed_does_not_change_blocks(seed in any::<u64>(), other in any::<u64>()) {
        let a = random::random_algebra(&mut random::rng(seed), 6);
        let x = wedderburn_blocks(&a, seed).unwrap();
        let y = wedderburn_blocks(&a, other).unwrap();
        prop_assert_eq!(x.blocks, y.blocks);
        prop_assert_eq!(x.primitive_ideals, y.primitive_ideals);
    }
}
