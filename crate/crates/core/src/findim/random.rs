//! Seeded random instances over `Q` for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraMorphism, FinDimAlgebra};
use crate::field::NumberField;
use crate::linalg::{self, Matrix, Subspace, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const POSETS: &[&[(usize, usize)]] = &[
    &[(0, 0), (0, 1), (1, 1)],
    &[(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)],
    &[(0, 0), (0, 2), (1, 1), (1, 2), (2, 2)],
    &[(0, 0), (0, 1), (1, 1), (2, 2)],
    &[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)],
];

/// Block sizes with `Σ n² ≤ max_dim`, at least one block.
pub fn random_sizes(r: &mut ChaCha8Rng, max_dim: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut used = 0;
    loop {
        let room = max_dim - used;
        let choices: Vec<usize> = (1..=2).filter(|n| n * n <= room).collect();
        if choices.is_empty() || (!sizes.is_empty() && r.gen_bool(0.4)) {
            break;
        }
        let n = *choices.choose(r).unwrap();
        used += n * n;
        sizes.push(n);
    }
    sizes.sort_unstable();
    sizes
}

/// Invertible integer matrix: unit lower times unit upper triangular,
/// columns permuted.
pub fn random_basis_change(k: &NumberField, r: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut lo = Matrix::identity(k, n);
    let mut up = Matrix::identity(k, n);
    for i in 0..n {
        for j in 0..i {
            lo.set(i, j, k.from_int(r.gen_range(-1..=1)));
            up.set(j, i, k.from_int(r.gen_range(-1..=1)));
        }
    }
    let m = lo.mul(k, &up);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let cols: Vec<Vector> = perm.iter().map(|&j| m.col(j)).collect();
    Matrix::from_cols(k, &cols, n)
}

fn base_algebra(k: &NumberField, r: &mut ChaCha8Rng, max_dim: usize) -> FinDimAlgebra {
    match r.gen_range(0..4) {
        0 => FinDimAlgebra::split_semisimple(k, &random_sizes(r, max_dim)),
        1 => {
            let fits: Vec<&&[(usize, usize)]> = POSETS.iter().filter(|p| p.len() <= max_dim).collect();
            match fits.choose(r) {
                Some(p) => FinDimAlgebra::incidence(k, p).unwrap(),
                None => FinDimAlgebra::truncated_polynomials(k, max_dim.max(1)),
            }
        }
        2 => FinDimAlgebra::truncated_polynomials(k, r.gen_range(1..=max_dim.clamp(1, 4))),
        _ => {
            if max_dim < 2 {
                return FinDimAlgebra::split_semisimple(k, &[1]);
            }
            let left = r.gen_range(1..max_dim);
            let a = base_algebra(k, r, left);
            let b = base_algebra(k, r, max_dim - a.dim());
            if b.dim() == 0 {
                a
            } else {
                a.direct_sum(&b).unwrap()
            }
        }
    }
}

/// A random algebra over `Q` of dimension at most `max_dim`, in a random
/// basis.
pub fn random_algebra(r: &mut ChaCha8Rng, max_dim: usize) -> FinDimAlgebra {
    let k = NumberField::rationals();
    let a = base_algebra(&k, r, max_dim.max(1));
    let p = random_basis_change(&k, r, a.dim());
    a.change_basis(&p).unwrap().with_label("random")
}

/// The ideal generated by a random element, or the radical, or zero.
pub fn random_ideal(a: &FinDimAlgebra, r: &mut ChaCha8Rng) -> Subspace {
    let k = a.field();
    match r.gen_range(0..4) {
        0 => Subspace::zero(a.dim()),
        1 => super::jacobson_radical(a).unwrap(),
        _ => {
            let mut v = a.zero();
            for i in 0..a.dim() {
                if r.gen_bool(0.4) {
                    v[i] = k.from_int(r.gen_range(-2..=2));
                }
            }
            a.ideal_generated(vec![v])
        }
    }
}

/// `M_{n_1} ⊕ ... → M_{m_1} ⊕ ...` with multiplicity `mult[i][j]` of
/// source block `j` in target block `i`, placed block-diagonally from the
/// top-left corner.
pub fn bratteli_embedding(k: &NumberField, source: &[usize], target: &[usize], mult: &[Vec<usize>]) -> AlgebraMorphism {
    let a = FinDimAlgebra::split_semisimple(k, source);
    let b = FinDimAlgebra::split_semisimple(k, target);
    let src_off: Vec<usize> = source.iter().scan(0, |s, n| { let o = *s; *s += n * n; Some(o) }).collect();
    let dst_off: Vec<usize> = target.iter().scan(0, |s, n| { let o = *s; *s += n * n; Some(o) }).collect();
    let mut m = Matrix::zeros(k, b.dim(), a.dim());
    for (i, &mi) in target.iter().enumerate() {
        let mut corner = 0;
        for (j, &nj) in source.iter().enumerate() {
            for _ in 0..mult[i][j] {
                for x in 0..nj {
                    for y in 0..nj {
                        let col = src_off[j] + x * nj + y;
                        let row = dst_off[i] + (corner + x) * mi + corner + y;
                        m.set(row, col, k.one());
                    }
                }
                corner += nj;
            }
        }
        assert!(corner <= mi, "multiplicities overflow target block {i}");
    }
    AlgebraMorphism::new(a, b, m).unwrap()
}

/// Random target sizes and multiplicities for a given source; spectrum
/// preserving when `sp` is set.
pub fn random_bratteli(r: &mut ChaCha8Rng, source: &[usize], max_dim: usize, sp: bool) -> (Vec<usize>, Vec<Vec<usize>>) {
    loop {
        let (target, mult) = if sp {
            let mut order: Vec<usize> = (0..source.len()).collect();
            order.shuffle(r);
            let mut target = Vec::new();
            let mut mult = Vec::new();
            for &j in &order {
                let c = r.gen_range(1..=2);
                let size = c * source[j] + usize::from(r.gen_bool(0.3));
                let mut row = vec![0; source.len()];
                row[j] = c;
                target.push(size);
                mult.push(row);
            }
            (target, mult)
        } else {
            let blocks = r.gen_range(1..=3);
            let mut target = Vec::new();
            let mut mult = Vec::new();
            for _ in 0..blocks {
                let row: Vec<usize> = source.iter().map(|_| r.gen_range(0..=1)).collect();
                let used: usize = row.iter().zip(source).map(|(c, n)| c * n).sum();
                target.push(used.max(1) + usize::from(r.gen_bool(0.2)));
                mult.push(row);
            }
            (target, mult)
        };
        let dim: usize = target.iter().map(|n| n * n).sum();
        if dim <= max_dim {
            return (target, mult);
        }
    }
}

/// A random morphism out of `a`: a change of basis, a quotient map, or (for
/// split semisimple `a` in matrix units) a block embedding.
pub fn random_morphism_from(a: &FinDimAlgebra, r: &mut ChaCha8Rng, semisimple_sizes: Option<&[usize]>, max_dim: usize) -> AlgebraMorphism {
    let k = a.field().clone();
    let pick = if semisimple_sizes.is_some() { r.gen_range(0..4) } else { r.gen_range(0..2) };
    match pick {
        0 => {
            let p = random_basis_change(&k, r, a.dim());
            let inv = linalg::inverse(&k, &p).unwrap();
            let b = a.change_basis(&p).unwrap().with_label("rebased");
            AlgebraMorphism::new(a.clone(), b, inv).unwrap()
        }
        1 => {
            let i = random_ideal(a, r);
            let (b, proj) = a.quotient(&i).unwrap();
            AlgebraMorphism::new(a.clone(), b, proj).unwrap()
        }
        _ => {
            let sizes = semisimple_sizes.unwrap();
            let (target, mult) = random_bratteli(r, sizes, max_dim, pick == 2);
            let e = bratteli_embedding(&k, sizes, &target, &mult);
            AlgebraMorphism::new(a.clone(), e.target().clone(), e.matrix().clone()).unwrap()
        }
    }
}

/// Composable `φ : L → J`, `ψ : J → K` with random ideals of `J` and `L`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub phi: AlgebraMorphism,
    pub psi: AlgebraMorphism,
    pub target_ideals: Vec<Subspace>,
    pub source_ideals: Vec<Subspace>,
}

pub fn random_instance(r: &mut ChaCha8Rng, max_dim: usize) -> Instance {
    let k = NumberField::rationals();
    let (l, sizes) = if r.gen_bool(0.5) {
        let sizes = random_sizes(r, max_dim.min(4));
        (FinDimAlgebra::split_semisimple(&k, &sizes), Some(sizes))
    } else {
        (random_algebra(r, max_dim), None)
    };
    let phi = random_morphism_from(&l, r, sizes.as_deref(), max_dim);
    let j = phi.target().clone();
    let psi = random_morphism_from(&j, r, None, max_dim);
    let target_ideals = (0..2).map(|_| random_ideal(&j, r)).collect();
    let source_ideals = (0..2).map(|_| random_ideal(&l, r)).collect();
    Instance {
        phi,
        psi,
        target_ideals,
        source_ideals,
    }
}
