//! Exact affine isometries of a rational Euclidean space.

use num_traits::{One, Zero};

use crate::field::{int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub lin: Vec<Vec<Rational>>,
    pub trans: Vec<Rational>,
}

pub fn identity_matrix(d: usize) -> Vec<Vec<Rational>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

impl Affine {
    pub fn identity(d: usize) -> Self {
        Affine {
            lin: identity_matrix(d),
            trans: vec![int(0); d],
        }
    }

    pub fn translation(t: Vec<Rational>) -> Self {
        Affine {
            lin: identity_matrix(t.len()),
            trans: t,
        }
    }

    /// Builds from integer numerators over a common denominator.
    pub fn from_ints(lin: &[&[i64]], trans: &[i64], den: i64) -> Self {
        Affine {
            lin: lin
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
            trans: trans.iter().map(|&x| rat(x, den)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.trans.len()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Affine) -> Affine {
        Affine {
            lin: mat_mul(&self.lin, &other.lin),
            trans: vec_add(&mat_vec(&self.lin, &other.trans), &self.trans),
        }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        vec_add(&mat_vec(&self.lin, x), &self.trans)
    }

    /// Inverse, assuming the linear part is orthogonal with respect to the
    /// standard inner product (true for every realization built here).
    pub fn inverse(&self) -> Affine {
        let d = self.dim();
        let lt: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..d).map(|j| self.lin[j][i].clone()).collect())
            .collect();
        let t = mat_vec(&lt, &self.trans).into_iter().map(|x| -x).collect();
        Affine { lin: lt, trans: t }
    }

    pub fn is_translation(&self) -> bool {
        self.lin == identity_matrix(self.dim())
    }

    /// Multiplicative order of the linear part, if at most `bound`.
    pub fn linear_order(&self, bound: usize) -> Option<usize> {
        let id = identity_matrix(self.dim());
        let mut p = self.lin.clone();
        for k in 1..=bound {
            if p == id {
                return Some(k);
            }
            p = mat_mul(&p, &self.lin);
        }
        None
    }

    /// Finite order iff `sum_{k<m} A^k b = 0` for `m` the order of `A`.
    pub fn finite_order(&self) -> Option<usize> {
        let m = self.linear_order(120)?;
        let mut acc = vec![int(0); self.dim()];
        let mut v = self.trans.clone();
        for _ in 0..m {
            acc = vec_add(&acc, &v);
            v = mat_vec(&self.lin, &v);
        }
        is_zero_vec(&acc).then_some(m)
    }
}

pub fn is_identity_matrix(a: &[Vec<Rational>]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { Rational::one() } else { Rational::zero() }))
}

/// Data attached to an affine Weyl group: the generator maps on `E`, the
/// coroot lattice `Λ` of translations in `W`, and the translation lattice
/// `T` of the extended group (equal to `Λ` when `Ω` is trivial).
#[derive(Clone, Debug)]
pub struct AffineRealization {
    pub dim: usize,
    pub gens: Vec<Affine>,
    pub lattice: Vec<Vec<Rational>>,
    pub translations: Vec<Vec<Rational>>,
    /// Generators of the finite Weyl group `W0`.
    pub finite_gens: Vec<usize>,
}
