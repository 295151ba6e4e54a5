//! Finite-dimensional algebras given by structure constants over a number
//! field, their morphisms, radicals, Wedderburn blocks and primitive spectra.

mod hecke;
pub mod io;
pub mod random;
mod spectrum;
mod structure;

pub use hecke::{
    cell_filtrations, group_algebra, hecke_as_findim, hecke_t_basis, q_field, spec_check, HeckeFinDim,
    QSpec,
};
pub use spectrum::{
    bratteli, is_generalized_permutation, is_spectrum_preserving, is_weakly_spectrum_preserving,
    spectrum_relation, structural_suite, vanishing_set, Filtration, LayerReport, SpVerdict,
    StructuralReport, WeakReport,
};
pub use structure::{jacobson_radical, minimal_polynomial, wedderburn_blocks, SpectrumDescription};

use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::linalg::{self, Matrix, Subspace, Vector};

#[cfg(test)]
mod tests;

/// Seed for the pseudo-random central elements used in block splitting.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimAlgebra {
    label: String,
    field: NumberField,
    dim: usize,
    /// `table[i * dim + j]` is `e_i e_j`.
    table: Vec<Vector>,
    unit: Option<Vector>,
}

fn basis_vec(k: &NumberField, n: usize, i: usize) -> Vector {
    let mut v = vec![k.zero(); n];
    v[i] = k.one();
    v
}

impl FinDimAlgebra {
    /// Checks associativity and detects a two-sided unit.
    pub fn new(label: &str, field: NumberField, dim: usize, table: Vec<Vector>) -> Result<Self> {
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "structure table has the wrong shape for dimension {dim}"
            )));
        }
        let mut a = FinDimAlgebra {
            label: label.to_string(),
            field,
            dim,
            table,
            unit: None,
        };
        a.check_associative()?;
        a.unit = a.find_unit();
        Ok(a)
    }

    /// From nonzero constants `(i, j, k, c)` meaning `e_i e_j` has
    /// coefficient `c` on `e_k`.
    pub fn from_entries(
        label: &str,
        field: NumberField,
        dim: usize,
        entries: &[(usize, usize, usize, FieldElem)],
    ) -> Result<Self> {
        let mut table = vec![vec![field.zero(); dim]; dim * dim];
        for (i, j, l, c) in entries {
            if *i >= dim || *j >= dim || *l >= dim {
                return Err(Error::InvalidInput(format!("index out of range in ({i}, {j}, {l})")));
            }
            let slot = &mut table[i * dim + j][*l];
            *slot = field.add(slot, c);
        }
        Self::new(label, field, dim, table)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i * n + j];
                for l in 0..n {
                    let left = self.mul_vec_basis_right(ij, l);
                    let jl = &self.table[j * n + l];
                    let right = self.mul_basis_left_vec(i, jl);
                    if left.iter().zip(&right).any(|(a, b)| a != b) {
                        return Err(Error::NotAssociative(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_vec_basis_right(&self, a: &[FieldElem], j: usize) -> Vector {
        let k = &self.field;
        let mut out = vec![k.zero(); self.dim];
        for (i, c) in a.iter().enumerate() {
            if !k.is_zero(c) {
                linalg::axpy(k, &mut out, c, &self.table[i * self.dim + j]);
            }
        }
        out
    }

    fn mul_basis_left_vec(&self, i: usize, b: &[FieldElem]) -> Vector {
        let k = &self.field;
        let mut out = vec![k.zero(); self.dim];
        for (j, c) in b.iter().enumerate() {
            if !k.is_zero(c) {
                linalg::axpy(k, &mut out, c, &self.table[i * self.dim + j]);
            }
        }
        out
    }

    fn find_unit(&self) -> Option<Vector> {
        let k = &self.field;
        let n = self.dim;
        if n == 0 {
            return None;
        }
        // u e_j = e_j and e_j u = e_j for all j: 2 n^2 equations in u
        let mut m = Matrix::zeros(k, 2 * n * n, n);
        let mut rhs = vec![k.zero(); 2 * n * n];
        for j in 0..n {
            for l in 0..n {
                let row = j * n + l;
                for i in 0..n {
                    m.set(row, i, self.table[i * n + j][l].clone());
                    m.set(n * n + row, i, self.table[j * n + i][l].clone());
                }
                if j == l {
                    rhs[row] = k.one();
                    rhs[n * n + row] = k.one();
                }
            }
        }
        linalg::solve(k, &m, &rhs)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis(&self, i: usize) -> Vector {
        basis_vec(&self.field, self.dim, i)
    }

    /// Nonzero structure constants in lexicographic order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, FieldElem)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (l, c) in self.table[i * n + j].iter().enumerate() {
                    if !self.field.is_zero(c) {
                        out.push((i, j, l, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[FieldElem], b: &[FieldElem]) -> Vector {
        let k = &self.field;
        let n = self.dim;
        let mut out = vec![k.zero(); n];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                linalg::axpy(k, &mut out, &k.mul(x, y), &self.table[i * n + j]);
            }
        }
        out
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[FieldElem]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_cols(&self.field, &cols, self.dim)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[FieldElem]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_cols(&self.field, &cols, self.dim)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.table[i * n + j] == self.table[j * n + i]))
    }

    pub fn center(&self) -> Subspace {
        let k = &self.field;
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            for l in 0..n {
                let row: Vector = (0..n)
                    .map(|i| k.sub(&self.table[i * n + j][l], &self.table[j * n + i][l]))
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Subspace::zero(0);
        }
        Subspace::span(k, n, linalg::nullspace(k, &Matrix::from_rows(rows, n)))
    }

    /// `span{u v : u ∈ U, v ∈ V}`.
    pub fn product_span(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                vs.push(self.mul(a, b));
            }
        }
        Subspace::span(&self.field, self.dim, vs)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(&self.field, self.dim)
    }

    pub fn is_left_ideal(&self, u: &Subspace) -> bool {
        self.whole().basis().iter().all(|a| {
            u.basis()
                .iter()
                .all(|x| u.contains(&self.field, &self.mul(a, x)))
        })
    }

    pub fn is_two_sided_ideal(&self, u: &Subspace) -> bool {
        let k = &self.field;
        (0..self.dim).all(|i| {
            let e = self.basis(i);
            u.basis()
                .iter()
                .all(|x| u.contains(k, &self.mul(&e, x)) && u.contains(k, &self.mul(x, &e)))
        })
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> bool {
        let p = self.product_span(u, u);
        u.contains_subspace(&self.field, &p)
    }

    /// The two-sided ideal generated by the given vectors.
    pub fn ideal_generated(&self, vs: Vec<Vector>) -> Subspace {
        let k = &self.field;
        let mut cur = Subspace::span(k, self.dim, vs);
        loop {
            let mut more = cur.basis().to_vec();
            for x in cur.basis() {
                for i in 0..self.dim {
                    let e = self.basis(i);
                    more.push(self.mul(&e, x));
                    more.push(self.mul(x, &e));
                }
            }
            let next = Subspace::span(k, self.dim, more);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// `U^m`, the span of all products of `m` elements of `U`.
    pub fn power(&self, u: &Subspace, m: usize) -> Subspace {
        let mut p = u.clone();
        for _ in 1..m {
            p = self.product_span(&p, u);
        }
        p
    }

    /// Smallest `m ≥ 1` with `U^m = 0`, if any `m ≤ dim + 1` works.
    pub fn nilpotency_index(&self, u: &Subspace) -> Option<usize> {
        let mut p = u.clone();
        for m in 1..=self.dim + 1 {
            if p.dim() == 0 {
                return Some(m.max(1));
            }
            p = self.product_span(&p, u);
        }
        None
    }

    /// `A ⊕ B` with the basis of `A` first.
    pub fn direct_sum(&self, other: &FinDimAlgebra) -> Result<FinDimAlgebra> {
        if self.field != other.field {
            return Err(Error::InvalidInput("direct sum over different fields".into()));
        }
        let k = &self.field;
        let (n, m) = (self.dim, other.dim);
        let d = n + m;
        let mut table = vec![vec![k.zero(); d]; d * d];
        for i in 0..n {
            for j in 0..n {
                for (l, c) in self.table[i * n + j].iter().enumerate() {
                    table[i * d + j][l] = c.clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for (l, c) in other.table[i * m + j].iter().enumerate() {
                    table[(n + i) * d + n + j][n + l] = c.clone();
                }
            }
        }
        FinDimAlgebra::new(&format!("{}+{}", self.label, other.label), k.clone(), d, table)
    }

    /// `A⁺ = A ⊕ k` with the adjoined unit as the last basis vector.
    pub fn adjoin_unit(&self) -> FinDimAlgebra {
        let k = &self.field;
        let n = self.dim;
        let d = n + 1;
        let mut table = vec![vec![k.zero(); d]; d * d];
        for i in 0..n {
            for j in 0..n {
                for (l, c) in self.table[i * n + j].iter().enumerate() {
                    table[i * d + j][l] = c.clone();
                }
            }
            table[i * d + n][i] = k.one();
            table[n * d + i][i] = k.one();
        }
        table[n * d + n][n] = k.one();
        FinDimAlgebra::new(&format!("{}^+", self.label), k.clone(), d, table)
            .expect("unit adjunction preserves associativity")
    }

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<FinDimAlgebra> {
        let k = &self.field;
        let pinv = linalg::inverse(k, p)
            .ok_or_else(|| Error::InvalidInput("change of basis is singular".into()))?;
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| p.col(j)).collect();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(pinv.mul_vec(k, &self.mul(&cols[i], &cols[j])));
            }
        }
        FinDimAlgebra::new(&self.label, k.clone(), n, table)
    }

    /// Algebra structure on an ideal or subalgebra `K`, together with the
    /// inclusion matrix (columns are the basis of `K`).
    pub fn subalgebra(&self, u: &Subspace) -> Result<(FinDimAlgebra, Matrix)> {
        if !self.is_subalgebra(u) {
            return Err(Error::InvalidInput("subspace is not closed under multiplication".into()));
        }
        let k = &self.field;
        let m = u.dim();
        let mut table = Vec::with_capacity(m * m);
        for a in u.basis() {
            for b in u.basis() {
                table.push(u.coordinates(k, &self.mul(a, b)).unwrap());
            }
        }
        let alg = FinDimAlgebra::new(&format!("sub({})", self.label), k.clone(), m, table)?;
        Ok((alg, Matrix::from_cols(k, u.basis(), self.dim)))
    }

    /// `A / I` in the basis of standard vectors outside the pivots of `I`,
    /// with the projection matrix.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(FinDimAlgebra, Matrix)> {
        if !self.is_two_sided_ideal(ideal) {
            return Err(Error::NotAnIdeal(format!("quotient of {}", self.label)));
        }
        let k = &self.field;
        let keep = ideal.complement_indices();
        let m = keep.len();
        let project = |v: &[FieldElem]| -> Vector {
            let r = ideal.reduce(k, v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let mut table = Vec::with_capacity(m * m);
        for &a in &keep {
            for &b in &keep {
                table.push(project(&self.table[a * self.dim + b]));
            }
        }
        let mut pm = Matrix::zeros(k, m, self.dim);
        for i in 0..self.dim {
            for (r, c) in project(&self.basis(i)).into_iter().enumerate() {
                pm.set(r, i, c);
            }
        }
        let alg = FinDimAlgebra::new(&format!("{}/I", self.label), k.clone(), m, table)?;
        Ok((alg, pm))
    }

    /// `K / I` for ideals `I ⊆ K` of this algebra.
    pub fn subquotient(&self, big: &Subspace, small: &Subspace) -> Result<Subquotient> {
        let k = &self.field;
        if !big.contains_subspace(k, small) {
            return Err(Error::MalformedFiltration("layer is not increasing".into()));
        }
        let (sub, _) = self.subalgebra(big)?;
        let small_in = Subspace::span(
            k,
            big.dim(),
            small
                .basis()
                .iter()
                .map(|v| big.coordinates(k, v).unwrap())
                .collect(),
        );
        let (alg, proj) = sub.quotient(&small_in)?;
        Ok(Subquotient {
            algebra: alg,
            big: big.clone(),
            small_in,
            proj,
        })
    }

    /// `M_{n_1}(k) ⊕ ... ⊕ M_{n_r}(k)` in matrix units, block by block.
    pub fn split_semisimple(k: &NumberField, sizes: &[usize]) -> FinDimAlgebra {
        let mut blocks = sizes.iter().map(|&n| Self::matrix_algebra(k, n));
        let first = blocks.next().unwrap_or_else(|| {
            FinDimAlgebra::new("0", k.clone(), 0, Vec::new()).unwrap()
        });
        let mut out = first;
        for b in blocks {
            out = out.direct_sum(&b).unwrap();
        }
        let label: Vec<String> = sizes.iter().map(|n| format!("M{n}")).collect();
        out.with_label(&label.join("+"))
    }

    /// `M_n(k)` with matrix units `E_{ab}` at index `a n + b`.
    pub fn matrix_algebra(k: &NumberField, n: usize) -> FinDimAlgebra {
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    entries.push((a * n + b, b * n + c, a * n + c, k.one()));
                }
            }
        }
        Self::from_entries(&format!("M{n}"), k.clone(), n * n, &entries).unwrap()
    }

    /// `k[x]/(x^m)` in the basis `1, x, ..., x^{m-1}`.
    pub fn truncated_polynomials(k: &NumberField, m: usize) -> FinDimAlgebra {
        let mut entries = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    entries.push((i, j, i + j, k.one()));
                }
            }
        }
        Self::from_entries(&format!("k[x]/x^{m}"), k.clone(), m, &entries).unwrap()
    }

    /// Incidence algebra of a relation on `0..n` (reflexive, transitive,
    /// contained in `i ≤ j`), basis `E_{ij}` in the listed order.
    pub fn incidence(k: &NumberField, pairs: &[(usize, usize)]) -> Result<FinDimAlgebra> {
        let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b));
        let mut entries = Vec::new();
        for (x, &(a, b)) in pairs.iter().enumerate() {
            for (y, &(c, d)) in pairs.iter().enumerate() {
                if b == c {
                    let z = idx(a, d).ok_or_else(|| {
                        Error::InvalidInput(format!("relation is not transitive at ({a},{b},{d})"))
                    })?;
                    entries.push((x, y, z, k.one()));
                }
            }
        }
        Self::from_entries("incidence", k.clone(), pairs.len(), &entries)
    }
}

/// A layer `K / I` with the data needed to push vectors of the ambient
/// algebra into it.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub algebra: FinDimAlgebra,
    big: Subspace,
    small_in: Subspace,
    proj: Matrix,
}

impl Subquotient {
    /// Image of an ambient vector lying in `K`.
    pub fn project(&self, k: &NumberField, v: &[FieldElem]) -> Option<Vector> {
        let c = self.big.coordinates(k, v)?;
        Some(self.proj.mul_vec(k, &c))
    }

    /// Ambient representatives of the layer's basis.
    pub fn lifts(&self, k: &NumberField) -> Vec<Vector> {
        let keep = self.small_in.complement_indices();
        keep.iter()
            .map(|&c| {
                let mut v = vec![k.zero(); self.big.ambient()];
                linalg::axpy(k, &mut v, &k.one(), &self.big.basis()[c]);
                v
            })
            .collect()
    }
}

/// A linear map between algebras over the same field that respects
/// products; the matrix has `target.dim()` rows.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: FinDimAlgebra,
    target: FinDimAlgebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: FinDimAlgebra, target: FinDimAlgebra, matrix: Matrix) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::NotAMorphism("source and target fields differ".into()));
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::NotAMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        let f = AlgebraMorphism {
            source,
            target,
            matrix,
        };
        for i in 0..f.source.dim {
            for j in 0..f.source.dim {
                let lhs = f.apply(f.source.basis_product(i, j));
                let rhs = f.target.mul(&f.matrix.col(i), &f.matrix.col(j));
                if lhs != rhs {
                    return Err(Error::NotAMorphism(format!(
                        "product of basis elements {i} and {j} is not preserved"
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(a: &FinDimAlgebra) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(&a.field, a.dim),
        }
    }

    pub fn source(&self) -> &FinDimAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FinDimAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> &NumberField {
        &self.source.field
    }

    pub fn apply(&self, v: &[FieldElem]) -> Vector {
        self.matrix.mul_vec(&self.source.field, v)
    }

    /// Both algebras unital and `φ(1) = 1`.
    pub fn is_unital(&self) -> bool {
        match (&self.source.unit, &self.target.unit) {
            (Some(u), Some(v)) => &self.apply(u) == v,
            _ => false,
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if self.target != other.source {
            return Err(Error::NotAMorphism("morphisms are not composable".into()));
        }
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.source.field, &self.matrix),
        })
    }

    pub fn kernel(&self) -> Subspace {
        self.preimage(&Subspace::zero(self.target.dim))
    }

    pub fn preimage(&self, u: &Subspace) -> Subspace {
        u.preimage(&self.source.field, &self.matrix)
    }

    pub fn image(&self, u: &Subspace) -> Subspace {
        u.image(&self.source.field, &self.matrix)
    }

    /// `φ⁺ : A⁺ → B⁺`, sending the adjoined unit to the adjoined unit.
    pub fn adjoin_unit(&self) -> AlgebraMorphism {
        let k = &self.source.field;
        let (n, m) = (self.source.dim, self.target.dim);
        let mut mat = Matrix::zeros(k, m + 1, n + 1);
        for i in 0..m {
            for j in 0..n {
                mat.set(i, j, self.matrix.get(i, j).clone());
            }
        }
        mat.set(m, n, k.one());
        AlgebraMorphism {
            source: self.source.adjoin_unit(),
            target: self.target.adjoin_unit(),
            matrix: mat,
        }
    }

    /// The induced morphism `K / I → K' / I'` between layers, provided
    /// `φ(K) ⊆ K'` and `φ(I) ⊆ I'`.
    pub fn induced(&self, src: &Subquotient, dst: &Subquotient) -> Result<AlgebraMorphism> {
        let k = &self.source.field;
        let cols: Vec<Vector> = src
            .lifts(k)
            .iter()
            .map(|v| {
                dst.project(k, &self.apply(v))
                    .ok_or_else(|| Error::NotAMorphism("image leaves the target layer".into()))
            })
            .collect::<Result<_>>()?;
        let mat = Matrix::from_cols(k, &cols, dst.algebra.dim);
        AlgebraMorphism::new(src.algebra.clone(), dst.algebra.clone(), mat)
    }

    /// The morphism in new bases of source and target (columns of the
    /// change-of-basis matrices).
    pub fn change_bases(&self, p_src: &Matrix, p_dst: &Matrix) -> Result<AlgebraMorphism> {
        let k = &self.source.field;
        let inv = linalg::inverse(k, p_dst)
            .ok_or_else(|| Error::InvalidInput("change of basis is singular".into()))?;
        let mat = inv.mul(k, &self.matrix.mul(k, p_src));
        AlgebraMorphism::new(self.source.change_basis(p_src)?, self.target.change_basis(p_dst)?, mat)
    }
}
