//! Exact dense and sparse linear algebra over a [`NumberField`].

use crate::field::{FieldElem, NumberField};

pub type Vector = Vec<FieldElem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(k: &NumberField, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![k.zero(); rows * cols],
        }
    }

    pub fn identity(k: &NumberField, n: usize) -> Self {
        let mut m = Self::zeros(k, n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    /// Builds from row vectors; `cols` is needed for the empty case.
    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<FieldElem> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged rows");
        Matrix { rows: r, cols, data }
    }

    pub fn from_cols(k: &NumberField, cols: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(k, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, k: &NumberField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !k.is_zero(b) {
                        let idx = i * out.cols + j;
                        let p = k.mul(a, b);
                        k.add_assign(&mut out.data[idx], &p);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, k: &NumberField, v: &[FieldElem]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(k, self.row(i), v))
            .collect()
    }

    pub fn is_zero(&self, k: &NumberField) -> bool {
        self.data.iter().all(|x| k.is_zero(x))
    }

    pub fn trace(&self, k: &NumberField) -> FieldElem {
        (0..self.rows.min(self.cols)).fold(k.zero(), |acc, i| k.add(&acc, self.get(i, i)))
    }
}

pub fn dot(k: &NumberField, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    let mut acc = k.zero();
    for (x, y) in a.iter().zip(b) {
        if !k.is_zero(x) && !k.is_zero(y) {
            k.add_assign(&mut acc, &k.mul(x, y));
        }
    }
    acc
}

pub fn axpy(k: &NumberField, y: &mut [FieldElem], a: &FieldElem, x: &[FieldElem]) {
    if k.is_zero(a) {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !k.is_zero(xi) {
            k.add_assign(yi, &k.mul(a, xi));
        }
    }
}

pub fn is_zero_vec(k: &NumberField, v: &[FieldElem]) -> bool {
    v.iter().all(|x| k.is_zero(x))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(k: &NumberField, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = k.inv(m.get(r, c)).unwrap();
        for j in c..m.cols {
            let v = k.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row: Vector = m.row(r).to_vec();
        for i in 0..m.rows {
            if i != r {
                let f = m.get(i, c).clone();
                if !k.is_zero(&f) {
                    let nf = k.neg(&f);
                    let start = i * m.cols;
                    axpy(k, &mut m.data[start..start + m.cols], &nf, &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(k: &NumberField, m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(k, &mut m).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(k: &NumberField, m: &Matrix) -> Vec<Vector> {
    let mut r = m.clone();
    let pivots = rref(k, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); m.cols];
            v[f] = k.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(r.get(row, f));
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(k: &NumberField, m: &Matrix, b: &[FieldElem]) -> Option<Vector> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::zeros(k, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let pivots = rref(k, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![k.zero(); m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(row, m.cols).clone();
    }
    Some(x)
}

pub fn inverse(k: &NumberField, m: &Matrix) -> Option<Matrix> {
    let n = m.rows;
    if n != m.cols {
        return None;
    }
    let mut aug = Matrix::zeros(k, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, k.one());
    }
    let pivots = rref(k, &mut aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return None;
    }
    let mut inv = Matrix::zeros(k, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// A linear subspace of `K^n`, stored as a reduced row echelon basis so that
/// equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(k: &NumberField, ambient: usize) -> Self {
        Self::span(k, ambient, Matrix::identity(k, ambient).row_vecs())
    }

    pub fn span(k: &NumberField, ambient: usize, vectors: Vec<Vector>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let mut m = Matrix::from_rows(vectors, ambient);
        let pivots = rref(k, &mut m);
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot coordinates; zero iff
    /// `v` lies in the subspace. Two vectors are congruent modulo the
    /// subspace iff their remainders agree.
    pub fn reduce(&self, k: &NumberField, v: &[FieldElem]) -> Vector {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if !k.is_zero(&c) {
                axpy(k, &mut out, &k.neg(&c), b);
            }
        }
        out
    }

    pub fn contains(&self, k: &NumberField, v: &[FieldElem]) -> bool {
        is_zero_vec(k, &self.reduce(k, v))
    }

    pub fn contains_subspace(&self, k: &NumberField, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(k, v))
    }

    /// Coordinates of `v` in the stored basis.
    pub fn coordinates(&self, k: &NumberField, v: &[FieldElem]) -> Option<Vector> {
        if !self.contains(k, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, k: &NumberField, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(k, self.ambient, vs)
    }

    /// Rows `a` with `a . x = 0` exactly for `x` in the subspace.
    pub fn annihilator(&self, k: &NumberField) -> Vec<Vector> {
        if self.basis.is_empty() {
            return Matrix::identity(k, self.ambient).row_vecs();
        }
        nullspace(k, &Matrix::from_rows(self.basis.clone(), self.ambient))
    }

    pub fn intersection(&self, k: &NumberField, other: &Subspace) -> Subspace {
        let mut eqs = self.annihilator(k);
        eqs.extend(other.annihilator(k));
        if eqs.is_empty() {
            return Subspace::full(k, self.ambient);
        }
        let m = Matrix::from_rows(eqs, self.ambient);
        Self::span(k, self.ambient, nullspace(k, &m))
    }

    /// `{x : map x in self}` for a linear map given as a matrix with
    /// `self.ambient` rows.
    pub fn preimage(&self, k: &NumberField, map: &Matrix) -> Subspace {
        assert_eq!(map.rows(), self.ambient);
        let ann = self.annihilator(k);
        if ann.is_empty() {
            return Subspace::full(k, map.cols());
        }
        let eq = Matrix::from_rows(ann, self.ambient).mul(k, map);
        Self::span(k, map.cols(), nullspace(k, &eq))
    }

    /// Image under a linear map.
    pub fn image(&self, k: &NumberField, map: &Matrix) -> Subspace {
        let vs = self.basis.iter().map(|v| map.mul_vec(k, v)).collect();
        Self::span(k, map.rows(), vs)
    }

    /// Indices of standard basis vectors completing this subspace to the
    /// whole space (the non-pivot columns).
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

/// Rank of a sparse matrix given by rows of `(column, value)` pairs, using
/// incremental elimination on leading entries.
pub fn sparse_rank(k: &NumberField, rows: Vec<Vec<(usize, FieldElem)>>) -> usize {
    use std::collections::HashMap;
    let mut pivots: HashMap<usize, Vec<(usize, FieldElem)>> = HashMap::new();
    for mut row in rows {
        row.retain(|(_, v)| !k.is_zero(v));
        row.sort_by_key(|e| e.0);
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                None => {
                    // normalize so the pivot is 1; keeps later factors cheap
                    let inv = k.inv(&lv).unwrap();
                    for e in row.iter_mut() {
                        e.1 = k.mul(&e.1, &inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
                Some(p) => {
                    row = sparse_axpy(k, &row, &k.neg(&lv), p);
                }
            }
        }
    }
    pivots.len()
}

fn sparse_axpy(
    k: &NumberField,
    y: &[(usize, FieldElem)],
    a: &FieldElem,
    x: &[(usize, FieldElem)],
) -> Vec<(usize, FieldElem)> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, k.mul(a, &x[j].1)));
            j += 1;
        } else {
            let v = k.add(&y[i].1, &k.mul(a, &x[j].1));
            if !k.is_zero(&v) {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn m(k: &NumberField, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| k.from_int(x)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let k = q();
        let a = m(&k, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&k, &a), 2);
        let ns = nullspace(&k, &a);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&k, &a.mul_vec(&k, &ns[0])));
    }

    #[test]
    fn inverse_roundtrip() {
        let k = q();
        let a = m(&k, &[&[2, 1], &[7, 4]]);
        let ai = inverse(&k, &a).unwrap();
        assert_eq!(a.mul(&k, &ai), Matrix::identity(&k, 2));
        assert!(inverse(&k, &m(&k, &[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn subspace_intersection_and_preimage() {
        let k = q();
        let e = |v: &[i64]| v.iter().map(|&x| k.from_int(x)).collect::<Vector>();
        let u = Subspace::span(&k, 3, vec![e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let v = Subspace::span(&k, 3, vec![e(&[0, 1, 0]), e(&[0, 0, 1])]);
        let w = u.intersection(&k, &v);
        assert_eq!(w, Subspace::span(&k, 3, vec![e(&[0, 5, 0])]));
        assert_eq!(u.sum(&k, &v).dim(), 3);
        // projection onto first coordinate; preimage of 0 is span(e2, e3)
        let p = m(&k, &[&[1, 0, 0]]);
        let pre = Subspace::zero(1).preimage(&k, &p);
        assert_eq!(pre, v);
    }

    #[test]
    fn sparse_matches_dense() {
        let k = q();
        let a = m(&k, &[&[1, 2, 0, 3], &[0, 0, 1, 1], &[1, 2, 1, 4], &[2, 4, 0, 6]]);
        let rows = a
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().enumerate().collect())
            .collect();
        assert_eq!(sparse_rank(&k, rows), rank(&k, &a));
    }
}
