//! Hochschild homology from the bar complex and cyclic homology from the
//! normalized `(b, B)` bicomplex.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::findim::FinDimAlgebra;
use crate::linalg::{self, Matrix, Subspace};

/// Default limit on `rows × columns` of a single differential.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    HH,
    HC,
    HP,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::HH => "HH",
            Kind::HC => "HC",
            Kind::HP => "HP",
        };
        write!(f, "{s}")
    }
}

/// Dimensions indexed by degree; for `HP` exactly `(even, odd)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub kind: Kind,
    pub dims: Vec<usize>,
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == Kind::HP {
            return write!(f, "HP0={} HP1={}", self.dims[0], self.dims[1]);
        }
        let d: Vec<String> = self.dims.iter().map(|x| x.to_string()).collect();
        write!(f, "{}={}", self.kind, d.join(","))
    }
}

type SparseRow = Vec<(usize, FieldElem)>;

/// Nonzero structure constants `e_i e_j = Σ c e_l`, indexed `i * d + j`.
fn sparse_table(a: &FinDimAlgebra) -> Vec<SparseRow> {
    let k = a.field();
    let d = a.dim();
    (0..d * d)
        .map(|ij| {
            a.basis_product(ij / d, ij % d)
                .iter()
                .enumerate()
                .filter(|(_, c)| !k.is_zero(c))
                .map(|(l, c)| (l, c.clone()))
                .collect()
        })
        .collect()
}

fn check_budget(rows: u128, cols: u128, budget: u128) -> Result<()> {
    let required = rows.saturating_mul(cols);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

fn digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % base);
        idx /= base;
    }
    out
}

fn encode(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &x| acc * base + x)
}

/// Sparse rows of `b : A^{⊗(n+1)} → A^{⊗n}`.
fn hochschild_rows(a: &FinDimAlgebra, table: &[SparseRow], n: usize) -> Vec<SparseRow> {
    let k = a.field();
    let d = a.dim();
    let count = d.pow(n as u32 + 1);
    (0..count)
        .map(|idx| {
            let t = digits(idx, d, n + 1);
            let mut row = SparseRow::new();
            for i in 0..n {
                let sign = if i % 2 == 0 { k.one() } else { k.from_int(-1) };
                for (l, c) in &table[t[i] * d + t[i + 1]] {
                    let mut u: Vec<usize> = t[..i].to_vec();
                    u.push(*l);
                    u.extend_from_slice(&t[i + 2..]);
                    row.push((encode(&u, d), k.mul(&sign, c)));
                }
            }
            let sign = if n.is_multiple_of(2) { k.one() } else { k.from_int(-1) };
            for (l, c) in &table[t[n] * d + t[0]] {
                let mut u = vec![*l];
                u.extend_from_slice(&t[1..n]);
                row.push((encode(&u, d), k.mul(&sign, c)));
            }
            merge(k, row)
        })
        .collect()
}

fn merge(k: &NumberField, mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = k.add(&last.1, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !k.is_zero(&e.1));
    out
}

/// `dim HH_0, ..., dim HH_n` from the unnormalized bar complex.
pub fn hochschild_dims(a: &FinDimAlgebra, n: usize) -> Result<HomologySummary> {
    hochschild_dims_with_budget(a, n, DEFAULT_BUDGET)
}

pub fn hochschild_dims_with_budget(a: &FinDimAlgebra, n: usize, budget: u128) -> Result<HomologySummary> {
    let d = a.dim() as u128;
    check_budget(d.pow(n as u32 + 2), d.pow(n as u32 + 1), budget)?;
    let k = a.field();
    let table = sparse_table(a);
    let ranks: Vec<usize> = (0..=n + 1)
        .map(|m| if m == 0 { 0 } else { linalg::sparse_rank(k, hochschild_rows(a, &table, m)) })
        .collect();
    let dims = (0..=n)
        .map(|m| a.dim().pow(m as u32 + 1) - ranks[m] - ranks[m + 1])
        .collect();
    Ok(HomologySummary { kind: Kind::HH, dims })
}

/// `dim A − dim span{xy − yx}`.
pub fn commutator_quotient_dim(a: &FinDimAlgebra) -> usize {
    let k = a.field();
    let d = a.dim();
    let mut comms = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut v = a.basis_product(i, j).clone();
            linalg::axpy(k, &mut v, &k.from_int(-1), a.basis_product(j, i));
            comms.push(v);
        }
    }
    d - Subspace::span(k, d, comms).dim()
}

/// A unital algebra rewritten so that its unit is the first basis vector.
fn unit_first(a: &FinDimAlgebra) -> Result<FinDimAlgebra> {
    let k = a.field();
    let u = a
        .unit()
        .ok_or_else(|| Error::InvalidInput("cyclic homology needs a unital algebra".into()))?
        .clone();
    let p = u.iter().position(|c| !k.is_zero(c)).unwrap();
    let mut cols = vec![u];
    cols.extend((0..a.dim()).filter(|&i| i != p).map(|i| a.basis(i)));
    a.change_basis(&Matrix::from_cols(k, &cols, a.dim()))
}

/// The normalized complex `C_m = A ⊗ Ā^{⊗m}` with `Ā` spanned by basis
/// vectors `1..d` of an algebra whose unit is `e_0`.
struct Normalized<'a> {
    a: &'a FinDimAlgebra,
    table: Vec<SparseRow>,
    d: usize,
}

impl Normalized<'_> {
    fn dim(&self, m: usize) -> usize {
        self.d * (self.d - 1).pow(m as u32)
    }

    fn decode(&self, idx: usize, m: usize) -> Vec<usize> {
        let mut t = vec![idx % self.d];
        t.extend(digits(idx / self.d, self.d - 1, m).into_iter().map(|x| x + 1));
        t
    }

    /// `None` when a slot after the first holds the unit.
    fn encode(&self, t: &[usize]) -> Option<usize> {
        if t[1..].contains(&0) {
            return None;
        }
        let rest: Vec<usize> = t[1..].iter().map(|x| x - 1).collect();
        Some(t[0] + self.d * encode(&rest, self.d - 1))
    }

    fn b_row(&self, t: &[usize]) -> SparseRow {
        let k = self.a.field();
        let m = t.len() - 1;
        let d = self.d;
        let mut row = SparseRow::new();
        if m == 0 {
            return row;
        }
        for i in 0..m {
            let sign = if i % 2 == 0 { k.one() } else { k.from_int(-1) };
            for (l, c) in &self.table[t[i] * d + t[i + 1]] {
                let mut u: Vec<usize> = t[..i].to_vec();
                u.push(*l);
                u.extend_from_slice(&t[i + 2..]);
                if let Some(col) = self.encode(&u) {
                    row.push((col, k.mul(&sign, c)));
                }
            }
        }
        let sign = if m.is_multiple_of(2) { k.one() } else { k.from_int(-1) };
        for (l, c) in &self.table[t[m] * d + t[0]] {
            let mut u = vec![*l];
            u.extend_from_slice(&t[1..m]);
            if let Some(col) = self.encode(&u) {
                row.push((col, k.mul(&sign, c)));
            }
        }
        merge(k, row)
    }

    fn big_b_row(&self, t: &[usize]) -> SparseRow {
        let k = self.a.field();
        let m = t.len() - 1;
        let mut row = SparseRow::new();
        for i in 0..=m {
            let sign = if (m * i).is_multiple_of(2) { k.one() } else { k.from_int(-1) };
            let mut u = vec![0];
            u.extend_from_slice(&t[i..]);
            u.extend_from_slice(&t[..i]);
            if let Some(col) = self.encode(&u) {
                row.push((col, sign));
            }
        }
        merge(k, row)
    }

    fn tot_offsets(&self, n: usize) -> Vec<(usize, usize)> {
        // (m, offset) for m = n, n-2, ...
        let mut out = Vec::new();
        let mut off = 0;
        let mut m = n as isize;
        while m >= 0 {
            out.push((m as usize, off));
            off += self.dim(m as usize);
            m -= 2;
        }
        out
    }

    fn tot_dim(&self, n: usize) -> usize {
        self.tot_offsets(n).iter().map(|(m, _)| self.dim(*m)).sum()
    }

    /// Rows of `b + B : Tot_n → Tot_{n-1}`.
    fn tot_rows(&self, n: usize) -> Vec<SparseRow> {
        let src = self.tot_offsets(n);
        let dst = if n == 0 { Vec::new() } else { self.tot_offsets(n - 1) };
        let off_of = |m: usize| dst.iter().find(|(x, _)| *x == m).map(|(_, o)| *o);
        let mut rows = Vec::new();
        for (level, &(m, _)) in src.iter().enumerate() {
            for idx in 0..self.dim(m) {
                let t = self.decode(idx, m);
                let mut row = SparseRow::new();
                if m > 0 {
                    let o = off_of(m - 1).unwrap();
                    row.extend(self.b_row(&t).into_iter().map(|(c, v)| (c + o, v)));
                }
                if level > 0 {
                    let o = off_of(m + 1).unwrap();
                    row.extend(self.big_b_row(&t).into_iter().map(|(c, v)| (c + o, v)));
                }
                rows.push(merge(self.a.field(), row));
            }
        }
        rows
    }
}

/// `dim HC_0, ..., dim HC_n` of a unital algebra.
pub fn cyclic_dims(a: &FinDimAlgebra, n: usize) -> Result<HomologySummary> {
    cyclic_dims_with_budget(a, n, DEFAULT_BUDGET)
}

pub fn cyclic_dims_with_budget(a: &FinDimAlgebra, n: usize, budget: u128) -> Result<HomologySummary> {
    let b = unit_first(a)?;
    let cx = Normalized {
        a: &b,
        table: sparse_table(&b),
        d: b.dim(),
    };
    check_budget(cx.tot_dim(n + 1) as u128, cx.tot_dim(n) as u128, budget)?;
    let k = b.field();
    let ranks: Vec<usize> = (0..=n + 1)
        .map(|m| if m == 0 { 0 } else { linalg::sparse_rank(k, cx.tot_rows(m)) })
        .collect();
    let dims = (0..=n).map(|m| cx.tot_dim(m) - ranks[m] - ranks[m + 1]).collect();
    Ok(HomologySummary { kind: Kind::HC, dims })
}

/// Whether `(b + B)^2 = 0` on `Tot_n → Tot_{n-2}`, checked on every basis
/// vector.
pub fn cyclic_differential_squares_to_zero(a: &FinDimAlgebra, n: usize) -> Result<bool> {
    if n < 2 {
        return Ok(true);
    }
    let b = unit_first(a)?;
    let cx = Normalized {
        a: &b,
        table: sparse_table(&b),
        d: b.dim(),
    };
    let k = b.field();
    let upper = cx.tot_rows(n);
    let lower = cx.tot_rows(n - 1);
    for row in upper {
        let mut acc = vec![k.zero(); cx.tot_dim(n - 2)];
        for (c, v) in row {
            for (c2, v2) in &lower[c] {
                k.add_assign(&mut acc[*c2], &k.mul(&v, v2));
            }
        }
        if !linalg::is_zero_vec(k, &acc) {
            return Ok(false);
        }
    }
    Ok(true)
}
