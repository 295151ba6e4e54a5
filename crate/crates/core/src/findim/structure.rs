use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::linalg::{self, Matrix, Subspace, Vector};

/// Primitive spectrum data of a finite-dimensional algebra.
#[derive(Clone, Debug)]
pub struct SpectrumDescription {
    /// Matrix sizes `k_i` with `A / Jac(A) ≅ ⊕ M_{k_i}`.
    pub blocks: Vec<usize>,
    pub radical: Subspace,
    /// Kernel of the projection onto each block, in the same order.
    pub primitive_ideals: Vec<Subspace>,
    /// `P ∩ Z(A)` for each primitive ideal `P`.
    pub central_characters: Vec<Subspace>,
    pub semisimple: FinDimAlgebra,
    /// `A → A / Jac(A)`.
    pub projection: Matrix,
    /// Central primitive idempotents of the semisimple quotient.
    pub idempotents: Vec<Vector>,
}

impl SpectrumDescription {
    pub fn radical_dim(&self) -> usize {
        self.radical.dim()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().copied().max().unwrap_or(0)
    }
}

/// Radical of the trace form `(x, y) ↦ tr(L_{xy})`, computed on `A⁺` when
/// `A` has no unit.
pub fn jacobson_radical(a: &FinDimAlgebra) -> Result<Subspace> {
    let adjoined = !a.is_unital();
    let b = if adjoined { a.adjoin_unit() } else { a.clone() };
    let k = b.field().clone();
    let n = b.dim();
    let traces: Vec<FieldElem> = (0..n)
        .map(|l| {
            (0..n).fold(k.zero(), |acc, m| k.add(&acc, &b.basis_product(l, m)[m]))
        })
        .collect();
    let mut gram = Matrix::zeros(&k, n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, linalg::dot(&k, b.basis_product(i, j), &traces));
        }
    }
    let mut null = linalg::nullspace(&k, &gram);
    if adjoined {
        for v in &mut null {
            let last = v.pop().unwrap();
            if !k.is_zero(&last) {
                return Err(Error::Inconsistent("radical of A+ leaves A".into()));
            }
        }
    }
    let rad = Subspace::span(&k, a.dim(), null);
    if !a.is_two_sided_ideal(&rad) {
        return Err(Error::Inconsistent("trace-form radical is not an ideal".into()));
    }
    if a.nilpotency_index(&rad).is_none() {
        return Err(Error::Inconsistent("trace-form radical is not nilpotent".into()));
    }
    Ok(rad)
}

fn eval_in(a: &FinDimAlgebra, poly: &[FieldElem], x: &[FieldElem], unit: &[FieldElem]) -> Vector {
    let k = a.field();
    let mut acc = a.zero();
    for c in poly.iter().rev() {
        acc = a.mul(&acc, x);
        linalg::axpy(k, &mut acc, c, unit);
    }
    acc
}

/// Monic minimal polynomial (ascending coefficients) of `x` in the unital
/// algebra `e A e` with unit `unit`.
pub fn minimal_polynomial(a: &FinDimAlgebra, x: &[FieldElem], unit: &[FieldElem]) -> Vec<FieldElem> {
    let k = a.field();
    let mut powers: Vec<Vector> = vec![unit.to_vec()];
    loop {
        let next = a.mul(powers.last().unwrap(), x);
        let m = Matrix::from_cols(k, &powers, a.dim());
        if let Some(c) = linalg::solve(k, &m, &next) {
            let mut p: Vec<FieldElem> = c.iter().map(|v| k.neg(v)).collect();
            p.push(k.one());
            return p;
        }
        powers.push(next);
    }
}

pub(crate) fn poly_text(k: &NumberField, p: &[FieldElem]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !k.is_zero(c))
        .map(|(i, c)| format!("({})*x^{i}", k.format(c)))
        .collect();
    terms.join(" + ")
}

fn deflate(k: &NumberField, p: &[FieldElem], root: &FieldElem) -> Vec<FieldElem> {
    // p / (x - root) by synthetic division
    let n = p.len() - 1;
    let mut q = vec![k.zero(); n];
    let mut carry = k.zero();
    for i in (0..n).rev() {
        carry = k.add(&p[i + 1], &k.mul(&carry, root));
        q[i] = carry.clone();
    }
    q
}

fn random_combo(k: &NumberField, basis: &[Vector], dim: usize, rng: &mut ChaCha8Rng, range: i64) -> Vector {
    let mut v = vec![k.zero(); dim];
    for b in basis {
        let c = rng.gen_range(-range..=range);
        if c != 0 {
            linalg::axpy(k, &mut v, &k.from_int(c), b);
        }
    }
    v
}

/// Searches for an idempotent `f` in the block with `dim(A f) = n`, which
/// certifies `A e ≅ M_n(k)`.
fn block_splits(s: &FinDimAlgebra, block: &Subspace, e: &[FieldElem], n: usize, rng: &mut ChaCha8Rng) -> bool {
    let k = s.field();
    for attempt in 0..400 {
        let y = if attempt < block.dim() {
            block.basis()[attempt].clone()
        } else {
            random_combo(k, block.basis(), s.dim(), rng, 3)
        };
        let m = minimal_polynomial(s, &y, e);
        let deriv: Vec<FieldElem> = (1..m.len())
            .map(|i| k.mul(&k.from_int(i as i64), &m[i]))
            .collect();
        for lambda in k.roots(&m) {
            if k.is_zero(&k.eval_poly(&deriv, &lambda)) {
                continue;
            }
            let h = deflate(k, &m, &lambda);
            let hl = k.eval_poly(&h, &lambda);
            let inv = k.inv(&hl).unwrap();
            let scaled: Vec<FieldElem> = h.iter().map(|c| k.mul(c, &inv)).collect();
            let f = eval_in(s, &scaled, &y, e);
            let left = Subspace::span(k, s.dim(), (0..s.dim()).map(|i| s.mul(&s.basis(i), &f)).collect());
            if left.dim() == n {
                return true;
            }
        }
    }
    false
}

/// Radical, Wedderburn blocks and primitive ideals. Blocks are sorted by
/// size and then by their primitive ideal, so the order does not depend on
/// the seed.
pub fn wedderburn_blocks(a: &FinDimAlgebra, seed: u64) -> Result<SpectrumDescription> {
    let k = a.field().clone();
    let radical = jacobson_radical(a)?;
    let (s, projection) = a.quotient(&radical)?;
    let za = a.center();
    if s.dim() == 0 {
        return Ok(SpectrumDescription {
            blocks: Vec::new(),
            radical,
            primitive_ideals: Vec::new(),
            central_characters: Vec::new(),
            semisimple: s,
            projection,
            idempotents: Vec::new(),
        });
    }
    let unit = s
        .unit()
        .cloned()
        .ok_or_else(|| Error::Inconsistent("semisimple quotient has no unit".into()))?;
    let z = s.center();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idempotents: Vec<Vector> = if z.dim() == 1 {
        vec![unit.clone()]
    } else {
        let mut found = None;
        for _ in 0..64 {
            let c = random_combo(&k, z.basis(), s.dim(), &mut rng, 5);
            let m = minimal_polynomial(&s, &c, &unit);
            if m.len() - 1 < z.dim() {
                continue;
            }
            let roots = k.roots(&m);
            if roots.len() < m.len() - 1 {
                return Err(Error::NonSplit(poly_text(&k, &m)));
            }
            let mut es = Vec::new();
            for (i, li) in roots.iter().enumerate() {
                let mut e = unit.clone();
                for (j, lj) in roots.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let denom = k.inv(&k.sub(li, lj)).unwrap();
                    let mut shifted = c.clone();
                    linalg::axpy(&k, &mut shifted, &k.neg(lj), &unit);
                    let f: Vector = shifted.iter().map(|x| k.mul(x, &denom)).collect();
                    e = s.mul(&e, &f);
                }
                es.push(e);
            }
            found = Some(es);
            break;
        }
        found.ok_or_else(|| Error::Inconclusive("no generating central element found".into()))?
    };
    let mut parts = Vec::new();
    for e in idempotents {
        let block = Subspace::span(&k, s.dim(), (0..s.dim()).map(|i| s.mul(&e, &s.basis(i))).collect());
        let d = block.dim();
        let n = (d as f64).sqrt().round() as usize;
        if n * n != d {
            return Err(Error::NonSplit(format!("simple block of dimension {d}")));
        }
        if n > 1 && !block_splits(&s, &block, &e, n, &mut rng) {
            return Err(Error::NonSplit(format!("no rank-one idempotent in a block of dimension {d}")));
        }
        let mut rest = unit.clone();
        linalg::axpy(&k, &mut rest, &k.from_int(-1), &e);
        let others = Subspace::span(&k, s.dim(), (0..s.dim()).map(|i| s.mul(&rest, &s.basis(i))).collect());
        let prim = others.preimage(&k, &projection);
        let cc = prim.intersection(&k, &za);
        parts.push((n, prim, cc, e));
    }
    parts.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.basis().cmp(y.1.basis())));
    Ok(SpectrumDescription {
        blocks: parts.iter().map(|p| p.0).collect(),
        radical,
        primitive_ideals: parts.iter().map(|p| p.1.clone()).collect(),
        central_characters: parts.iter().map(|p| p.2.clone()).collect(),
        semisimple: s,
        projection,
        idempotents: parts.into_iter().map(|p| p.3).collect(),
    })
}
