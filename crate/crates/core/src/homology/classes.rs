//! Finite-order conjugacy classes of finite and (extended) affine Weyl
//! groups, with their centralizer data.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coxeter::{Affine, CoxeterDatum, GroupElement};
use crate::error::{Error, Result};
use crate::field::{int, NumberField, Rational};
use crate::linalg::{self, Matrix};

type IMat = Vec<Vec<i64>>;
type QVec = Vec<Rational>;

/// An element `(B, t)` of `Ŵ_g` over an element `B` of the finite quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerElement {
    pub element: GroupElement,
    /// Linear part in coordinates of the translation lattice (empty for
    /// finite groups).
    pub linear: IMat,
    pub translation: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassRecord {
    pub representative: GroupElement,
    /// `None` for infinite order.
    pub order: Option<usize>,
    /// `Z`-basis of `Λ_g` in lattice coordinates.
    pub lattice: Vec<Vec<i64>>,
    /// One lift of each element of `F_g = Ŵ_g / Λ_g`.
    pub centralizer_quotient: Vec<CentralizerElement>,
    pub cohomology: Vec<usize>,
    /// Other pool elements with a conjugator `h` such that `h x h^-1` is the
    /// representative.
    pub members: Vec<(GroupElement, GroupElement)>,
}

impl ConjClassRecord {
    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    /// `<rep>|<order>|<lattice rank>|<F order>|<h dims>`.
    pub fn report_line(&self) -> String {
        let order = self.order.map_or("inf".to_string(), |m| m.to_string());
        let h: Vec<String> = self.cohomology.iter().map(|x| x.to_string()).collect();
        format!(
            "{}|{}|{}|{}|{}",
            self.representative,
            order,
            self.rank(),
            self.centralizer_quotient.len(),
            h.join(",")
        )
    }
}

fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

fn mat_vec_q(a: &IMat, v: &[Rational]) -> QVec {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + int(*x) * y))
        .collect()
}

fn one_minus(a: &IMat) -> IMat {
    a.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, x)| i64::from(i == j) - x).collect())
        .collect()
}

/// Column Hermite normal form `M U = H`: returns `H`, `U` and the row of
/// each pivot column. The remaining columns of `H` are zero, and the matching columns
/// of `U` are a `Z`-basis of the integer kernel.
fn hnf(m: &IMat) -> (IMat, IMat, Vec<usize>) {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    let mut h = m.clone();
    let mut u: IMat = (0..c).map(|i| (0..c).map(|j| i64::from(i == j)).collect()).collect();
    let col_op = |mat: &mut IMat, p: usize, j: usize, a: [i64; 4]| {
        for row in mat.iter_mut() {
            let (x, y) = (row[p], row[j]);
            row[p] = a[0] * x + a[1] * y;
            row[j] = a[2] * x + a[3] * y;
        }
    };
    let mut piv = 0;
    let mut rows = Vec::new();
    for i in 0..r {
        if piv >= c {
            break;
        }
        for j in piv + 1..c {
            let (a, b) = (h[i][piv], h[i][j]);
            if b == 0 {
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let ops = [x, y, -b / g, a / g];
            col_op(&mut h, piv, j, ops);
            col_op(&mut u, piv, j, ops);
        }
        let p = h[i][piv];
        if p == 0 {
            continue;
        }
        if p < 0 {
            for mat in [&mut h, &mut u] {
                for row in mat.iter_mut() {
                    row[piv] = -row[piv];
                }
            }
        }
        let p = h[i][piv];
        for q in 0..piv {
            let f = Integer::div_floor(&h[i][q], &p);
            if f != 0 {
                for mat in [&mut h, &mut u] {
                    for row in mat.iter_mut() {
                        row[q] -= f * row[piv];
                    }
                }
            }
        }
        piv += 1;
        rows.push(i);
    }
    (h, u, rows)
}

/// Coordinates of `b` in the pivot columns of `H`, if `b` lies in their
/// rational span.
fn pivot_coords(h: &IMat, pivots: &[usize], b: &[Rational]) -> Option<QVec> {
    let rank = pivots.len();
    let mut x: QVec = Vec::with_capacity(rank);
    for (t, &i) in pivots.iter().enumerate() {
        let acc = (0..t).fold(b[i].clone(), |acc, s| acc - int(h[i][s]) * &x[s]);
        x.push(acc / int(h[i][t]));
    }
    let back: QVec = (0..h.len())
        .map(|i| (0..rank).fold(Rational::zero(), |acc, s| acc + int(h[i][s]) * &x[s]))
        .collect();
    (back == b).then_some(x)
}

/// `b mod (1 - A) Z^r` in canonical form, with the integer coordinates
/// removed.
struct Reducer {
    h: IMat,
    u: IMat,
    pivots: Vec<usize>,
    rank: usize,
}

impl Reducer {
    fn new(a: &IMat) -> Self {
        let (h, u, pivots) = hnf(&one_minus(a));
        let rank = pivots.len();
        Reducer { h, u, pivots, rank }
    }

    /// Canonical representative and the integer part `n` with
    /// `b = canonical + H n`.
    fn reduce(&self, b: &[Rational]) -> Result<(QVec, Vec<i64>)> {
        let x = pivot_coords(&self.h, &self.pivots, b)
            .ok_or_else(|| Error::Inconsistent("translation part outside the image of 1 - A".into()))?;
        let n: Vec<i64> = x.iter().map(|v| v.floor().to_integer().to_i64().unwrap()).collect();
        let canon = (0..self.h.len())
            .map(|i| {
                (0..self.rank).fold(Rational::zero(), |acc, s| acc + int(self.h[i][s]) * (&x[s] - int(n[s])))
            })
            .collect();
        Ok((canon, n))
    }

    /// `t` with `(1 - A) t = -H n`.
    fn translation_for(&self, n: &[i64]) -> QVec {
        (0..self.u.len())
            .map(|i| int(-(0..self.rank).map(|s| self.u[i][s] * n[s]).sum::<i64>()))
            .collect()
    }

    fn kernel(&self) -> Vec<Vec<i64>> {
        let c = self.u.len();
        (self.rank..c).map(|j| self.u.iter().map(|row| row[j]).collect()).collect()
    }
}

/// An affine Weyl group seen as `T ⋊ G0` in coordinates of its translation
/// lattice `T`.
struct LatticeModel<'a> {
    d: &'a CoxeterDatum,
    basis: Vec<QVec>,
    left_inverse: Vec<QVec>,
    barycenter: QVec,
    g0: Vec<(GroupElement, IMat)>,
}

fn to_q(k: &NumberField, v: &[Rational]) -> Vec<crate::field::FieldElem> {
    v.iter().map(|x| k.from_rational(x.clone())).collect()
}

fn from_q(k: &NumberField, v: &[crate::field::FieldElem]) -> QVec {
    v.iter().map(|x| k.to_rational(x).unwrap()).collect()
}

impl<'a> LatticeModel<'a> {
    fn new(d: &'a CoxeterDatum) -> Result<Self> {
        let real = d
            .realization()
            .ok_or_else(|| Error::NoRealization(d.label().to_string()))?;
        let k = NumberField::rationals();
        let dim = real.dim;
        let basis = real.translations.clone();
        let r = basis.len();
        let p = Matrix::from_cols(&k, &basis.iter().map(|v| to_q(&k, v)).collect::<Vec<_>>(), dim);
        let gram = p.transpose().mul(&k, &p);
        let gi = linalg::inverse(&k, &gram).ok_or_else(|| Error::Inconsistent("translation basis is degenerate".into()))?;
        let li = gi.mul(&k, &p.transpose());
        let left_inverse = (0..r).map(|i| from_q(&k, li.row(i))).collect();
        let mut model = LatticeModel {
            d,
            basis,
            left_inverse,
            barycenter: Vec::new(),
            g0: Vec::new(),
        };
        model.barycenter = model.alcove_barycenter(&k)?;
        model.g0 = model.finite_part()?;
        Ok(model)
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, v: &[Rational]) -> QVec {
        self.left_inverse
            .iter()
            .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
            .collect()
    }

    fn ambient(&self, y: &[Rational]) -> QVec {
        let dim = self.basis[0].len();
        (0..dim)
            .map(|i| self.basis.iter().zip(y).fold(Rational::zero(), |acc, (t, c)| acc + &t[i] * c))
            .collect()
    }

    fn linear(&self, aff: &Affine) -> Result<IMat> {
        let cols: Vec<QVec> = self
            .basis
            .iter()
            .map(|t| self.coords(&crate::coxeter::mat_vec(&aff.lin, t)))
            .collect();
        let r = self.rank();
        let mut out = vec![vec![0i64; r]; r];
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                if !x.is_integer() {
                    return Err(Error::Inconsistent("linear part does not preserve the lattice".into()));
                }
                out[i][j] = x.to_integer().to_i64().unwrap();
            }
        }
        Ok(out)
    }

    fn in_lattice(&self, x: &GroupElement) -> Result<(IMat, QVec)> {
        let aff = self.d.affine_map(x)?;
        Ok((self.linear(&aff)?, self.coords(&aff.trans)))
    }

    /// Barycenter of the fundamental alcove: vertex `i` lies on every wall
    /// except the `i`-th.
    fn alcove_barycenter(&self, k: &NumberField) -> Result<QVec> {
        let real = self.d.realization().unwrap();
        let n = real.gens.len();
        let r = self.rank();
        let dim = real.dim;
        let mut acc = vec![Rational::zero(); dim];
        for i in 0..n {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for (j, s) in real.gens.iter().enumerate() {
                if j == i {
                    continue;
                }
                for a in 0..dim {
                    // ((A - 1) P y)_a = -b_a
                    let row: QVec = (0..r)
                        .map(|c| {
                            let col = crate::coxeter::mat_vec(&s.lin, &self.basis[c]);
                            &col[a] - &self.basis[c][a]
                        })
                        .collect();
                    rows.push(to_q(k, &row));
                    rhs.push(k.from_rational(-s.trans[a].clone()));
                }
            }
            let m = Matrix::from_rows(rows, r);
            let y = linalg::solve(k, &m, &rhs)
                .ok_or_else(|| Error::Inconsistent(format!("alcove vertex {i} does not exist")))?;
            let v = self.ambient(&from_q(k, &y));
            for (x, c) in acc.iter_mut().zip(v) {
                *x += c;
            }
        }
        Ok(acc.into_iter().map(|x| x / int(n as i64)).collect())
    }

    fn finite_part(&self) -> Result<Vec<(GroupElement, IMat)>> {
        let real = self.d.realization().unwrap();
        let gens: Vec<GroupElement> = real.finite_gens.iter().map(|&s| self.d.generator(s)).collect();
        let mut seen: BTreeMap<IMat, GroupElement> = BTreeMap::new();
        let mut queue = VecDeque::from([self.d.identity()]);
        seen.insert(self.in_lattice(&self.d.identity())?.0, self.d.identity());
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = self.d.multiply(&x, g);
                let (a, t) = self.in_lattice(&y)?;
                if t.iter().any(|v| !v.is_zero()) {
                    return Err(Error::Inconsistent("finite generators do not fix the origin".into()));
                }
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(a) {
                    e.insert(y.clone());
                    queue.push_back(y);
                }
            }
            if seen.len() > 100_000 {
                return Err(Error::Inconsistent("finite Weyl group is too large".into()));
            }
        }
        let mut out: Vec<(GroupElement, IMat)> = seen.into_iter().map(|(a, x)| (x, a)).collect();
        out.sort();
        Ok(out)
    }

    fn element_of(&self, a: &IMat) -> &GroupElement {
        &self.g0.iter().find(|(_, m)| m == a).unwrap().0
    }

    /// Group element realizing an ambient affine map of `Ŵ`, found by
    /// walking from the image of the fundamental alcove back to it.
    fn element_from_affine(&self, h: &Affine) -> Result<GroupElement> {
        let real = self.d.realization().unwrap();
        let c = &self.barycenter;
        let side = |s: &Affine, y: &[Rational]| -> QVec { crate::coxeter::vec_sub(y, &s.apply(y)) };
        let normals: Vec<QVec> = real.gens.iter().map(|s| side(s, c)).collect();
        let mut cur = h.clone();
        let mut letters = Vec::new();
        for _ in 0..10_000 {
            let y = cur.apply(c);
            let sep = real.gens.iter().enumerate().find(|(i, s)| {
                let v = side(s, &y);
                v.iter().zip(&normals[*i]).fold(Rational::zero(), |acc, (p, q)| acc + p * q).is_negative()
            });
            match sep {
                Some((i, s)) => {
                    letters.push(i);
                    cur = s.compose(&cur);
                }
                None => break,
            }
        }
        let omega = (0..self.d.omega_order())
            .find(|&j| self.d.affine_map(&self.d.omega_element(j)).ok().as_ref() == Some(&cur))
            .ok_or_else(|| Error::Unresolved("alcove walk did not end at an element of Omega".into()))?;
        let mut x = self.d.identity();
        for i in letters {
            x = self.d.multiply(&x, &self.d.generator(i));
        }
        x = self.d.multiply(&x, &self.d.omega_element(omega));
        if self.d.affine_map(&x)? != *h {
            return Err(Error::Unresolved(format!("alcove walk produced {x}, which does not realize the map")));
        }
        Ok(x)
    }

    fn translation_element(&self, t: &[Rational]) -> Result<GroupElement> {
        if t.iter().all(Zero::is_zero) {
            return Ok(self.d.identity());
        }
        self.element_from_affine(&Affine::translation(self.ambient(t)))
    }
}

/// Conjugacy-class data for the linear parts in `G0`.
struct LinearClasses {
    /// For each `A`: class index and `B` with `B A B^-1 = A_0`.
    to_rep: BTreeMap<IMat, (usize, IMat)>,
    reps: Vec<IMat>,
}

fn inverse_in(g0: &[(GroupElement, IMat)], b: &IMat) -> IMat {
    let r = b.len();
    let id: IMat = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    g0.iter().map(|(_, m)| m).find(|m| mat_mul(b, m) == id).unwrap().clone()
}

fn linear_classes(g0: &[(GroupElement, IMat)]) -> LinearClasses {
    let mut to_rep: BTreeMap<IMat, (usize, IMat)> = BTreeMap::new();
    let mut reps = Vec::new();
    for (_, a0) in g0 {
        if to_rep.contains_key(a0) {
            continue;
        }
        let idx = reps.len();
        reps.push(a0.clone());
        for (_, b) in g0 {
            let binv = inverse_in(g0, b);
            let a = mat_mul(&mat_mul(&binv, a0), b);
            to_rep.entry(a).or_insert_with(|| (idx, b.clone()));
        }
    }
    LinearClasses { to_rep, reps }
}

fn centralizer(g0: &[(GroupElement, IMat)], a: &IMat) -> Vec<IMat> {
    g0.iter()
        .map(|(_, b)| b)
        .filter(|b| mat_mul(b, a) == mat_mul(a, b))
        .cloned()
        .collect()
}

/// Elements of `W_J Ω` of finite order, over all proper `J ⊊ S`.
fn face_stabilizer_pool(d: &CoxeterDatum) -> Result<BTreeSet<GroupElement>> {
    let n = d.rank();
    let mut pool = BTreeSet::new();
    for mask in 0u32..(1 << n) - 1 {
        let gens: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut sub = BTreeSet::from([d.identity()]);
        let mut queue = VecDeque::from([d.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = d.mul_gen_right(&x, s);
                if sub.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            if sub.len() > 100_000 {
                return Err(Error::Inconsistent("parabolic subgroup is too large".into()));
            }
        }
        for x in &sub {
            for j in 0..d.omega_order() {
                let y = d.multiply(x, &d.omega_element(j));
                if d.element_order(&y).is_some() {
                    pool.insert(y);
                }
            }
        }
    }
    Ok(pool)
}

/// Elementary symmetric functions of the eigenvalues of `m` (rational
/// square matrix), `e_0 = 1`.
fn exterior_traces(m: &[QVec]) -> Vec<Rational> {
    let r = m.len();
    let mul = |a: &[QVec], b: &[QVec]| -> Vec<QVec> {
        a.iter()
            .map(|row| (0..r).map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, br)| acc + x * &br[j])).collect())
            .collect()
    };
    let mut p = Vec::with_capacity(r);
    let mut pow: Vec<QVec> = m.to_vec();
    for _ in 0..r {
        p.push((0..r).fold(Rational::zero(), |acc, i| acc + &pow[i][i]));
        pow = mul(&pow, m);
    }
    let mut e = vec![Rational::one()];
    for kk in 1..=r {
        let mut s = Rational::zero();
        for j in 1..=kk {
            let term = &e[kk - j] * &p[j - 1];
            if j % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e.push(s / int(kk as i64));
    }
    e
}

/// `dim H^k(Ŵ_g; C)` for `k = 0..rank`: the average over `F_g` of the trace
/// of `Λ^k` of its action on `Λ_g ⊗ Q`.
pub fn centralizer_cohomology(record: &ConjClassRecord) -> Result<Vec<usize>> {
    let f = &record.centralizer_quotient;
    if f.is_empty() {
        return Err(Error::Inconsistent("empty centralizer quotient".into()));
    }
    let s = record.rank();
    if s == 0 {
        return Ok(vec![1]);
    }
    let k = NumberField::rationals();
    let lat = &record.lattice;
    let r = lat[0].len();
    let basis = Matrix::from_cols(&k, &lat.iter().map(|v| v.iter().map(|&x| k.from_int(x)).collect()).collect::<Vec<_>>(), r);
    let mut sums = vec![Rational::zero(); s + 1];
    for el in f {
        let mut cols = Vec::with_capacity(s);
        for v in lat {
            let bv: Vec<i64> = el.linear.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect();
            let rhs: Vec<_> = bv.iter().map(|&x| k.from_int(x)).collect();
            let c = linalg::solve(&k, &basis, &rhs)
                .ok_or_else(|| Error::Inconsistent("centralizer does not preserve the invariant lattice".into()))?;
            cols.push(from_q(&k, &c));
        }
        let m: Vec<QVec> = (0..s).map(|i| (0..s).map(|j| cols[j][i].clone()).collect()).collect();
        for (acc, e) in sums.iter_mut().zip(exterior_traces(&m)) {
            *acc += e;
        }
    }
    let n = int(f.len() as i64);
    sums.into_iter()
        .map(|x| {
            let v = x / &n;
            if !v.is_integer() || v.is_negative() {
                return Err(Error::Inconsistent(format!("non-integral cohomology dimension {v}")));
            }
            Ok(v.to_integer().to_usize().unwrap())
        })
        .collect()
}

fn finite_group_classes(d: &CoxeterDatum) -> Result<Vec<ConjClassRecord>> {
    let all = d.elements()?;
    let mut out = Vec::new();
    for class in d.conjugacy_classes()? {
        let rep = class[0].clone();
        let cent: Vec<CentralizerElement> = all
            .iter()
            .filter(|y| d.multiply(y, &rep) == d.multiply(&rep, y))
            .map(|y| CentralizerElement {
                element: y.clone(),
                linear: Vec::new(),
                translation: Vec::new(),
            })
            .collect();
        let members = class[1..]
            .iter()
            .map(|x| {
                let h = all.iter().find(|y| d.conjugate(x, y) == rep).unwrap().clone();
                (x.clone(), h)
            })
            .collect();
        let mut rec = ConjClassRecord {
            representative: rep.clone(),
            order: d.element_order(&rep),
            lattice: Vec::new(),
            centralizer_quotient: cent,
            cohomology: Vec::new(),
            members,
        };
        rec.cohomology = centralizer_cohomology(&rec)?;
        out.push(rec);
    }
    Ok(out)
}

/// Invariant of a finite-order `g = (A, b)` and the conjugator `(t, B)`
/// taking it to normal form `(A_0, key)`.
struct Normalized {
    class: usize,
    key: QVec,
    linear: IMat,
    translation: QVec,
}

fn normalize(model: &LatticeModel, lc: &LinearClasses, a: &IMat, b: &QVec) -> Result<Normalized> {
    let (class, b0) = lc.to_rep[a].clone();
    let a0 = &lc.reps[class];
    let red = Reducer::new(a0);
    let start = mat_vec_q(&b0, b);
    let mut best: Option<(QVec, IMat, Vec<i64>)> = None;
    for bm in centralizer(&model.g0, a0) {
        let (canon, n) = red.reduce(&mat_vec_q(&bm, &start))?;
        if best.as_ref().is_none_or(|x| canon < x.0) {
            best = Some((canon, bm, n));
        }
    }
    let (key, bm, n) = best.unwrap();
    Ok(Normalized {
        class,
        key,
        linear: mat_mul(&bm, &b0),
        translation: red.translation_for(&n),
    })
}

fn affine_classes(d: &CoxeterDatum) -> Result<Vec<ConjClassRecord>> {
    let model = LatticeModel::new(d)?;
    let lc = linear_classes(&model.g0);
    let pool = face_stabilizer_pool(d)?;
    let mut groups: BTreeMap<(usize, QVec), Vec<(GroupElement, Normalized)>> = BTreeMap::new();
    for x in pool {
        let (a, b) = model.in_lattice(&x)?;
        let nf = normalize(&model, &lc, &a, &b)?;
        groups.entry((nf.class, nf.key.clone())).or_default().push((x, nf));
    }
    let conjugator = |nf: &Normalized| -> Result<GroupElement> {
        let t = model.translation_element(&nf.translation)?;
        Ok(model.d.multiply(&t, model.element_of(&nf.linear)))
    };
    let mut out = Vec::new();
    for (_, mut members) in groups {
        members.sort_by(|x, y| x.0.cmp(&y.0));
        let (rep, rep_nf) = &members[0];
        let h_rep = conjugator(rep_nf)?;
        let h_rep_inv = d.inverse(&h_rep);
        let mut certified = Vec::new();
        for (x, nf) in &members[1..] {
            let h = d.multiply(&h_rep_inv, &conjugator(nf)?);
            if d.conjugate(x, &h) != *rep {
                return Err(Error::Unresolved(format!("{x} and {rep} share invariants but the conjugator fails")));
            }
            certified.push((x.clone(), h));
        }
        let (a, b) = model.in_lattice(rep)?;
        let red = Reducer::new(&a);
        let (canon, _) = red.reduce(&b)?;
        let mut quotient = Vec::new();
        for bm in centralizer(&model.g0, &a) {
            let (c, n) = red.reduce(&mat_vec_q(&bm, &b))?;
            if c != canon {
                continue;
            }
            // (B, t) with t = translation making B.g.B^-1 back into g
            let (_, n0) = red.reduce(&b)?;
            let diff: Vec<i64> = n.iter().zip(&n0).map(|(p, q)| p - q).collect();
            let t = red.translation_for(&diff);
            let el = model.d.multiply(&model.translation_element(&t)?, model.element_of(&bm));
            if d.conjugate(rep, &el) != *rep {
                return Err(Error::Unresolved(format!("centralizer lift {el} of {rep} does not commute")));
            }
            quotient.push(CentralizerElement {
                element: el,
                linear: bm,
                translation: t,
            });
        }
        let mut rec = ConjClassRecord {
            representative: rep.clone(),
            order: d.element_order(rep),
            lattice: red.kernel(),
            centralizer_quotient: quotient,
            cohomology: Vec::new(),
            members: certified,
        };
        rec.cohomology = centralizer_cohomology(&rec)?;
        out.push(rec);
    }
    out.sort_by(|x, y| x.representative.cmp(&y.representative));
    Ok(out)
}

/// All finite-order conjugacy classes, sorted by representative. For affine
/// types every class meets the stabilizer of a face of the fundamental
/// alcove; classes are separated by a complete invariant and every merge is
/// certified by an explicit conjugator.
pub fn finite_order_classes(d: &CoxeterDatum) -> Result<Vec<ConjClassRecord>> {
    if d.realization().is_some() {
        affine_classes(d)
    } else if d.is_finite() {
        finite_group_classes(d)
    } else {
        Err(Error::NoRealization(d.label().to_string()))
    }
}

/// Infinite-order elements seen in a ball, for qualitative reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteOrderSummary {
    pub radius: usize,
    pub elements: usize,
    /// Distinct classes of linear parts among them.
    pub linear_classes: usize,
}

pub fn infinite_order_summary(d: &CoxeterDatum, radius: usize) -> Result<InfiniteOrderSummary> {
    let model = LatticeModel::new(d)?;
    let lc = linear_classes(&model.g0);
    let mut count = 0;
    let mut classes = BTreeSet::new();
    for x in d.ball(radius) {
        if d.element_order(&x).is_none() {
            count += 1;
            let (a, _) = model.in_lattice(&x)?;
            classes.insert(lc.to_rep[&a].0);
        }
    }
    Ok(InfiniteOrderSummary {
        radius,
        elements: count,
        linear_classes: classes.len(),
    })
}

#[cfg(test)]
pub(crate) fn hnf_for_tests(m: &IMat) -> (IMat, IMat, Vec<usize>) {
    hnf(m)
}
