//! Coxeter groups `W`, their extensions `W ⋊ Ω` by diagram automorphisms,
//! canonical reduced words, Bruhat order and affine realizations.

mod affine;
mod bruhat;
mod element;
mod types;

use std::collections::{BTreeSet, HashMap, VecDeque};

pub use affine::{
    identity_matrix, is_identity_matrix, mat_mul, mat_vec, vec_add, vec_sub, Affine,
    AffineRealization,
};
pub use element::{parse_letters, GroupElement, Letter};

use crate::error::{Error, Result};

/// Coxeter matrix entry standing for `m = ∞`.
pub const INF: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Finite,
    Affine,
    Dihedral,
    /// Infinite but without an attached realization.
    Indefinite,
}

#[derive(Clone, Debug)]
enum Engine {
    /// Integral generalized Cartan matrix; reduction runs on the orbit of
    /// the weight with all coordinates 1.
    Cartan(Vec<Vec<i64>>),
    /// `I2(m)` by the alternating-word normal form.
    Dihedral(u32),
}

/// Ω given by generating permutations of `S`, optionally with the matching
/// affine isometries.
#[derive(Clone, Debug, Default)]
pub struct OmegaSpec {
    pub perms: Vec<Vec<usize>>,
    pub isometries: Option<Vec<Affine>>,
}

#[derive(Clone, Debug)]
pub struct CoxeterDatum {
    label: String,
    matrix: Vec<Vec<u32>>,
    kind: Kind,
    finite: bool,
    engine: Engine,
    omega_perms: Vec<Vec<usize>>,
    omega_mul: Vec<Vec<usize>>,
    omega_inv: Vec<usize>,
    omega_affine: Vec<Affine>,
    realization: Option<AffineRealization>,
}

/// `(a_ij, a_ji)` for a crystallographic label.
fn cartan_pair(m: u32) -> Result<(i64, i64)> {
    match m {
        2 => Ok((0, 0)),
        3 => Ok((-1, -1)),
        4 => Ok((-1, -2)),
        6 => Ok((-1, -3)),
        INF => Ok((-2, -2)),
        other => Err(Error::UnsupportedLabel(other)),
    }
}

fn det(m: &[Vec<i64>]) -> i128 {
    // fraction-free Bareiss elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// A generalized Cartan matrix is of finite type iff all principal minors
/// are positive.
fn cartan_is_finite(c: &[Vec<i64>]) -> bool {
    let n = c.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| c[i][j]).collect())
            .collect();
        det(&sub) > 0
    })
}

impl CoxeterDatum {
    /// Builds a datum from a Coxeter matrix (`INF` for `∞`) with optional Ω
    /// and affine realization.
    pub fn build(
        label: &str,
        matrix: Vec<Vec<u32>>,
        omega: Option<OmegaSpec>,
        realization: Option<AffineRealization>,
    ) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || n > 64 {
            return Err(Error::InvalidCoxeterMatrix("rank must be between 1 and 64".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCoxeterMatrix("matrix is not square".into()));
            }
            if row[i] != 1 {
                return Err(Error::InvalidCoxeterMatrix(format!("diagonal entry {i} is not 1")));
            }
            for j in 0..n {
                if matrix[j][i] != row[j] {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "non-symmetric at ({i},{j})"
                    )));
                }
                if i != j && row[j] == 1 {
                    return Err(Error::InvalidCoxeterMatrix(format!("off-diagonal 1 at ({i},{j})")));
                }
            }
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            for j in i + 1..n {
                let (a, b) = cartan_pair(matrix[i][j])?;
                cartan[i][j] = a;
                cartan[j][i] = b;
            }
        }
        let finite = cartan_is_finite(&cartan);
        let kind = if finite {
            Kind::Finite
        } else if realization.is_some() {
            Kind::Affine
        } else {
            Kind::Indefinite
        };
        let mut d = CoxeterDatum {
            label: label.to_string(),
            matrix,
            kind,
            finite,
            engine: Engine::Cartan(cartan),
            omega_perms: Vec::new(),
            omega_mul: Vec::new(),
            omega_inv: Vec::new(),
            omega_affine: Vec::new(),
            realization,
        };
        d.attach_omega(omega.unwrap_or_default())?;
        d.verify_braid_relations()?;
        d.verify_realization()?;
        Ok(d)
    }

    /// The dihedral group `I2(m)` of order `2m`, for any `m ≥ 2`.
    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidCoxeterMatrix(format!("dihedral order {m} < 2")));
        }
        let mut d = CoxeterDatum {
            label: format!("I2({m})"),
            matrix: vec![vec![1, m], vec![m, 1]],
            kind: Kind::Dihedral,
            finite: true,
            engine: Engine::Dihedral(m),
            omega_perms: Vec::new(),
            omega_mul: Vec::new(),
            omega_inv: Vec::new(),
            omega_affine: Vec::new(),
            realization: None,
        };
        d.attach_omega(OmegaSpec::default())?;
        d.verify_braid_relations()?;
        Ok(d)
    }

    fn attach_omega(&mut self, spec: OmegaSpec) -> Result<()> {
        let n = self.rank();
        let dim = self.realization.as_ref().map(|r| r.dim);
        if let Some(iso) = &spec.isometries {
            if iso.len() != spec.perms.len() {
                return Err(Error::InvalidOmega("isometry count differs from permutation count".into()));
            }
            if dim.is_none() {
                return Err(Error::InvalidOmega("isometries given without a realization".into()));
            }
        } else if dim.is_some() && !spec.perms.is_empty() {
            return Err(Error::InvalidOmega("affine datum needs isometries for Omega".into()));
        }
        for p in &spec.perms {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidOmega(format!("{p:?} is not a permutation of S")));
            }
            for i in 0..n {
                for j in 0..n {
                    if self.matrix[p[i]][p[j]] != self.matrix[i][j] {
                        return Err(Error::InvalidOmega(format!(
                            "{p:?} does not preserve m({i},{j})"
                        )));
                    }
                }
            }
        }
        let id_aff = dim.map(Affine::identity);
        let mut elems: Vec<(Vec<usize>, Option<Affine>)> = vec![((0..n).collect(), id_aff)];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(elems[0].0.clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for (g, p) in spec.perms.iter().enumerate() {
                let comp: Vec<usize> = (0..n).map(|s| elems[i].0[p[s]]).collect();
                let aff = elems[i]
                    .1
                    .as_ref()
                    .map(|a| a.compose(&spec.isometries.as_ref().unwrap()[g]));
                match index.get(&comp) {
                    Some(&j) => {
                        if elems[j].1 != aff {
                            return Err(Error::InvalidOmega(
                                "two isometries induce the same permutation".into(),
                            ));
                        }
                    }
                    None => {
                        if elems.len() >= 255 {
                            return Err(Error::InvalidOmega("Omega too large".into()));
                        }
                        index.insert(comp.clone(), elems.len());
                        elems.push((comp, aff));
                    }
                }
            }
            i += 1;
        }
        let k = elems.len();
        let mut mul = vec![vec![0; k]; k];
        for a in 0..k {
            for b in 0..k {
                let comp: Vec<usize> = (0..n).map(|s| elems[a].0[elems[b].0[s]]).collect();
                mul[a][b] = index[&comp];
            }
        }
        self.omega_inv = (0..k).map(|a| (0..k).find(|&b| mul[a][b] == 0).unwrap()).collect();
        self.omega_mul = mul;
        let (perms, affs): (Vec<_>, Vec<_>) = elems.into_iter().unzip();
        self.omega_perms = perms;
        self.omega_affine = affs.into_iter().flatten().collect();
        Ok(())
    }

    /// Checks the Coxeter relations against the reduction engine on words of
    /// length up to `2m`.
    fn verify_braid_relations(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            if !self.normal_form(&[i as u8, i as u8]).is_empty() {
                return Err(Error::InvalidCoxeterMatrix(format!("s{i} is not an involution")));
            }
            for j in i + 1..n {
                let m = self.matrix[i][j];
                let alt = |start: usize, len: usize| -> Vec<u8> {
                    (0..len)
                        .map(|k| if k % 2 == 0 { start } else { start ^ i ^ j } as u8)
                        .collect()
                };
                let probe = if m == INF { 8 } else { m as usize };
                for len in 1..=probe {
                    if self.normal_form(&alt(i, len)).len() != len {
                        return Err(Error::InvalidCoxeterMatrix(format!(
                            "alternating word of length {len} in s{i}, s{j} not reduced"
                        )));
                    }
                }
                if m != INF && self.normal_form(&alt(i, m as usize)) != self.normal_form(&alt(j, m as usize)) {
                    return Err(Error::InvalidCoxeterMatrix(format!("braid relation fails for ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    fn verify_realization(&self) -> Result<()> {
        let Some(real) = &self.realization else {
            return Ok(());
        };
        let n = self.rank();
        if real.gens.len() != n || real.gens.iter().any(|g| g.dim() != real.dim) {
            return Err(Error::InvalidCoxeterMatrix("realization has wrong shape".into()));
        }
        let id = Affine::identity(real.dim);
        for i in 0..n {
            if real.gens[i].compose(&real.gens[i]) != id {
                return Err(Error::InvalidCoxeterMatrix(format!("realized s{i} is not an involution")));
            }
            for j in i + 1..n {
                let p = real.gens[i].compose(&real.gens[j]);
                let m = self.matrix[i][j];
                let order = p.finite_order();
                let ok = if m == INF { order.is_none() } else { order == Some(m as usize) };
                if !ok {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "realized s{i}s{j} has order {order:?}, expected {m}"
                    )));
                }
            }
        }
        for (w, aff) in self.omega_affine.iter().enumerate() {
            let inv = aff.inverse();
            for i in 0..n {
                let conj = aff.compose(&real.gens[i]).compose(&inv);
                if conj != real.gens[self.omega_perms[w][i]] {
                    return Err(Error::InvalidOmega(format!(
                        "w{w} does not conjugate s{i} to s{}",
                        self.omega_perms[w][i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn omega_order(&self) -> usize {
        self.omega_perms.len()
    }

    pub fn omega_perm(&self, w: usize) -> &[usize] {
        &self.omega_perms[w]
    }

    pub fn realization(&self) -> Option<&AffineRealization> {
        self.realization.as_ref()
    }

    fn cartan_reflect(c: &[Vec<i64>], i: usize, v: &mut [i64]) {
        let vi = v[i];
        for (j, x) in v.iter_mut().enumerate() {
            *x = x
                .checked_sub(vi.checked_mul(c[i][j]).expect("weight overflow"))
                .expect("weight overflow");
        }
    }

    /// ShortLex normal form of the Coxeter word (no Ω letters).
    fn normal_form(&self, word: &[u8]) -> Vec<u8> {
        match &self.engine {
            Engine::Cartan(c) => {
                let n = c.len();
                let mut v = vec![1i64; n];
                for &a in word.iter().rev() {
                    Self::cartan_reflect(c, a as usize, &mut v);
                }
                let mut out = Vec::new();
                while let Some(i) = (0..n).find(|&i| v[i] < 0) {
                    out.push(i as u8);
                    Self::cartan_reflect(c, i, &mut v);
                }
                out
            }
            Engine::Dihedral(m) => {
                let m = *m as usize;
                let (mut start, mut len) = (0u8, 0usize);
                for &g in word {
                    let last = if len % 2 == 1 { start } else { 1 - start };
                    if len == 0 {
                        (start, len) = (g, 1);
                    } else if len == m {
                        // the reduced word of w0 ending in g loses its last letter
                        start = if m % 2 == 1 { g } else { 1 - g };
                        len = m - 1;
                    } else if last == g {
                        len -= 1;
                    } else {
                        len += 1;
                    }
                    if len == 0 || len == m {
                        start = 0;
                    }
                }
                (0..len).map(|k| if k % 2 == 0 { start } else { 1 - start }).collect()
            }
        }
    }

    fn check_element(&self, x: &GroupElement) -> Result<()> {
        if x.omega as usize >= self.omega_order() || x.word.iter().any(|&s| s as usize >= self.rank()) {
            return Err(Error::DatumMismatch(format!("{x} does not belong to {}", self.label)));
        }
        Ok(())
    }

    /// Canonical element of a word over `S ∪ Ω`.
    pub fn reduce(&self, letters: &[Letter]) -> Result<GroupElement> {
        let mut raw = Vec::with_capacity(letters.len());
        let mut omega = 0usize;
        for l in letters {
            match *l {
                Letter::S(i) if i < self.rank() => raw.push(self.omega_perms[omega][i] as u8),
                Letter::Omega(j) if j < self.omega_order() => omega = self.omega_mul[omega][j],
                Letter::S(i) => return Err(Error::UnknownLetter(format!("s{i}"))),
                Letter::Omega(j) => return Err(Error::UnknownLetter(format!("w{j}"))),
            }
        }
        Ok(GroupElement {
            word: self.normal_form(&raw),
            omega: omega as u8,
        })
    }

    /// Parses the text encoding, e.g. `s0.s1.w1` or `e`.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        let letters = parse_letters(text).map_err(Error::UnknownLetter)?;
        self.reduce(&letters)
    }

    /// Canonical element of a word of generator indices.
    pub fn from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let letters: Vec<Letter> = word.iter().map(|&i| Letter::S(i)).collect();
        self.reduce(&letters)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity()
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        assert!(i < self.rank(), "generator index out of range");
        GroupElement {
            word: vec![i as u8],
            omega: 0,
        }
    }

    pub fn omega_element(&self, j: usize) -> GroupElement {
        assert!(j < self.omega_order(), "Omega index out of range");
        GroupElement {
            word: Vec::new(),
            omega: j as u8,
        }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let p = &self.omega_perms[x.omega as usize];
        let mut raw = x.word.clone();
        raw.extend(y.word.iter().map(|&s| p[s as usize] as u8));
        GroupElement {
            word: self.normal_form(&raw),
            omega: self.omega_mul[x.omega as usize][y.omega as usize] as u8,
        }
    }

    pub fn try_multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.multiply(x, y))
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        let oi = self.omega_inv[x.omega as usize];
        let p = &self.omega_perms[oi];
        let raw: Vec<u8> = x.word.iter().rev().map(|&s| p[s as usize] as u8).collect();
        GroupElement {
            word: self.normal_form(&raw),
            omega: oi as u8,
        }
    }

    /// `x * s`
    pub fn mul_gen_right(&self, x: &GroupElement, s: usize) -> GroupElement {
        let mut raw = x.word.clone();
        raw.push(self.omega_perms[x.omega as usize][s] as u8);
        GroupElement {
            word: self.normal_form(&raw),
            omega: x.omega,
        }
    }

    /// `s * x`
    pub fn mul_gen_left(&self, s: usize, x: &GroupElement) -> GroupElement {
        let mut raw = Vec::with_capacity(x.word.len() + 1);
        raw.push(s as u8);
        raw.extend_from_slice(&x.word);
        GroupElement {
            word: self.normal_form(&raw),
            omega: x.omega,
        }
    }

    pub fn is_left_descent(&self, s: usize, x: &GroupElement) -> bool {
        match &self.engine {
            Engine::Cartan(c) => {
                let mut v = vec![1i64; c.len()];
                for &a in x.word.iter().rev() {
                    Self::cartan_reflect(c, a as usize, &mut v);
                }
                v[s] < 0
            }
            Engine::Dihedral(_) => self.mul_gen_left(s, x).length() < x.length(),
        }
    }

    pub fn is_right_descent(&self, x: &GroupElement, s: usize) -> bool {
        self.mul_gen_right(x, s).length() < x.length()
    }

    pub fn left_descents(&self, x: &GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_left_descent(s, x)).collect()
    }

    pub fn right_descents(&self, x: &GroupElement) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_right_descent(x, s)).collect()
    }

    /// All elements with Coxeter length at most `radius`, times every Ω
    /// element, in ShortLex order.
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        let mut layer = vec![GroupElement::identity()];
        let mut all: BTreeSet<GroupElement> = layer.iter().cloned().collect();
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for x in &layer {
                for s in 0..self.rank() {
                    let y = self.mul_gen_right(x, s);
                    if y.length() > x.length() {
                        next.insert(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            layer = next.into_iter().collect();
        }
        let mut out: Vec<GroupElement> = all
            .into_iter()
            .flat_map(|x| {
                (0..self.omega_order()).map(move |o| GroupElement {
                    word: x.word.clone(),
                    omega: o as u8,
                })
            })
            .collect();
        out.sort();
        out
    }

    /// Every element of a finite group, in ShortLex order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        if !self.finite {
            return Err(Error::InfiniteGroup);
        }
        Ok(self.ball(usize::MAX))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn longest_element(&self) -> Result<GroupElement> {
        if !self.finite {
            return Err(Error::InfiniteGroup);
        }
        let mut x = GroupElement::identity();
        loop {
            match (0..self.rank()).find(|&s| !self.is_right_descent(&x, s)) {
                Some(s) => x = self.mul_gen_right(&x, s),
                None => return Ok(x),
            }
        }
    }

    /// Conjugate `y x y^-1`.
    pub fn conjugate(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.multiply(&self.multiply(y, x), &self.inverse(y))
    }

    /// The affine map realizing `x` and whether `x` has finite order.
    pub fn affine_data(&self, x: &GroupElement) -> Result<(Affine, bool)> {
        let aff = self.affine_map(x)?;
        let fin = aff.finite_order().is_some();
        Ok((aff, fin))
    }

    pub fn affine_map(&self, x: &GroupElement) -> Result<Affine> {
        let real = self
            .realization
            .as_ref()
            .ok_or_else(|| Error::NoRealization(self.label.clone()))?;
        self.check_element(x)?;
        let mut acc = Affine::identity(real.dim);
        for &s in &x.word {
            acc = acc.compose(&real.gens[s as usize]);
        }
        Ok(acc.compose(&self.omega_affine[x.omega as usize]))
    }

    /// Order of a finite-order element; `None` for infinite order. Finite
    /// types use repeated multiplication.
    pub fn element_order(&self, x: &GroupElement) -> Option<usize> {
        if self.realization.is_some() {
            return self.affine_map(x).ok()?.finite_order();
        }
        if !self.finite {
            return None;
        }
        let mut p = x.clone();
        for k in 1.. {
            if p.is_identity() {
                return Some(k);
            }
            p = self.multiply(&p, x);
        }
        unreachable!()
    }

    /// Conjugacy classes of a finite group, each sorted, listed in order of
    /// their smallest element.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<GroupElement>>> {
        let all = self.elements()?;
        let gens: Vec<GroupElement> = (0..self.rank())
            .map(|s| self.generator(s))
            .chain((1..self.omega_order()).map(|j| self.omega_element(j)))
            .collect();
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        let mut classes = Vec::new();
        for x in all {
            if seen.contains(&x) {
                continue;
            }
            let mut class = BTreeSet::from([x.clone()]);
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for g in &gens {
                    let z = self.conjugate(&y, g);
                    if class.insert(z.clone()) {
                        queue.push_back(z);
                    }
                }
            }
            seen.extend(class.iter().cloned());
            classes.push(class.into_iter().collect());
        }
        Ok(classes)
    }
}

/// Builds a datum from a bare Coxeter matrix with optional Ω permutations.
pub fn build_coxeter(matrix: Vec<Vec<u32>>, omega: Option<OmegaSpec>) -> Result<CoxeterDatum> {
    CoxeterDatum::build("custom", matrix, omega, None)
}

pub use bruhat::{bruhat_leq, enumerate_interval};
pub use types::from_label;

#[cfg(test)]
mod tests;
