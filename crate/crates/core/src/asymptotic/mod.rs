//! Lusztig's a-function, distinguished involutions, the asymptotic ring `J`
//! and the homomorphism `φ : H → J ⊗ Z[r, r^-1]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::coxeter::{CoxeterDatum, GroupElement};
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::hecke::{c_basis, h_constants, kl_polynomial, HeckeElement, KLTable};
use crate::laurent::LaurentPoly;
use crate::linalg::Matrix;

#[cfg(test)]
mod tests;

/// Default radius and step for infinite types.
pub const DEFAULT_RADIUS: usize = 12;
pub const DEFAULT_STEP: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// `γ` is the coefficient of `r^{-a(z)}` in `h_{x,y,z}`.
    #[default]
    Normalized,
    /// `γ` is the constant term of `(-r)^{a(z)} h_{x,y,z}`.
    Literal,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Normalized => "normalized",
            Convention::Literal => "literal",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized" => Ok(Convention::Normalized),
            "literal" => Ok(Convention::Literal),
            _ => Err(Error::InvalidInput(format!("unknown convention '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// All pairs of a finite group were enumerated.
    Exact,
    /// The value is unchanged when the pair scope grows from `radius` to
    /// `radius + step`.
    Stable { radius: usize, step: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Exact => write!(f, "exact"),
            Certificate::Stable { radius, step } => write!(f, "stable(R={radius},step={step})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AValue {
    pub value: u32,
    pub pair: (GroupElement, GroupElement),
    pub certificate: Certificate,
}

/// A finitely supported element of `J ⊗ Z[r, r^-1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JElement(pub BTreeMap<GroupElement, LaurentPoly>);

impl JElement {
    pub fn t(x: GroupElement) -> Self {
        JElement(BTreeMap::from([(x, LaurentPoly::one())]))
    }

    pub fn add_term(&mut self, x: GroupElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let v = self.0.entry(x.clone()).or_default();
        *v = &*v + c;
        if v.is_zero() {
            self.0.remove(&x);
        }
    }

    pub fn add(&self, other: &JElement) -> JElement {
        let mut out = self.clone();
        for (x, c) in &other.0 {
            out.add_term(x.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> JElement {
        let mut out = JElement::default();
        for (x, v) in &self.0 {
            out.add_term(x.clone(), &(v * c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(x, c)| format!("({c})t[{x}]")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Structure constants `γ_{x,y,z}` for all computed pairs `(x, y)`.
#[derive(Clone, Debug)]
pub struct GammaTable {
    pub convention: Convention,
    pub pairs: BTreeSet<(GroupElement, GroupElement)>,
    pub entries: BTreeMap<(GroupElement, GroupElement, GroupElement), i64>,
}

impl GammaTable {
    pub fn get(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> Result<i64> {
        if !self.pairs.contains(&(x.clone(), y.clone())) {
            return Err(Error::MissingEntry(format!("γ({x}, {y}, ·)")));
        }
        Ok(*self
            .entries
            .get(&(x.clone(), y.clone(), z.clone()))
            .unwrap_or(&0))
    }

    /// `t_x t_y = sum_z γ_{x,y,z} t_z`, extended bilinearly.
    pub fn j_multiply(&self, a: &JElement, b: &JElement) -> Result<JElement> {
        let mut out = JElement::default();
        for (x, cx) in &a.0 {
            for (y, cy) in &b.0 {
                if !self.pairs.contains(&(x.clone(), y.clone())) {
                    return Err(Error::MissingEntry(format!("γ({x}, {y}, ·)")));
                }
                let c = cx * cy;
                let lo = (x.clone(), y.clone(), GroupElement::identity());
                for ((_, _, z), g) in self
                    .entries
                    .range(lo..)
                    .take_while(|((px, py, _), _)| px == x && py == y)
                {
                    out.add_term(z.clone(), &c.scale(*g));
                }
            }
        }
        Ok(out)
    }

    /// Dump lines `g|x|y|z|value|convention`, sorted.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self
            .entries
            .iter()
            .map(|((x, y, z), v)| format!("g|{x}|{y}|{z}|{v}|{}", self.convention))
            .collect();
        lines.sort();
        lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

/// Everything derived from the `h` constants on a scope: a finite group,
/// or a length ball in an infinite one.
#[derive(Clone, Debug)]
pub struct Asymptotic {
    datum: CoxeterDatum,
    table: KLTable,
    elements: Vec<GroupElement>,
    h: BTreeMap<(GroupElement, GroupElement), BTreeMap<GroupElement, LaurentPoly>>,
    a: BTreeMap<GroupElement, AValue>,
}

fn compute_h(
    d: &CoxeterDatum,
    table: &mut KLTable,
    elements: &[GroupElement],
) -> BTreeMap<(GroupElement, GroupElement), BTreeMap<GroupElement, LaurentPoly>> {
    let mut h = BTreeMap::new();
    for w in elements {
        for u in elements {
            h.insert((w.clone(), u.clone()), h_constants(d, w, u, table));
        }
    }
    h
}

fn compute_a(
    h: &BTreeMap<(GroupElement, GroupElement), BTreeMap<GroupElement, LaurentPoly>>,
    targets: &[GroupElement],
    certificate: &Certificate,
) -> BTreeMap<GroupElement, AValue> {
    let wanted: BTreeSet<&GroupElement> = targets.iter().collect();
    let mut a: BTreeMap<GroupElement, AValue> = BTreeMap::new();
    for ((w, u), row) in h {
        for (v, p) in row {
            if !wanted.contains(v) {
                continue;
            }
            let val = (-p.valuation().unwrap()).max(0) as u32;
            let better = a.get(v).is_none_or(|cur| val > cur.value);
            if better {
                a.insert(
                    v.clone(),
                    AValue {
                        value: val,
                        pair: (w.clone(), u.clone()),
                        certificate: certificate.clone(),
                    },
                );
            }
        }
    }
    a
}

impl Asymptotic {
    /// Exhaustive computation for a finite group.
    pub fn finite(datum: &CoxeterDatum) -> Result<Self> {
        let mut table = KLTable::new(datum.label());
        Self::finite_with_table(datum, &mut table)
    }

    /// As [`Asymptotic::finite`], reusing and extending a KL table.
    pub fn finite_with_table(datum: &CoxeterDatum, table: &mut KLTable) -> Result<Self> {
        let elements = datum.elements()?;
        let h = compute_h(datum, table, &elements);
        let a = compute_a(&h, &elements, &Certificate::Exact);
        Ok(Asymptotic {
            datum: datum.clone(),
            table: table.clone(),
            elements,
            h,
            a,
        })
    }

    /// Pairs from the ball of the given radius; each a-value must agree with
    /// the one computed from the ball of radius `radius + step`.
    pub fn ball(datum: &CoxeterDatum, radius: usize, step: usize) -> Result<Self> {
        if datum.is_finite() {
            return Self::finite(datum);
        }
        let mut table = KLTable::new(datum.label());
        let elements = datum.ball(radius);
        let big = datum.ball(radius + step);
        let cert = Certificate::Stable { radius, step };
        let h_big = compute_h(datum, &mut table, &big);
        let small: BTreeSet<&GroupElement> = elements.iter().collect();
        let h: BTreeMap<_, _> = h_big
            .iter()
            .filter(|((w, u), _)| small.contains(w) && small.contains(u))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let a = compute_a(&h, &elements, &cert);
        let a_big = compute_a(&h_big, &elements, &cert);
        for v in &elements {
            let lhs = a.get(v).map(|x| x.value);
            let rhs = a_big.get(v).map(|x| x.value);
            if lhs != rhs || lhs.is_none() {
                return Err(Error::Inconclusive(format!(
                    "a({v}) changes from {lhs:?} to {rhs:?} between radius {radius} and {}",
                    radius + step
                )));
            }
        }
        Ok(Asymptotic {
            datum: datum.clone(),
            table,
            elements,
            h,
            a,
        })
    }

    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn table(&self) -> &KLTable {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut KLTable {
        &mut self.table
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// `h_{w,u,·}` for a pair in scope.
    pub fn h(&self, w: &GroupElement, u: &GroupElement) -> Result<&BTreeMap<GroupElement, LaurentPoly>> {
        self.h
            .get(&(w.clone(), u.clone()))
            .ok_or_else(|| Error::MissingEntry(format!("h({w}, {u}, ·)")))
    }

    pub fn h_value(&self, w: &GroupElement, u: &GroupElement, v: &GroupElement) -> Result<LaurentPoly> {
        Ok(self.h(w, u)?.get(v).cloned().unwrap_or_default())
    }

    pub fn a_value(&self, v: &GroupElement) -> Result<&AValue> {
        self.a
            .get(v)
            .ok_or_else(|| Error::Inconclusive(format!("a({v}) outside the computed scope")))
    }

    pub fn a(&self, v: &GroupElement) -> Result<u32> {
        Ok(self.a_value(v)?.value)
    }

    pub fn a_table(&self) -> &BTreeMap<GroupElement, AValue> {
        &self.a
    }

    /// Dump lines `a|w|value|flag`.
    pub fn dump_a(&self) -> String {
        self.a
            .iter()
            .map(|(w, v)| format!("a|{w}|{}|{}\n", v.value, v.certificate))
            .collect()
    }

    /// `{w : deg P_{e,w} = l(w) - a(w)}`, each with an involutivity flag.
    pub fn distinguished(&mut self) -> Result<Vec<(GroupElement, bool)>> {
        let d = self.datum.clone();
        let mut out = Vec::new();
        for w in self.elements.clone() {
            if w.omega() != 0 {
                continue;
            }
            let a = self.a(&w)? as i32;
            let p = kl_polynomial(&d, &d.identity(), &w, &mut self.table);
            if p.degree() == Some(w.length() as i32 - a) {
                let inv = d.multiply(&w, &w).is_identity();
                out.push((w, inv));
            }
        }
        Ok(out)
    }

    /// The distinguished involutions, failing if any member is not an
    /// involution.
    pub fn distinguished_involutions(&mut self) -> Result<Vec<GroupElement>> {
        let all = self.distinguished()?;
        if let Some((w, _)) = all.iter().find(|(_, inv)| !inv) {
            return Err(Error::Inconsistent(format!("distinguished element {w} is not an involution")));
        }
        Ok(all.into_iter().map(|(w, _)| w).collect())
    }

    pub fn gamma(
        &self,
        x: &GroupElement,
        y: &GroupElement,
        z: &GroupElement,
        convention: Convention,
    ) -> Result<i64> {
        let a = self.a(z)? as i32;
        let c = self.h_value(x, y, z)?.coeff(-a);
        Ok(match convention {
            Convention::Normalized => c,
            Convention::Literal if a % 2 == 1 => -c,
            Convention::Literal => c,
        })
    }

    /// `γ` over all pairs in scope; `z` ranges over the scope.
    pub fn gamma_table(&self, convention: Convention) -> Result<GammaTable> {
        let mut entries = BTreeMap::new();
        let mut pairs = BTreeSet::new();
        for (w, u) in self.h.keys() {
            pairs.insert((w.clone(), u.clone()));
            for z in self.h[&(w.clone(), u.clone())].keys() {
                if !self.a.contains_key(z) {
                    continue;
                }
                let g = self.gamma(w, u, z, convention)?;
                if g != 0 {
                    entries.insert((w.clone(), u.clone(), z.clone()), g);
                }
            }
        }
        Ok(GammaTable {
            convention,
            pairs,
            entries,
        })
    }

    /// Triples with `γ ≠ 0` whose a-values are not all equal.
    pub fn gamma_level_violations(&self, g: &GammaTable) -> Result<Vec<(GroupElement, GroupElement, GroupElement)>> {
        let mut bad = Vec::new();
        for (x, y, z) in g.entries.keys() {
            let (ax, ay, az) = (self.a(x)?, self.a(y)?, self.a(z)?);
            if ax != ay || ay != az {
                bad.push((x.clone(), y.clone(), z.clone()));
            }
        }
        Ok(bad)
    }

    /// The a-level decomposition `J^{(i)} = span{t_w : a(w) = i}`.
    pub fn j_levels(&self) -> BTreeMap<u32, Vec<GroupElement>> {
        let mut out: BTreeMap<u32, Vec<GroupElement>> = BTreeMap::new();
        for (w, v) in &self.a {
            out.entry(v.value).or_default().push(w.clone());
        }
        out
    }

    /// Basis of `J_k = ⊕_{i ≥ k} J^{(i)}` and the level decomposition,
    /// after checking that every level is a two-sided ideal and that
    /// distinct levels multiply to zero.
    pub fn j_filtration(&self, k: u32, g: &GammaTable) -> Result<(Vec<GroupElement>, BTreeMap<u32, Vec<GroupElement>>)> {
        let levels = self.j_levels();
        for (x, y, z) in g.entries.keys() {
            let (ax, ay, az) = (self.a(x)?, self.a(y)?, self.a(z)?);
            if ax != az || ay != az {
                return Err(Error::NotAnIdeal(format!(
                    "t_{x} t_{y} has a t_{z} term across a-levels {ax}, {ay}, {az}"
                )));
            }
        }
        let basis = levels
            .range(k..)
            .flat_map(|(_, v)| v.iter().cloned())
            .collect();
        Ok((basis, levels))
    }

    /// `φ(C_w) = sum_{d ∈ D, a(d) = a(z)} h_{w,d,z} t_z`.
    pub fn phi(&mut self, w: &GroupElement) -> Result<JElement> {
        let dset = self.distinguished_involutions()?;
        self.phi_with(w, &dset)
    }

    fn phi_with(&self, w: &GroupElement, dset: &[GroupElement]) -> Result<JElement> {
        let mut out = JElement::default();
        for d in dset {
            let ad = self.a(d)?;
            for (z, c) in self.h(w, d)? {
                if self.a.get(z).is_some_and(|v| v.value == ad) {
                    out.add_term(z.clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// `φ` applied to an element given in the `C`-basis.
    pub fn phi_of(&mut self, h: &BTreeMap<GroupElement, LaurentPoly>) -> Result<JElement> {
        let dset = self.distinguished_involutions()?;
        let mut out = JElement::default();
        for (w, c) in h {
            out = out.add(&self.phi_with(w, &dset)?.scale(c));
        }
        Ok(out)
    }

    /// Pairs `(w, u)` with `φ(C_w C_u) ≠ φ(C_w) φ(C_u)` under the given
    /// convention.
    pub fn phi_multiplicativity_failures(&mut self, convention: Convention) -> Result<Vec<(GroupElement, GroupElement)>> {
        let g = self.gamma_table(convention)?;
        let dset = self.distinguished_involutions()?;
        let images: BTreeMap<GroupElement, JElement> = self
            .elements
            .iter()
            .map(|w| Ok((w.clone(), self.phi_with(w, &dset)?)))
            .collect::<Result<_>>()?;
        let mut bad = Vec::new();
        for w in &self.elements {
            for u in &self.elements {
                let mut lhs = JElement::default();
                for (v, c) in self.h(w, u)? {
                    let img = images
                        .get(v)
                        .ok_or_else(|| Error::MissingEntry(format!("φ(C_{v})")))?;
                    lhs = lhs.add(&img.scale(c));
                }
                let rhs = g.j_multiply(&images[w], &images[u])?;
                if lhs != rhs {
                    bad.push((w.clone(), u.clone()));
                }
            }
        }
        Ok(bad)
    }

    /// Signs `ε_d` with `sum ε_d t_d` a two-sided unit of `J` on the scope,
    /// found by exhaustive search.
    pub fn unit_signs(&mut self, g: &GammaTable) -> Result<Option<Vec<(GroupElement, i64)>>> {
        let dset = self.distinguished_involutions()?;
        if dset.len() > 16 {
            return Err(Error::Inconclusive("too many distinguished involutions for sign search".into()));
        }
        for mask in 0u32..(1 << dset.len()) {
            let signs: Vec<(GroupElement, i64)> = dset
                .iter()
                .enumerate()
                .map(|(i, d)| (d.clone(), if mask & (1 << i) != 0 { -1 } else { 1 }))
                .collect();
            let mut unit = JElement::default();
            for (d, e) in &signs {
                unit.add_term(d.clone(), &LaurentPoly::constant(*e));
            }
            let ok = self.elements.iter().all(|x| {
                let tx = JElement::t(x.clone());
                g.j_multiply(&unit, &tx).ok() == Some(tx.clone()) && g.j_multiply(&tx, &unit).ok() == Some(tx)
            });
            if ok {
                return Ok(Some(signs));
            }
        }
        Ok(None)
    }

    /// Matrix of `φ_q` from the `C`-basis (columns) to the `t`-basis (rows),
    /// both indexed by [`Asymptotic::elements`], at `r = root`.
    pub fn phi_q_matrix(&mut self, k: &NumberField, root: &FieldElem) -> Result<Matrix> {
        let n = self.elements.len();
        let mut m = Matrix::zeros(k, n, n);
        let index: BTreeMap<GroupElement, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        let dset = self.distinguished_involutions()?;
        for (j, w) in self.elements.iter().enumerate() {
            for (z, c) in self.phi_with(w, &dset)?.0 {
                m.set(index[&z], j, c.specialize(k, root)?);
            }
        }
        Ok(m)
    }

    /// Matrix of `φ_q` from the `T`-basis to the `t`-basis. Replacing the
    /// square root by its negative multiplies row `z` by `(-1)^{a(z)+l(z)}`,
    /// which is an automorphism of `J`.
    pub fn phi_q_matrix_t_basis(&mut self, k: &NumberField, root: &FieldElem) -> Result<Matrix> {
        let c_to_t = self.c_to_t_matrix(k, root)?;
        let t_to_c = crate::linalg::inverse(k, &c_to_t)
            .ok_or_else(|| Error::Inconsistent("C-to-T change of basis is singular".into()))?;
        Ok(self.phi_q_matrix(k, root)?.mul(k, &t_to_c))
    }

    /// Columns are `C_w` expressed in the `T`-basis, specialized.
    pub fn c_to_t_matrix(&mut self, k: &NumberField, root: &FieldElem) -> Result<Matrix> {
        let n = self.elements.len();
        let d = self.datum.clone();
        let index: BTreeMap<GroupElement, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        let mut m = Matrix::zeros(k, n, n);
        for (j, w) in self.elements.clone().iter().enumerate() {
            let c: HeckeElement = c_basis(&d, w, &mut self.table);
            for (y, p) in c.terms() {
                m.set(index[y], j, p.specialize(k, root)?);
            }
        }
        Ok(m)
    }
}
