use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::spectrum::{is_weakly_spectrum_preserving, Filtration, WeakReport};
use super::{AlgebraMorphism, FinDimAlgebra};
use crate::asymptotic::{Asymptotic, Convention};
use crate::coxeter::{CoxeterDatum, GroupElement};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, FieldElem, NumberField, RatPoly, Rational};
use crate::hecke::{t_multiply, HeckeElement};
use crate::linalg::Subspace;

/// A value of `q`: a nonzero rational, a primitive `k`-th root of unity, or
/// the generic parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSpec {
    Rational(Rational),
    RootOfUnity(u32),
    Generic,
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            QSpec::Rational(r) => write!(f, "{}", format_rational(r)),
            QSpec::RootOfUnity(k) => write!(f, "root-of-unity:{k}"),
            QSpec::Generic => write!(f, "generic"),
        }
    }
}

impl FromStr for QSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "generic" {
            return Ok(QSpec::Generic);
        }
        if let Some(k) = s.strip_prefix("root-of-unity:") {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad root of unity order '{k}'")))?;
            if k == 0 {
                return Err(Error::Parse("root of unity order must be positive".into()));
            }
            return Ok(QSpec::RootOfUnity(k));
        }
        let r = parse_rational(s)?;
        if r.is_zero() {
            return Err(Error::ZeroRoot);
        }
        Ok(QSpec::Rational(r))
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// A number field containing a square root `r` of `q`, and that root.
pub fn q_field(q: &QSpec) -> Result<(NumberField, FieldElem)> {
    match q {
        QSpec::Generic => Err(Error::InvalidInput(
            "the generic parameter has no finite-dimensional specialization".into(),
        )),
        QSpec::Rational(r) => {
            if r.is_zero() {
                return Err(Error::ZeroRoot);
            }
            if let Some(s) = rational_sqrt(r) {
                let k = NumberField::rationals();
                let root = k.from_rational(s);
                return Ok((k, root));
            }
            let k = NumberField::new(RatPoly::new(vec![-r.clone(), Rational::zero(), Rational::from_integer(1.into())]))?;
            let root = k.generator();
            Ok((k, root))
        }
        QSpec::RootOfUnity(1) => {
            let k = NumberField::rationals();
            let one = k.one();
            Ok((k, one))
        }
        QSpec::RootOfUnity(n) if n % 2 == 1 => {
            let k = NumberField::cyclotomic(*n);
            let root = k.pow(&k.generator(), i64::from(n.div_ceil(2))).unwrap();
            Ok((k, root))
        }
        QSpec::RootOfUnity(n) => {
            let k = NumberField::cyclotomic(2 * n);
            let root = k.generator();
            Ok((k, root))
        }
    }
}

/// `H_q` in the `C`-basis, `J` in the `t`-basis and `φ_q`, all indexed by
/// the elements of a finite Coxeter group in ShortLex order.
#[derive(Clone, Debug)]
pub struct HeckeFinDim {
    pub elements: Vec<GroupElement>,
    pub a_values: Vec<u32>,
    pub hecke: FinDimAlgebra,
    pub j: FinDimAlgebra,
    pub phi: AlgebraMorphism,
}

pub fn hecke_as_findim(
    asy: &mut Asymptotic,
    k: &NumberField,
    root: &FieldElem,
    convention: Convention,
) -> Result<HeckeFinDim> {
    if k.is_zero(root) {
        return Err(Error::ZeroRoot);
    }
    let elements = asy.elements().to_vec();
    let index: BTreeMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let label = asy.datum().label().to_string();
    let n = elements.len();
    let mut h_entries = Vec::new();
    for (i, w) in elements.iter().enumerate() {
        for (j, u) in elements.iter().enumerate() {
            for (v, p) in asy.h(w, u)? {
                let c = p.specialize(k, root)?;
                if !k.is_zero(&c) {
                    h_entries.push((i, j, index[v], c));
                }
            }
        }
    }
    let hecke = FinDimAlgebra::from_entries(&format!("H({label})"), k.clone(), n, &h_entries)?;
    let g = asy.gamma_table(convention)?;
    let j_entries: Vec<_> = g
        .entries
        .iter()
        .map(|((x, y, z), v)| (index[x], index[y], index[z], k.from_int(*v)))
        .collect();
    let j = FinDimAlgebra::from_entries(&format!("J({label})"), k.clone(), n, &j_entries)?;
    let m = asy.phi_q_matrix(k, root)?;
    let phi = AlgebraMorphism::new(hecke.clone(), j.clone(), m)?;
    let a_values = elements.iter().map(|w| asy.a(w)).collect::<Result<_>>()?;
    Ok(HeckeFinDim {
        elements,
        a_values,
        hecke,
        j,
        phi,
    })
}

/// `H_q` in the `T`-basis.
pub fn hecke_t_basis(d: &CoxeterDatum, k: &NumberField, root: &FieldElem) -> Result<FinDimAlgebra> {
    let elements = d.elements()?;
    let index: BTreeMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut entries = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let p = t_multiply(d, &HeckeElement::t(x.clone()), &HeckeElement::t(y.clone()));
            for (z, c) in p.specialize(k, root)? {
                if !k.is_zero(&c) {
                    entries.push((i, j, index[&z], c));
                }
            }
        }
    }
    FinDimAlgebra::from_entries(&format!("HT({})", d.label()), k.clone(), elements.len(), &entries)
}

/// The group algebra of a finite Coxeter group, basis in ShortLex order.
pub fn group_algebra(d: &CoxeterDatum, k: &NumberField) -> Result<FinDimAlgebra> {
    let elements = d.elements()?;
    let index: BTreeMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut entries = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            entries.push((i, j, index[&d.multiply(x, y)], k.one()));
        }
    }
    FinDimAlgebra::from_entries(&format!("k[{}]", d.label()), k.clone(), elements.len(), &entries)
}

/// The a-level filtration `J_k = span{t_w : a(w) ≥ a_{m-k+1}}` of `J` and
/// its preimage `L_k = φ_q^{-1}(J_k)` (with `L_0 = 0`).
pub fn cell_filtrations(hf: &HeckeFinDim) -> Result<(Filtration, Filtration)> {
    let k = hf.j.field();
    let n = hf.elements.len();
    let mut levels: Vec<u32> = hf.a_values.clone();
    levels.sort_unstable();
    levels.dedup();
    let mut fj = vec![Subspace::zero(n)];
    for &a in levels.iter().rev() {
        let vs = (0..n).filter(|&i| hf.a_values[i] >= a).map(|i| hf.j.basis(i)).collect();
        fj.push(Subspace::span(k, n, vs));
    }
    let mut fl = vec![Subspace::zero(n)];
    for f in &fj[1..] {
        fl.push(hf.phi.preimage(f));
    }
    Ok((Filtration::new(&hf.hecke, fl)?, Filtration::new(&hf.j, fj)?))
}

/// Weak spectrum preservation of `φ_q : H_q → J` for the a-level
/// filtration.
pub fn spec_check(asy: &mut Asymptotic, q: &QSpec, seed: u64) -> Result<WeakReport> {
    let (k, root) = q_field(q)?;
    let hf = hecke_as_findim(asy, &k, &root, Convention::Normalized)?;
    let (fl, fj) = cell_filtrations(&hf)?;
    is_weakly_spectrum_preserving(&hf.phi, &fl, &fj, seed)
}
