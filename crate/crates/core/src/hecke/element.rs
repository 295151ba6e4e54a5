use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::coxeter::{CoxeterDatum, GroupElement};
use crate::error::Result;
use crate::field::{FieldElem, NumberField};
use crate::laurent::LaurentPoly;

/// An element of the generic Hecke algebra in the `T`-basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    coords: BTreeMap<GroupElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `T_x`
    pub fn t(x: GroupElement) -> Self {
        Self::term(x, LaurentPoly::one())
    }

    pub fn term(x: GroupElement, c: LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(x, &c);
        h
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &BTreeMap<GroupElement, LaurentPoly> {
        &self.coords
    }

    pub fn coeff(&self, x: &GroupElement) -> LaurentPoly {
        self.coords.get(x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &LaurentPoly)> {
        self.coords.iter()
    }

    pub fn add_term(&mut self, x: GroupElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.coords.get_mut(&x) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.coords.remove(&x);
                }
            }
            None => {
                self.coords.insert(x, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.coords {
            out.add_term(x.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (x, v) in &self.coords {
            out.add_term(x.clone(), &(v * c));
        }
        out
    }

    /// Coefficientwise evaluation at `r = root`.
    pub fn specialize(
        &self,
        k: &NumberField,
        root: &FieldElem,
    ) -> Result<BTreeMap<GroupElement, FieldElem>> {
        let mut out = BTreeMap::new();
        for (x, c) in &self.coords {
            let v = c.specialize(k, root)?;
            if !k.is_zero(&v) {
                out.insert(x.clone(), v);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coords.iter().map(|(x, c)| format!("({c})T[{x}]")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// `ρ = r^2`
pub fn rho() -> LaurentPoly {
    LaurentPoly::r_pow(2)
}

/// `T_x T_s`
pub fn mul_t_gen_right(d: &CoxeterDatum, h: &HeckeElement, s: usize) -> HeckeElement {
    let rho_minus_one = &rho() - &LaurentPoly::one();
    let mut out = HeckeElement::zero();
    for (x, c) in h.terms() {
        let xs = d.mul_gen_right(x, s);
        if xs.length() > x.length() {
            out.add_term(xs, c);
        } else {
            out.add_term(xs, &(c * &rho()));
            out.add_term(x.clone(), &(c * &rho_minus_one));
        }
    }
    out
}

/// `T_s T_x`
pub fn mul_t_gen_left(d: &CoxeterDatum, s: usize, h: &HeckeElement) -> HeckeElement {
    let rho_minus_one = &rho() - &LaurentPoly::one();
    let mut out = HeckeElement::zero();
    for (x, c) in h.terms() {
        let sx = d.mul_gen_left(s, x);
        if sx.length() > x.length() {
            out.add_term(sx, c);
        } else {
            out.add_term(sx, &(c * &rho()));
            out.add_term(x.clone(), &(c * &rho_minus_one));
        }
    }
    out
}

/// `h T_y`, expanding `T_y` along the reduced word of `y`.
pub fn mul_t_right(d: &CoxeterDatum, h: &HeckeElement, y: &GroupElement) -> HeckeElement {
    let mut acc = h.clone();
    for &s in y.word() {
        acc = mul_t_gen_right(d, &acc, s as usize);
    }
    if y.omega() != 0 {
        let w = d.omega_element(y.omega());
        let mut out = HeckeElement::zero();
        for (x, c) in acc.terms() {
            out.add_term(d.multiply(x, &w), c);
        }
        acc = out;
    }
    acc
}

pub fn t_multiply(d: &CoxeterDatum, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (y, c) in b.terms() {
        out = out.add(&mul_t_right(d, a, y).scale(c));
    }
    out
}

/// `T_s^{-1} = ρ^{-1} T_s + (ρ^{-1} - 1) T_e`
pub fn t_inverse_gen(d: &CoxeterDatum, s: usize) -> HeckeElement {
    let rinv2 = LaurentPoly::r_pow(-2);
    let mut h = HeckeElement::term(d.generator(s), rinv2.clone());
    h.add_term(d.identity(), &(&rinv2 - &LaurentPoly::one()));
    h
}

/// Memoized images `κ(T_y)`.
#[derive(Default)]
pub struct KappaCache {
    memo: HashMap<GroupElement, HeckeElement>,
}

impl KappaCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `κ(T_y) = T_{s_1}^{-1} ... T_{s_k}^{-1} T_ω` for `y = s_1 ... s_k ω`.
    pub fn kappa_t(&mut self, d: &CoxeterDatum, y: &GroupElement) -> HeckeElement {
        if let Some(h) = self.memo.get(y) {
            return h.clone();
        }
        let h = if y.omega() != 0 {
            let w = d.omega_element(y.omega());
            let base = d.multiply(y, &d.inverse(&w));
            let b = self.kappa_t(d, &base);
            mul_t_right(d, &b, &w)
        } else if y.is_identity() {
            HeckeElement::t(d.identity())
        } else {
            let s = *y.word().last().unwrap() as usize;
            let prefix = d.mul_gen_right(y, s);
            let b = self.kappa_t(d, &prefix);
            t_multiply(d, &b, &t_inverse_gen(d, s))
        };
        self.memo.insert(y.clone(), h.clone());
        h
    }

    pub fn kappa(&mut self, d: &CoxeterDatum, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (y, c) in h.terms() {
            out = out.add(&self.kappa_t(d, y).scale(&c.bar()));
        }
        out
    }
}

/// The bar involution `κ`.
pub fn kappa(d: &CoxeterDatum, h: &HeckeElement) -> HeckeElement {
    KappaCache::new().kappa(d, h)
}
