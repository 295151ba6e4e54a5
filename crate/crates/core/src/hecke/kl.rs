use std::collections::{BTreeMap, HashMap};

use crate::coxeter::{enumerate_interval, CoxeterDatum, GroupElement};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

use super::element::{mul_t_gen_left, mul_t_right, t_multiply, HeckeElement, KappaCache};

/// Kazhdan-Lusztig polynomials `P_{y,w}` (polynomials in `r`), stored by
/// column `w ∈ W`. Each stored column holds every `y ≤ w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KLTable {
    label: String,
    columns: HashMap<GroupElement, BTreeMap<GroupElement, LaurentPoly>>,
}

fn strip_omega(x: &GroupElement) -> GroupElement {
    GroupElement {
        word: x.word.clone(),
        omega: 0,
    }
}

impl KLTable {
    pub fn new(label: &str) -> Self {
        KLTable {
            label: label.to_string(),
            columns: HashMap::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, w: &GroupElement) -> Option<&BTreeMap<GroupElement, LaurentPoly>> {
        self.columns.get(w)
    }

    pub(crate) fn insert_column(&mut self, w: GroupElement, col: BTreeMap<GroupElement, LaurentPoly>) {
        self.columns.insert(w, col);
    }

    /// All stored `(y, w, P_{y,w})`, ordered by `w` then `y`.
    pub fn entries(&self) -> Vec<(&GroupElement, &GroupElement, &LaurentPoly)> {
        let mut ws: Vec<&GroupElement> = self.columns.keys().collect();
        ws.sort();
        ws.into_iter()
            .flat_map(|w| self.columns[w].iter().map(move |(y, p)| (y, w, p)))
            .collect()
    }
}

/// Coefficient of `r^(l(v)-l(z)-1)` in `P_{z,v}`.
pub fn mu_coefficient(z: &GroupElement, v: &GroupElement, p: &LaurentPoly) -> i64 {
    let e = v.length() as i32 - z.length() as i32 - 1;
    if e < 0 {
        0
    } else {
        p.coeff(e)
    }
}

/// `C_s X = r^{-1}(X + T_s X)`
fn c_gen_left(d: &CoxeterDatum, s: usize, h: &HeckeElement) -> HeckeElement {
    h.add(&mul_t_gen_left(d, s, h)).scale(&LaurentPoly::r_pow(-1))
}

fn column_to_c(w: &GroupElement, col: &BTreeMap<GroupElement, LaurentPoly>) -> HeckeElement {
    let shift = -(w.length() as i32);
    let mut h = HeckeElement::zero();
    for (y, p) in col {
        h.add_term(y.clone(), &p.shift(shift));
    }
    h
}

/// Computes (and memoizes) the column of `w ∈ W` by the left recursion
/// `C_s C_v = C_{sv} + sum_{z < v, sz < z} μ(z,v) C_z`.
pub fn kl_column<'t>(
    d: &CoxeterDatum,
    table: &'t mut KLTable,
    w: &GroupElement,
) -> &'t BTreeMap<GroupElement, LaurentPoly> {
    let w = strip_omega(w);
    if !table.columns.contains_key(&w) {
        let col = compute_column(d, table, &w);
        table.columns.insert(w.clone(), col);
    }
    &table.columns[&w]
}

fn compute_column(
    d: &CoxeterDatum,
    table: &mut KLTable,
    w: &GroupElement,
) -> BTreeMap<GroupElement, LaurentPoly> {
    if w.is_identity() {
        return BTreeMap::from([(w.clone(), LaurentPoly::one())]);
    }
    let s = w.word[0] as usize;
    let v = d.mul_gen_left(s, w);
    let col_v = kl_column(d, table, &v).clone();
    let mut x = c_gen_left(d, s, &column_to_c(&v, &col_v));
    for (z, p) in &col_v {
        if z == &v || !d.is_left_descent(s, z) {
            continue;
        }
        let m = mu_coefficient(z, &v, p);
        if m != 0 {
            let col_z = kl_column(d, table, z).clone();
            x = x.sub(&column_to_c(z, &col_z).scale(&LaurentPoly::constant(m)));
        }
    }
    let lw = w.length() as i32;
    x.terms()
        .map(|(y, c)| {
            let p = c.shift(lw);
            assert!(
                p.valuation().unwrap_or(0) >= 0,
                "KL recursion produced negative powers at ({y}, {w})"
            );
            (y.clone(), p)
        })
        .collect()
}

/// `P_{y,w}`; zero unless `y ≤ w`.
pub fn kl_polynomial(
    d: &CoxeterDatum,
    y: &GroupElement,
    w: &GroupElement,
    table: &mut KLTable,
) -> LaurentPoly {
    if y.omega() != w.omega() {
        return LaurentPoly::zero();
    }
    kl_column(d, table, w)
        .get(&strip_omega(y))
        .cloned()
        .unwrap_or_default()
}

/// `C_w = r^{-l(w)} sum_{y ≤ w} P_{y,w} T_y` in the `T`-basis; for `w ω`
/// this is `C_w T_ω`.
pub fn c_basis(d: &CoxeterDatum, w: &GroupElement, table: &mut KLTable) -> HeckeElement {
    let base = strip_omega(w);
    let col = kl_column(d, table, &base).clone();
    let c = column_to_c(&base, &col);
    if w.omega() == 0 {
        c
    } else {
        mul_t_right(d, &c, &d.omega_element(w.omega()))
    }
}

/// Expands an element given in the `T`-basis in the `C`-basis by peeling
/// off maximal-length terms.
pub fn to_c_basis(
    d: &CoxeterDatum,
    h: &HeckeElement,
    table: &mut KLTable,
) -> BTreeMap<GroupElement, LaurentPoly> {
    let mut rest = h.clone();
    let mut out = BTreeMap::new();
    while let Some((v, c)) = rest.coords().iter().next_back().map(|(v, c)| (v.clone(), c.clone())) {
        let coeff = c.shift(v.length() as i32);
        rest = rest.sub(&c_basis(d, &v, table).scale(&coeff));
        out.insert(v, coeff);
    }
    out
}

/// `h_{w,u,v}` with `C_w C_u = sum_v h_{w,u,v} C_v`.
pub fn h_constants(
    d: &CoxeterDatum,
    w: &GroupElement,
    u: &GroupElement,
    table: &mut KLTable,
) -> BTreeMap<GroupElement, LaurentPoly> {
    let cw = c_basis(d, w, table);
    let cu = c_basis(d, u, table);
    to_c_basis(d, &t_multiply(d, &cw, &cu), table)
}

/// Default bound on Bruhat interval sizes for the bar-invariance solve.
pub const DEFAULT_INTERVAL_BOUND: usize = 5000;

/// All `P_{y,w}` obtained directly from `κ(C_w) = C_w` and the degree
/// bounds, by solving the unitriangular system top-down.
pub fn solve_kl_by_bar(
    d: &CoxeterDatum,
    w: &GroupElement,
    bound: usize,
) -> Result<BTreeMap<GroupElement, LaurentPoly>> {
    let base = strip_omega(w);
    let interval = enumerate_interval(d, &base);
    if interval.len() > bound {
        return Err(Error::IntervalTooLarge {
            size: interval.len(),
            bound,
        });
    }
    let mut kc = KappaCache::new();
    let lw = base.length() as i32;
    let mut order: Vec<GroupElement> = interval.into_iter().collect();
    order.sort_by(|a, b| b.length().cmp(&a.length()).then_with(|| a.cmp(b)));
    let mut solved: BTreeMap<GroupElement, LaurentPoly> = BTreeMap::new();
    let mut kappas: Vec<(LaurentPoly, HeckeElement)> = Vec::new();
    for x in order {
        let p = if x == base {
            LaurentPoly::one()
        } else {
            let mut rhs = LaurentPoly::zero();
            for (pb, k) in &kappas {
                let c = k.coeff(&x);
                if !c.is_zero() {
                    rhs = &rhs + &(pb * &c);
                }
            }
            let rhs = rhs.shift(2 * lw);
            let dd = lw - x.length() as i32;
            let low = rhs.truncate(i32::MIN, dd - 1);
            let high = rhs.truncate(dd + 1, i32::MAX);
            let expect_high = -&low.bar().shift(2 * dd);
            if rhs.coeff(dd) != 0
                || low.valuation().is_some_and(|v| v < 0)
                || high.degree().is_some_and(|e| e > 2 * dd)
                || high != expect_high
            {
                return Err(Error::Inconsistent(format!(
                    "bar-invariance system has no solution at ({x}, {base})"
                )));
            }
            low
        };
        kappas.push((p.bar(), kc.kappa_t(d, &x)));
        solved.insert(x, p);
    }
    Ok(solved)
}
