//! Laurent polynomials in `r` with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};

/// `sum coeffs[i] * r^(low + i)`. Normalized: no leading or trailing zero
/// coefficients, and the zero polynomial has `low == 0` and no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * r^e`
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `r^e`
    pub fn r_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    /// Builds `sum c_i r^i` from a plain polynomial coefficient list.
    pub fn from_poly(coeffs: &[i64]) -> Self {
        Self::from_coeffs(0, coeffs.to_vec())
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e as i64 - self.low as i64;
        if i < 0 || i >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// Substitutes `r -> r^-1`.
    pub fn bar(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => {
                let mut c = self.coeffs.clone();
                c.reverse();
                LaurentPoly { low: -d, coeffs: c }
            }
        }
    }

    /// Multiplies by `r^e`.
    pub fn shift(&self, e: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_coeffs(
            self.low,
            self.coeffs
                .iter()
                .map(|&x| x.checked_mul(c).expect("coefficient overflow"))
                .collect(),
        )
    }

    /// Terms with exponent in `lo..=hi`.
    pub fn truncate(&self, lo: i32, hi: i32) -> Self {
        let terms: Vec<(i32, i64)> = self.terms().filter(|&(e, _)| e >= lo && e <= hi).collect();
        Self::from_terms(&terms)
    }

    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut acc = Self::zero();
        for &(e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    /// Coefficients `c_0..c_d` when the polynomial has no negative powers.
    pub fn poly_coeffs(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        if self.low < 0 {
            return None;
        }
        let mut v = vec![0; self.low as usize];
        v.extend_from_slice(&self.coeffs);
        Some(v)
    }

    /// Evaluation at `r = root`.
    pub fn specialize(&self, k: &NumberField, root: &FieldElem) -> Result<FieldElem> {
        if k.is_zero(root) {
            return Err(Error::ZeroRoot);
        }
        let mut acc = k.zero();
        for (e, c) in self.terms() {
            let p = k.pow(root, e as i64).ok_or(Error::ZeroRoot)?;
            let t = k.mul(&p, &k.from_int(c));
            k.add_assign(&mut acc, &t);
        }
        Ok(acc)
    }
}

fn combine(a: &LaurentPoly, b: &LaurentPoly, sign: i64) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.scale(sign);
    }
    let low = a.low.min(b.low);
    let high = a.degree().unwrap().max(b.degree().unwrap());
    let coeffs = (low..=high)
        .map(|e| {
            b.coeff(e)
                .checked_mul(sign)
                .and_then(|x| a.coeff(e).checked_add(x))
                .expect("coefficient overflow")
        })
        .collect();
    LaurentPoly::from_coeffs(low, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        combine(self, rhs, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        combine(self, rhs, -1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let p = a.checked_mul(b).expect("coefficient overflow");
                c[i + j] = c[i + j].checked_add(p).expect("coefficient overflow");
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, c)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: Self) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{c}*r^{e}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("malformed Laurent polynomial '{s}'"));
        // split on '+' that is not an exponent or coefficient sign
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if bytes[i] == b'+' && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i + 1;
            }
        }
        terms.push(&s[start..]);
        let mut out = Vec::new();
        let mut last: Option<i32> = None;
        for t in terms {
            let (c, e) = t.split_once("*r^").ok_or_else(bad)?;
            let c: i64 = c.parse().map_err(|_| bad())?;
            let e: i32 = e.parse().map_err(|_| bad())?;
            if c == 0 || last.is_some_and(|l| l >= e) {
                return Err(bad());
            }
            last = Some(e);
            out.push((e, c));
        }
        Ok(Self::from_terms(&out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RatPoly;
    use proptest::prelude::*;

    fn r() -> LaurentPoly {
        LaurentPoly::r_pow(1)
    }

    fn rinv() -> LaurentPoly {
        LaurentPoly::r_pow(-1)
    }

    #[test]
    fn binomial_square() {
        let p = &r() + &rinv();
        let sq = &p * &p;
        assert_eq!(sq, LaurentPoly::from_terms(&[(-2, 1), (0, 2), (2, 1)]));
        assert!((&p * &LaurentPoly::zero()).is_zero());
        let neg_r = LaurentPoly::monomial(-1, 1);
        assert_eq!(&neg_r * &p, LaurentPoly::from_terms(&[(0, -1), (2, -1)]));
    }

    #[test]
    fn bar_examples() {
        let p = LaurentPoly::from_terms(&[(1, 1), (-3, 2)]);
        assert_eq!(p.bar(), LaurentPoly::from_terms(&[(-1, 1), (3, 2)]));
        assert_eq!(LaurentPoly::constant(5).bar(), LaurentPoly::constant(5));
    }

    #[test]
    fn text_format() {
        let p = &r() + &rinv();
        assert_eq!(p.to_string(), "1*r^-1+1*r^1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let q = LaurentPoly::from_terms(&[(-2, -3), (0, 1), (4, -1)]);
        assert_eq!(q.to_string(), "-3*r^-2+1*r^0+-1*r^4");
        assert_eq!(q.to_string().parse::<LaurentPoly>().unwrap(), q);
        assert!("1*r^2+1*r^1".parse::<LaurentPoly>().is_err());
        assert!("0*r^1".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn specialization() {
        let sqrt2 = NumberField::new(RatPoly::from_ints(&[-2, 0, 1])).unwrap();
        let root = sqrt2.generator();
        let v = LaurentPoly::r_pow(2).specialize(&sqrt2, &root).unwrap();
        assert_eq!(v, sqrt2.from_int(2));
        let gauss = NumberField::new(RatPoly::from_ints(&[1, 0, 1])).unwrap();
        let i = gauss.generator();
        let v = (&r() + &rinv()).specialize(&gauss, &i).unwrap();
        assert!(gauss.is_zero(&v));
        assert!(gauss.is_one(&LaurentPoly::one().specialize(&gauss, &i).unwrap()));
        assert_eq!(
            LaurentPoly::one().specialize(&gauss, &gauss.zero()),
            Err(Error::ZeroRoot)
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-5i32..5, prop::collection::vec(-20i64..20, 0..6))
            .prop_map(|(low, c)| LaurentPoly::from_coeffs(low, c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_involutive_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!(a.bar().constant_term(), a.constant_term());
        }

        #[test]
        fn valuation_and_degree_add(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.valuation().unwrap(), a.valuation().unwrap() + b.valuation().unwrap());
            prop_assert_eq!(p.degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
        }

        #[test]
        fn specialize_bar_is_inverse_root(a in arb_poly(), n in 1i64..6, d in 1i64..6) {
            let k = NumberField::rationals();
            let root = k.from_rational(crate::field::rat(n, d));
            let lhs = a.bar().specialize(&k, &root).unwrap();
            let rhs = a.specialize(&k, &k.inv(&root).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
