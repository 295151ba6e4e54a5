//! Exact number fields `Q[x]/(m(x))` and dense rational polynomials.
//!
//! Every scalar the library touches after specialization lives in one of
//! these fields. Elements are plain coefficient vectors in the power basis
//! `1, a, a^2, ..`; all operations that need the modulus go through the
//! owning [`NumberField`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense polynomial over Q, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly(Vec<Rational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly(Vec::new())
    }

    pub fn one() -> Self {
        RatPoly(vec![Rational::one()])
    }

    pub fn x() -> Self {
        RatPoly(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, b) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Rational roots, via the rational root theorem on the integer-scaled
    /// polynomial. Only used for small-degree moduli.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        while p.0.first().is_some_and(|c| c.is_zero()) {
            if !roots.contains(&Rational::zero()) {
                roots.push(Rational::zero());
            }
            p = RatPoly::new(p.0[1..].to_vec());
        }
        let den = p
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.0.iter().map(|c| (c * &den).to_integer()).collect();
        let (Some(c0), Some(cn)) = (ints.first(), ints.last()) else {
            return roots;
        };
        let ps = small_divisors(&c0.abs());
        let qs = small_divisors(&cn.abs());
        for a in &ps {
            for b in &qs {
                for sign in [1i64, -1] {
                    let cand = Rational::new(a * BigInt::from(sign), b.clone());
                    if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let mag = c.abs();
            let sign = if c.is_negative() {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            out.push_str(sign);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Parses `x^2-x+1`, `3/2*x+1`, `-x^3+2` style input in the variable `var`.
    pub fn parse_in(text: &str, var: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse(format!("empty polynomial in {var}")));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<Rational> = Vec::new();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, exp) = if let Some(pos) = body.find(var) {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    Rational::one()
                } else {
                    parse_rational(c)?
                };
                let rest = &body[pos + var.len()..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad exponent in term '{t}'")))?
                };
                (c, e)
            } else {
                (parse_rational(body)?, 0)
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, Rational::zero());
            }
            coeffs[exp] += if neg { -coef } else { coef };
        }
        Ok(Self::new(coeffs))
    }
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().filter(|&v| v > 0 && v < 1 << 40);
    let Some(n) = n else {
        return vec![BigInt::one()];
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `num/den` always, so output is bit-stable.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// The `n`-th cyclotomic polynomial over the integers.
pub fn cyclotomic(n: u32) -> RatPoly {
    assert!(n > 0);
    let mut xn = vec![Rational::zero(); n as usize + 1];
    xn[0] = -Rational::one();
    xn[n as usize] = Rational::one();
    let mut p = RatPoly::new(xn);
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    p
}

/// Element of a number field in the power basis of its generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(Vec<Rational>);

impl FieldElem {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

/// `Q[x]/(m(x))` for a monic irreducible `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    minpoly: RatPoly,
    name: String,
}

impl NumberField {
    pub fn rationals() -> Self {
        NumberField {
            minpoly: RatPoly::from_ints(&[0, 1]),
            name: "Q".into(),
        }
    }

    /// Builds the field defined by `minpoly`. Irreducibility is verified for
    /// degree <= 3 (no rational roots); higher degrees must come from a
    /// trusted constructor such as [`NumberField::cyclotomic`].
    pub fn new(minpoly: RatPoly) -> Result<Self> {
        let Some(d) = minpoly.degree() else {
            return Err(Error::InvalidInput("zero minimal polynomial".into()));
        };
        if d == 0 {
            return Err(Error::InvalidInput("constant minimal polynomial".into()));
        }
        let m = minpoly.monic();
        if d > 1 && d <= 3 && !m.rational_roots().is_empty() {
            return Err(Error::InvalidInput(format!(
                "minimal polynomial {} is reducible over Q",
                m.display_in("x")
            )));
        }
        if d == 1 {
            return Ok(Self::rationals());
        }
        let name = m.display_in("x");
        Ok(NumberField { minpoly: m, name })
    }

    /// `Q(zeta_n)`, generator a primitive `n`-th root of unity.
    pub fn cyclotomic(n: u32) -> Self {
        let m = cyclotomic(n);
        if m.degree() == Some(1) {
            return Self::rationals();
        }
        NumberField {
            name: m.display_in("x"),
            minpoly: m,
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn minpoly(&self) -> &RatPoly {
        &self.minpoly
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// `Q` or the minimal polynomial in `x`; the algebra file header form.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![Rational::zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElem {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_rational(int(n))
    }

    pub fn from_rational(&self, r: Rational) -> FieldElem {
        let mut v = vec![Rational::zero(); self.degree()];
        v[0] = r;
        FieldElem(v)
    }

    /// The class of `x`, i.e. the chosen root of the minimal polynomial.
    pub fn generator(&self) -> FieldElem {
        if self.is_rational() {
            // the root of x - c
            return self.from_rational(-self.minpoly.coeffs()[0].clone());
        }
        let mut v = vec![Rational::zero(); self.degree()];
        v[1] = Rational::one();
        FieldElem(v)
    }

    pub fn from_coords(&self, mut coords: Vec<Rational>) -> Result<FieldElem> {
        if coords.len() > self.degree() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for a degree {} field",
                coords.len(),
                self.degree()
            )));
        }
        coords.resize(self.degree(), Rational::zero());
        Ok(FieldElem(coords))
    }

    pub fn from_poly(&self, p: &RatPoly) -> FieldElem {
        if self.is_rational() {
            let g = self.generator().0[0].clone();
            return self.from_rational(p.eval(&g));
        }
        let (_, r) = p.div_rem(&self.minpoly);
        let mut v = r.0;
        v.resize(self.degree(), Rational::zero());
        FieldElem(v)
    }

    fn to_poly(&self, a: &FieldElem) -> RatPoly {
        RatPoly::new(a.0.clone())
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        a.0[0].is_one() && a.0[1..].iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|x| -x).collect())
    }

    pub fn add_assign(&self, a: &mut FieldElem, b: &FieldElem) {
        for (x, y) in a.0.iter_mut().zip(&b.0) {
            *x += y;
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let d = self.degree();
        if d == 1 {
            return FieldElem(vec![&a.0[0] * &b.0[0]]);
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        // x^d = -(m_0 + m_1 x + .. + m_{d-1} x^{d-1}) for monic m
        let m = self.minpoly.coeffs();
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                prod[k - d + j] -= &c * &m[j];
            }
        }
        prod.truncate(d);
        FieldElem(prod)
    }

    pub fn scale(&self, a: &FieldElem, r: &Rational) -> FieldElem {
        FieldElem(a.0.iter().map(|x| x * r).collect())
    }

    /// `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(FieldElem(vec![Rational::one() / &a.0[0]]));
        }
        // extended Euclid: u*a + v*m = 1
        let (mut r0, mut r1) = (self.minpoly.clone(), self.to_poly(a));
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since m is irreducible
        let c = r0.coeffs()[0].clone();
        Some(self.from_poly(&s0.scale(&(Rational::one() / c))))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &FieldElem, e: i64) -> Option<FieldElem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        Some(acc)
    }

    /// The element as a rational number, if it lies in Q.
    pub fn to_rational(&self, a: &FieldElem) -> Option<Rational> {
        a.0[1..].iter().all(|c| c.is_zero()).then(|| a.0[0].clone())
    }

    /// Text form: `c0` over Q, otherwise comma-separated power-basis
    /// coordinates, each `num/den`.
    pub fn format(&self, a: &FieldElem) -> String {
        a.0.iter().map(format_rational).collect::<Vec<_>>().join(",")
    }

    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        let coords = s
            .split(',')
            .map(|c| parse_rational(c.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.from_coords(coords)
    }

    /// Human-readable rendering in the generator `a`.
    pub fn pretty(&self, a: &FieldElem) -> String {
        if self.is_rational() {
            return a.0[0].to_string();
        }
        RatPoly::new(a.0.clone()).display_in("a")
    }

    /// Approximate complex values of the generator under every embedding.
    pub fn embeddings(&self) -> Vec<Complex64> {
        let c: Vec<Complex64> = self
            .minpoly
            .coeffs()
            .iter()
            .map(|r| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        complex_roots(&c)
    }

    pub fn embed(&self, a: &FieldElem, alpha: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in a.0.iter().rev() {
            acc = acc * alpha + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Evaluates a polynomial with coefficients in this field.
    pub fn eval_poly(&self, poly: &[FieldElem], x: &FieldElem) -> FieldElem {
        poly.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// All roots in this field of a polynomial with coefficients in the
    /// field (ascending). Candidates are located numerically under every
    /// embedding and then verified exactly, so every returned root is exact;
    /// a root whose coordinates have very large denominators may be missed,
    /// which callers surface as a splitting failure rather than a wrong
    /// answer.
    pub fn roots(&self, poly: &[FieldElem]) -> Vec<FieldElem> {
        let mut p: Vec<FieldElem> = poly.to_vec();
        while p.last().is_some_and(|c| self.is_zero(c)) {
            p.pop();
        }
        if p.len() < 2 {
            return Vec::new();
        }
        let embs = self.embeddings();
        let d = self.degree();
        let per_emb: Vec<Vec<Complex64>> = embs
            .iter()
            .map(|&al| {
                let c: Vec<Complex64> = p.iter().map(|x| self.embed(x, al)).collect();
                complex_roots(&c)
            })
            .collect();
        let mut found: Vec<FieldElem> = Vec::new();
        let n = p.len() - 1;
        let total = n.pow(d as u32);
        for idx in 0..total {
            let mut choice = Vec::with_capacity(d);
            let mut t = idx;
            for _ in 0..d {
                choice.push(t % n);
                t /= n;
            }
            let targets: Vec<Complex64> = (0..d).map(|k| per_emb[k][choice[k]]).collect();
            let Some(coords) = solve_vandermonde(&embs, &targets) else {
                continue;
            };
            let mut rc = Vec::with_capacity(d);
            let mut ok = true;
            for c in coords {
                if c.im.abs() > 1e-6 * (1.0 + c.re.abs()) {
                    ok = false;
                    break;
                }
                match approx_rational(c.re, 1 << 20) {
                    Some(r) => rc.push(r),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let cand = FieldElem(rc);
            if !found.contains(&cand) && self.is_zero(&self.eval_poly(&p, &cand)) {
                found.push(cand);
            }
        }
        found.sort();
        found
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for NumberField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(Self::rationals());
        }
        Self::new(RatPoly::parse_in(s, "x")?)
    }
}

fn solve_vandermonde(nodes: &[Complex64], targets: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = nodes.len();
    let mut m: Vec<Vec<Complex64>> = nodes
        .iter()
        .zip(targets)
        .map(|(&a, &t)| {
            let mut row: Vec<Complex64> = (0..d).map(|j| a.powu(j as u32)).collect();
            row.push(t);
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))?;
        if m[piv][col].norm() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        for i in 0..d {
            if i != col {
                let f = m[i][col] / m[col][col];
                for j in col..=d {
                    let v = m[col][j];
                    m[i][j] -= f * v;
                }
            }
        }
    }
    Some((0..d).map(|i| m[i][d] / m[i][i]).collect())
}

/// Continued-fraction approximation with bounded denominator; `None` when
/// the best candidate is not within tolerance.
fn approx_rational(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if (h1 as f64 / k1 as f64 - x).abs() < 1e-9 * (1.0 + x.abs()) || frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 || (h1 as f64 / k1 as f64 - x).abs() > 1e-6 * (1.0 + x.abs()) {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Durand-Kerner iteration followed by Newton polishing.
pub(crate) fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &k| a * z + k);
    let bound = 1.0 + monic[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let eval_d = |z: Complex64| deriv.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &k| a * z + k);
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let d = eval_d(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), RatPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), RatPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), RatPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), RatPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn gaussian_inverse() {
        let k = NumberField::cyclotomic(4);
        let i = k.generator();
        assert!(k.is_zero(&k.add(&k.mul(&i, &i), &k.one())));
        let a = k.add(&k.from_int(3), &k.scale(&i, &int(2)));
        let ai = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &ai)));
    }

    #[test]
    fn roots_over_quadratic_fields() {
        // (x - sqrt2)(x + 3) over Q(sqrt 2)
        let k: NumberField = "x^2-2".parse().unwrap();
        let s = k.generator();
        let poly = vec![
            k.neg(&k.scale(&s, &int(3))),
            k.sub(&k.from_int(3), &s),
            k.one(),
        ];
        let roots = k.roots(&poly);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&s.clone()) || roots.contains(&k.neg(&k.neg(&s))));
        assert!(roots.contains(&k.from_int(-3)));
        // x^2 - 3 has no root in Q(sqrt 2)
        let poly = vec![k.from_int(-3), k.zero(), k.one()];
        assert!(k.roots(&poly).is_empty());
        // x^2 + x + 1 splits in Q(zeta_6)
        let z = NumberField::cyclotomic(6);
        let poly = vec![z.one(), z.one(), z.one()];
        assert_eq!(z.roots(&poly).len(), 2);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!("x^2-4".parse::<NumberField>().is_err());
        assert!("x^2+1".parse::<NumberField>().is_ok());
    }

    #[test]
    fn poly_text_roundtrip() {
        let p = RatPoly::parse_in("x^2-x+1", "x").unwrap();
        assert_eq!(p, RatPoly::from_ints(&[1, -1, 1]));
        assert_eq!(p.display_in("x"), "x^2-x+1");
        let q = RatPoly::parse_in("3/2*x^3-2", "x").unwrap();
        assert_eq!(RatPoly::parse_in(&q.display_in("x"), "x").unwrap(), q);
    }
}
