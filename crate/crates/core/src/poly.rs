//! Sparse multivariate polynomials over [`Scalar`] and dense binary forms.
//!
//! Monomials are ordered graded-lexicographically with larger monomials first,
//! so `X0^2 < X0*X1 < X1^2 < X0` in `Ord` terms. The same order fixes the
//! enumeration of multi-indices of a given degree everywhere in the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalars::{FieldSpec, Scalar, ScalarError};
use crate::text::{parse_expr, ExprValue, Leaf, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("points A and B are linearly dependent")]
    DependentLine,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Exponent vector of a monomial in `n + 1` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when componentwise nonnegative.
    pub fn minus(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// All multi-indices of total degree `deg` in `nvars` variables, in
    /// graded-lex order; there are `C(nvars - 1 + deg, nvars - 1)` of them.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<MultiIndex> {
        fn rec(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if i + 1 == cur.len() {
                cur[i] = rem;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for a in (0..=rem).rev() {
                cur[i] = a;
                rec(i + 1, rem - a, cur, out);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(0, deg, &mut vec![0; nvars], &mut out);
        out
    }

    /// Multinomial coefficient `|β|! / ∏ β_i!`.
    pub fn multinomial(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        let mut run = 0u32;
        for &e in &self.0 {
            for j in 1..=e {
                run += 1;
                acc = acc * BigInt::from(run) / BigInt::from(j);
            }
        }
        acc
    }

    /// `P^β = ∏ p_m^{β_m}`.
    pub fn eval_monomial(&self, point: &[Scalar]) -> Scalar {
        let mut acc: Option<Scalar> = None;
        for (e, x) in self.0.iter().zip(point) {
            if *e == 0 {
                continue;
            }
            let p = x.pow(*e);
            acc = Some(match acc {
                None => p,
                Some(a) => &a * &p,
            });
        }
        acc.unwrap_or_else(|| Scalar::one(point[0].field()))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with exact coefficients. No zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    field: Arc<FieldSpec>,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: &Arc<FieldSpec>, nvars: usize) -> Self {
        MultiPoly { nvars, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        p.add_term(MultiIndex::zero(nvars), c);
        p
    }

    pub fn var(field: &Arc<FieldSpec>, nvars: usize, i: usize) -> Self {
        Self::monomial(Scalar::one(field), MultiIndex::unit(nvars, i))
    }

    pub fn monomial(c: Scalar, m: MultiIndex) -> Self {
        let mut p = Self::zero(c.field(), m.nvars());
        p.add_term(m, c);
        p
    }

    /// `Σ coeffs[i] · X_i`.
    pub fn linear_form(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(coeffs[0].field(), n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(field: &Arc<FieldSpec>, nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(&self.field))
    }

    fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Highest total degree of a stored monomial (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// `Some(D)` iff every monomial has degree `D`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(MultiIndex::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        MultiPoly { nvars: self.nvars, field: self.field.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn add(&self, other: &MultiPoly) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MultiPoly) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, field: self.field.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &MultiPoly) -> Self {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut acc: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.plus(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(old) => *old = &*old + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: self.nvars, field: self.field.clone(), terms: acc }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::constant(Scalar::one(&self.field), self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact value at a point with `nvars` coordinates.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::LengthMismatch { expected: self.nvars, got: point.len() });
        }
        let maxe: Vec<u32> = (0..self.nvars).map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .zip(&maxe)
            .map(|(x, &e)| {
                let mut v = vec![Scalar::one(&self.field)];
                for j in 0..e as usize {
                    let next = &v[j] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Scalar::zero(&self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Iterated partial derivative `∂^α`.
    pub fn derive(&self, alpha: &MultiIndex) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let Some(rest) = m.minus(alpha) else { continue };
            let mut k = BigInt::from(1);
            for (&e, &a) in m.0.iter().zip(&alpha.0) {
                for j in 0..a {
                    k *= BigInt::from(e - j);
                }
            }
            out.add_term(rest, c.scale_int(&k));
        }
        out
    }

    /// Substitutes `X_i ↦ images[i]` (all images in a common variable count).
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::LengthMismatch { expected: self.nvars, got: images.len() });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::constant(Scalar::one(&self.field), target), p.clone()]).collect();
        let mut out = MultiPoly::zero(&self.field, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `p(sA + tB)` as a binary form in `(s, t)`.
    pub fn restrict_line(&self, a: &[Scalar], b: &[Scalar]) -> Result<BinaryForm, PolyError> {
        for v in [a, b] {
            if v.len() != self.nvars {
                return Err(PolyError::LengthMismatch { expected: self.nvars, got: v.len() });
            }
        }
        let deg = match self.homogeneous_degree() {
            Some(d) => d,
            None if self.is_zero() => 0,
            None => return Err(PolyError::NotHomogeneous),
        };
        let lines: Vec<BinaryForm> = a.iter().zip(b).map(|(x, y)| BinaryForm::new(vec![x.clone(), y.clone()])).collect();
        let mut cache: Vec<Vec<BinaryForm>> = lines.iter().map(|l| vec![BinaryForm::constant(Scalar::one(&self.field)), l.clone()]).collect();
        let mut acc = BinaryForm::zero(&self.field, deg as usize);
        for (m, c) in &self.terms {
            let mut t = BinaryForm::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&lines[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Divides out the content so that the coefficients are coprime algebraic
    /// integers with a positive leading coefficient (leading in monomial order).
    pub fn normalized(&self) -> Self {
        let coeffs: Vec<Scalar> = self.terms.values().cloned().collect();
        match crate::linalg::content_normalizer(&coeffs) {
            Some(k) => self.scale(&k),
            None => self.clone(),
        }
    }

    /// Canonical text: graded-lex terms, explicit `*` and `^`, variables named
    /// `{prefix}{index}`.
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("{prefix}{j}") } else { format!("{prefix}{j}^{e}") })
                .collect();
            let mono = mono.join("*");
            let (negative, mag) = if !c.is_compound() && c.leading_sign() < 0 { (true, -c) } else { (false, c.clone()) };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coef = if mag.is_compound() { format!("({})", mag) } else { mag.to_string() };
            if mono.is_empty() {
                out.push_str(&coef);
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coef);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the syntax produced by [`MultiPoly::render`]; the scalar symbol
    /// `e` is available over cyclotomic fields.
    pub fn parse(field: &Arc<FieldSpec>, nvars: usize, prefix: &str, src: &str) -> Result<MultiPoly, SyntaxError> {
        parse_expr(src, |leaf| match leaf {
            Leaf::Integer(v) => Ok(MultiPoly::constant(Scalar::from_bigint(field, v), nvars)),
            Leaf::Ident("e") if !field.is_rational() => Ok(MultiPoly::constant(Scalar::root(field), nvars)),
            Leaf::Ident(name) => {
                let idx = name
                    .strip_prefix(prefix)
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| format!("unknown symbol '{}'", name))?;
                if idx >= nvars {
                    return Err(format!("variable '{}' out of range", name));
                }
                Ok(MultiPoly::var(field, nvars, idx))
            }
        })
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("X"))
    }
}

impl ExprValue for MultiPoly {
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn div(&self, other: &Self) -> Result<Self, String> {
        if other.degree().unwrap_or(0) != 0 {
            return Err("division by a non-constant polynomial".to_string());
        }
        let c = other.coeff(&MultiIndex::zero(other.nvars));
        let inv = c.inverse().map_err(|e| e.to_string())?;
        Ok(self.scale(&inv))
    }
    fn pow(&self, e: u32) -> Self {
        MultiPoly::pow(self, e)
    }
}

/// A binary form `Σ c_t s^{D-t} t^t`, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form has at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn zero(field: &Arc<FieldSpec>, degree: usize) -> Self {
        BinaryForm { coeffs: vec![Scalar::zero(field); degree + 1] }
    }

    pub fn constant(c: Scalar) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.coeffs[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "adding binary forms of different degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let field = self.field().clone();
        let mut out = vec![Scalar::zero(&field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BinaryForm { coeffs: out }
    }

    /// Value at `(s, t)`.
    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let d = self.degree();
        let spow = powers(s, d);
        let tpow = powers(t, d);
        let mut acc = Scalar::zero(s.field());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&(c * &spow[d - i]) * &tpow[i]);
            }
        }
        acc
    }

    /// Substitutes `s ↦ s_img`, `t ↦ t_img` (polynomials in a common ring).
    pub fn substitute(&self, s_img: &MultiPoly, t_img: &MultiPoly) -> MultiPoly {
        let d = self.degree();
        let n = s_img.nvars();
        let one = MultiPoly::constant(Scalar::one(self.field()), n);
        let mut sp = vec![one.clone()];
        let mut tp = vec![one];
        for i in 0..d {
            sp.push(sp[i].mul(s_img));
            tp.push(tp[i].mul(t_img));
        }
        let mut acc = MultiPoly::zero(self.field(), n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&sp[d - i].mul(&tp[i]).scale(c));
            }
        }
        acc
    }

    pub fn render(&self) -> String {
        let d = self.degree() as u32;
        let p = MultiPoly::from_terms(
            self.field(),
            2,
            self.coeffs.iter().enumerate().map(|(i, c)| (MultiIndex::new(vec![d - i as u32, i as u32]), c.clone())),
        );
        p.render("st").replace("st0", "s").replace("st1", "t")
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// `[1, x, x^2, ..., x^d]`.
pub fn powers(x: &Scalar, d: usize) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(d + 1);
    v.push(Scalar::one(x.field()));
    for i in 0..d {
        let next = &v[i] * x;
        v.push(next);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<FieldSpec> {
        FieldSpec::rational()
    }

    fn ints(f: &Arc<FieldSpec>, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(f, x)).collect()
    }

    fn p3(src: &str) -> MultiPoly {
        MultiPoly::parse(&q(), 3, "Y", src).unwrap()
    }

    #[test]
    fn graded_lex_enumeration() {
        let m: Vec<Vec<u32>> = MultiIndex::all_of_degree(3, 2).into_iter().map(|m| m.0).collect();
        assert_eq!(m, vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]);
        let mut sorted = MultiIndex::all_of_degree(4, 3);
        sorted.sort();
        assert_eq!(sorted, MultiIndex::all_of_degree(4, 3));
    }

    #[test]
    fn enumeration_counts() {
        fn binom(n: u64, k: u64) -> u64 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for n in 1..=5usize {
            for k in 0..=6u32 {
                assert_eq!(MultiIndex::all_of_degree(n + 1, k).len() as u64, binom(n as u64 + k as u64, n as u64));
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = q();
        assert!(p3("Y0*Y1").evaluate(&ints(&f, &[1, 1, 0])).unwrap().is_one());
        let f3 = FieldSpec::cyclotomic(3).unwrap();
        let p = MultiPoly::parse(&f3, 3, "Y", "Y0 + Y1 + Y2").unwrap();
        let e = Scalar::root(&f3);
        assert!(p.evaluate(&[Scalar::one(&f3), e.clone(), &e * &e]).unwrap().is_zero());
        assert!(matches!(p.evaluate(&ints(&f3, &[1, 2])), Err(PolyError::LengthMismatch { .. })));
        let prod = p3("Y0*Y1*Y2");
        assert!(prod.evaluate(&ints(&f, &[0, 3, 5])).unwrap().is_zero());
    }

    #[test]
    fn derivative_examples() {
        let d = |src: &str, a: Vec<u32>| p3(src).derive(&MultiIndex::new(a)).render("Y");
        assert_eq!(d("Y0^2*Y1", vec![1, 1, 0]), "2*Y0");
        assert_eq!(d("Y0*Y1*Y2", vec![0, 0, 1]), "Y0*Y1");
        assert_eq!(d("3*Y0 - Y2", vec![1, 0, 1]), "0");
    }

    #[test]
    fn line_restriction_examples() {
        let f = q();
        let a = ints(&f, &[1, 0, 0]);
        let b = ints(&f, &[0, 1, 0]);
        assert_eq!(p3("Y0").restrict_line(&a, &b).unwrap().render(), "s");
        assert_eq!(p3("Y0*Y1").restrict_line(&a, &b).unwrap().render(), "s*t");
        let a = ints(&f, &[1, 1, 0]);
        let b = ints(&f, &[1, -1, 0]);
        assert_eq!(p3("Y0^2 + Y1^2").restrict_line(&a, &b).unwrap().render(), "2*s^2 + 2*t^2");
        assert_eq!(p3("Y0^2 + Y1").restrict_line(&a, &b), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn products_and_powers() {
        assert_eq!(p3("(Y0 + Y1)*(Y0 - Y1)").render("Y"), "Y0^2 - Y1^2");
        assert_eq!(p3("Y0 + Y1").pow(2).render("Y"), "Y0^2 + 2*Y0*Y1 + Y1^2");
        assert_eq!(p3("Y0 + Y1").pow(2), p3("Y0^2 + 2*Y0*Y1 + Y1^2"));
    }

    #[test]
    fn render_parse_cyclotomic() {
        let f3 = FieldSpec::cyclotomic(3).unwrap();
        let p = MultiPoly::parse(&f3, 4, "X", "(1-e)*X0^2*X3 - e^2*X1 + 1/2").unwrap();
        let text = p.render("X");
        assert_eq!(text, "(1 - e)*X0^2*X3 + (1 + e)*X1 + 1/2");
        assert_eq!(MultiPoly::parse(&f3, 4, "X", &text).unwrap(), p);
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p3("Y0*Y1 + Y2^2").homogeneous_degree(), Some(2));
        assert_eq!(p3("Y0*Y1 + Y2").homogeneous_degree(), None);
        assert!(p3("0").is_homogeneous());
    }

    #[test]
    fn multinomials() {
        assert_eq!(MultiIndex::new(vec![2, 1, 0]).multinomial(), BigInt::from(3));
        assert_eq!(MultiIndex::new(vec![1, 1, 1]).multinomial(), BigInt::from(6));
        assert_eq!(MultiIndex::new(vec![0, 3, 0]).multinomial(), BigInt::from(1));
    }
}
