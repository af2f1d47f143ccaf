//! Exact arithmetic in the rationals and in cyclotomic fields `Q(ζ_m)`.
//!
//! An element of `Q(ζ_m)` is stored as an integer polynomial in the primitive
//! root, reduced modulo the `m`-th cyclotomic polynomial, over a single positive
//! denominator. The representation is canonical, so structural equality is
//! value equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::text::{parse_expr, ExprValue, Leaf, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u32, u32),
    #[error("unsupported conductor {0}")]
    UnsupportedConductor(u32),
}

/// The field `Q(ζ_m)`, given by its conductor and the cyclotomic modulus.
#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    conductor: u32,
    /// Coefficients of Φ_m, lowest degree first. Monic.
    modulus: Vec<BigInt>,
    /// `powers[e]` is `x^e mod Φ_m` for `0 <= e < m`.
    powers: Vec<Vec<BigInt>>,
    /// Exponents `j` of the nontrivial Galois automorphisms `ζ ↦ ζ^j`.
    conjugates: Vec<u32>,
}

impl FieldSpec {
    /// Returns the shared field descriptor for conductor `m` (`m = 1` is `Q`).
    pub fn cyclotomic(m: u32) -> Result<Arc<FieldSpec>, ScalarError> {
        if m == 0 || m > 1000 {
            return Err(ScalarError::UnsupportedConductor(m));
        }
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldSpec>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        if let Some(f) = guard.get(&m) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(m));
        guard.insert(m, field.clone());
        Ok(field)
    }

    pub fn rational() -> Arc<FieldSpec> {
        Self::cyclotomic(1).expect("conductor 1 is always supported")
    }

    fn build(m: u32) -> FieldSpec {
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce
            let mut next = vec![BigInt::zero(); degree + 1];
            next[1..].clone_from_slice(&cur);
            reduce_in_place(&mut next, &modulus);
            next.truncate(degree);
            cur = next;
        }
        let conjugates = (2..m).filter(|j| j.gcd(&m) == 1).collect();
        FieldSpec { conductor: m, modulus, powers, conjugates }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Extension degree φ(m).
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }
}

/// Computes Φ_m by dividing `x^m - 1` by Φ_d for every proper divisor `d`.
fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    let mut memo: HashMap<u32, Vec<BigInt>> = HashMap::new();
    fn go(m: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = -BigInt::one();
        num[m as usize] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                let den = go(d, memo);
                num = exact_div_monic(&num, &den);
            }
        }
        memo.insert(m, num.clone());
        num
    }
    go(m, &mut memo)
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Reduces `poly` modulo the monic `modulus`, leaving the result in the low
/// `deg(modulus)` slots.
fn reduce_in_place(poly: &mut [BigInt], modulus: &[BigInt]) {
    let d = modulus.len() - 1;
    for top in (d..poly.len()).rev() {
        if poly[top].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[top]);
        for j in 0..d {
            if !modulus[j].is_zero() {
                poly[top - d + j] -= &c * &modulus[j];
            }
        }
    }
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Arc<FieldSpec>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scalar {
    pub fn zero(field: &Arc<FieldSpec>) -> Scalar {
        Scalar { field: field.clone(), num: vec![BigInt::zero(); field.degree()], den: BigInt::one() }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Scalar {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<FieldSpec>, v: i64) -> Scalar {
        Self::from_bigint(field, BigInt::from(v))
    }

    pub fn from_bigint(field: &Arc<FieldSpec>, v: BigInt) -> Scalar {
        let mut s = Self::zero(field);
        s.num[0] = v;
        s
    }

    /// The rational `n / d`; fails for `d = 0`.
    pub fn from_ratio(field: &Arc<FieldSpec>, n: i64, d: i64) -> Result<Scalar, ScalarError> {
        if d == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        let mut s = Self::from_int(field, n);
        s.den = BigInt::from(d);
        s.canonicalize();
        Ok(s)
    }

    /// The primitive root `ζ_m` (for `m = 1` this is `1`).
    pub fn root(field: &Arc<FieldSpec>) -> Scalar {
        let p = &field.powers[1 % field.powers.len()];
        Scalar { field: field.clone(), num: p.clone(), den: BigInt::one() }
    }

    /// Builds `(Σ coeffs[i] ζ^i) / den` for arbitrary length, reducing modulo Φ_m.
    pub fn from_parts(field: &Arc<FieldSpec>, coeffs: Vec<BigInt>, den: BigInt) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut c = coeffs;
        let deg = field.degree();
        if c.len() < deg {
            c.resize(deg, BigInt::zero());
        }
        reduce_in_place(&mut c, &field.modulus);
        c.truncate(deg);
        let mut s = Scalar { field: field.clone(), num: c, den };
        s.canonicalize();
        Ok(s)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Numerator coefficients in powers of the root, lowest first.
    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in `Q`, as `(numerator, denominator)`.
    pub fn as_rational(&self) -> Option<(&BigInt, &BigInt)> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some((&self.num[0], &self.den))
        } else {
            None
        }
    }

    /// Integer numerator coefficients when the denominator is 1.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    fn canonicalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.abs();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Returns the element reduced to canonical form; a no-op on values built
    /// through the public API.
    pub fn canonical(&self) -> Scalar {
        let mut s = self.clone();
        s.canonicalize();
        s
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field.conductor, other.field.conductor))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let num = if self.den == other.den {
            self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect()
        } else {
            self.num.iter().zip(&other.num).map(|(a, b)| a * &other.den + b * &self.den).collect()
        };
        let den = if self.den == other.den { self.den.clone() } else { &self.den * &other.den };
        let mut s = Scalar { field: self.field.clone(), num, den };
        s.canonicalize();
        Ok(s)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Scalar::zero(&self.field));
        }
        let deg = self.field.degree();
        let num = if deg == 1 {
            vec![&self.num[0] * &other.num[0]]
        } else {
            let mut prod = vec![BigInt::zero(); 2 * deg - 1];
            for (i, a) in self.num.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.num.iter().enumerate() {
                    if !b.is_zero() {
                        prod[i + j] += a * b;
                    }
                }
            }
            reduce_in_place(&mut prod, &self.field.modulus);
            prod.truncate(deg);
            prod
        };
        let mut s = Scalar { field: self.field.clone(), num, den: &self.den * &other.den };
        s.canonicalize();
        Ok(s)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^j`.
    pub fn conjugate(&self, j: u32) -> Scalar {
        let m = self.field.conductor as usize;
        let deg = self.field.degree();
        let mut num = vec![BigInt::zero(); deg];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.powers[(i * j as usize) % m];
            for (slot, pc) in num.iter_mut().zip(p) {
                if !pc.is_zero() {
                    *slot += c * pc;
                }
            }
        }
        let mut s = Scalar { field: self.field.clone(), num, den: self.den.clone() };
        s.canonicalize();
        s
    }

    /// Multiplicative inverse through the product of the nontrivial conjugates,
    /// which turns the denominator into the (rational) field norm.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut cofactor = Scalar::one(&self.field);
        for &j in &self.field.conjugates {
            cofactor = cofactor.try_mul(&self.conjugate(j))?;
        }
        let norm = self.try_mul(&cofactor)?;
        let (n, d) = norm.as_rational().expect("field norm is rational");
        // cofactor * d / n
        let mut s = Scalar {
            field: self.field.clone(),
            num: cofactor.num.iter().map(|c| c * d).collect(),
            den: &cofactor.den * n,
        };
        s.canonicalize();
        Ok(s)
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.field);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by an integer, avoiding a full field product.
    pub fn scale_int(&self, k: &BigInt) -> Scalar {
        let mut s = Scalar {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        };
        s.canonicalize();
        s
    }

    /// Sign of the first nonzero numerator coefficient (0 for zero).
    pub fn leading_sign(&self) -> i32 {
        for c in &self.num {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }

    /// Whether rendering inside a product needs parentheses.
    pub fn is_compound(&self) -> bool {
        self.num.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, n: &BigInt, d: &BigInt) -> fmt::Result {
    let g = n.gcd(d);
    let (n, d) = (n / &g, d / &g);
    if d.is_one() {
        write!(f, "{}", n)
    } else {
        write!(f, "{}/{}", n, d)
    }
}

impl fmt::Display for Scalar {
    /// `3`, `-1/2`, `1 - 2*e`, `1/3*e`: coefficients per power of `e`, lowest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one() && self.den.is_one();
            match i {
                0 => write_ratio(f, &mag, &self.den)?,
                _ => {
                    if !unit {
                        write_ratio(f, &mag, &self.den)?;
                        write!(f, "*")?;
                    }
                    if i == 1 {
                        write!(f, "e")?;
                    } else {
                        write!(f, "e^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on mixed fields (and on division by zero for `Div`);
            /// use the `try_` variants to handle those as errors.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("scalar {}: {}", stringify!($method), e))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                <&Scalar as $trait<&Scalar>>::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl ExprValue for Scalar {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Result<Self, String> {
        self.try_div(other).map_err(|e| e.to_string())
    }
    fn pow(&self, e: u32) -> Self {
        Scalar::pow(self, e)
    }
}

impl Scalar {
    /// Parses integer literals, `a/b` rationals and polynomial expressions in
    /// the root symbol `e` (e.g. `1-2*e`, `e^2`), reducing in the given field.
    /// The symbol `e` is rejected over `Q`.
    pub fn parse(field: &Arc<FieldSpec>, src: &str) -> Result<Scalar, SyntaxError> {
        parse_expr(src, |leaf| match leaf {
            Leaf::Integer(v) => Ok(Scalar::from_bigint(field, v)),
            Leaf::Ident("e") if !field.is_rational() => Ok(Scalar::root(field)),
            Leaf::Ident("e") => Err("symbol 'e' is not in the rational field".to_string()),
            Leaf::Ident(other) => Err(format!("unknown symbol '{}'", other)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<FieldSpec> {
        FieldSpec::rational()
    }

    fn f3() -> Arc<FieldSpec> {
        FieldSpec::cyclotomic(3).unwrap()
    }

    #[test]
    fn cyclotomic_moduli() {
        let c = |m| FieldSpec::cyclotomic(m).unwrap().modulus().iter().map(|b| b.to_string()).collect::<Vec<_>>();
        assert_eq!(c(1), ["-1", "1"]);
        assert_eq!(c(3), ["1", "1", "1"]);
        assert_eq!(c(4), ["1", "0", "1"]);
        assert_eq!(c(6), ["1", "-1", "1"]);
        assert_eq!(c(12), ["1", "0", "-1", "0", "1"]);
        assert_eq!(FieldSpec::cyclotomic(5).unwrap().degree(), 4);
    }

    #[test]
    fn rational_sum() {
        let a = Scalar::from_ratio(&q(), 1, 2).unwrap();
        let b = Scalar::from_ratio(&q(), 1, 3).unwrap();
        assert_eq!(&a + &b, Scalar::from_ratio(&q(), 5, 6).unwrap());
    }

    #[test]
    fn root_of_unity_relations() {
        let f = f3();
        let e = Scalar::root(&f);
        let e2 = &e * &e;
        assert_eq!(e2, -(Scalar::one(&f)) - e.clone());
        assert!((&e * &e2).is_one());
        assert!((&(&e2 + &e) + &Scalar::one(&f)).is_zero());
        assert_eq!(e2.to_string(), "-1 - e");
    }

    #[test]
    fn zero_tests() {
        assert!(Scalar::from_ratio(&q(), 0, 1).unwrap().is_zero());
        assert!(!Scalar::from_ratio(&q(), 1, 1_000_000).unwrap().is_zero());
    }

    #[test]
    fn division_errors() {
        let a = Scalar::one(&q());
        assert_eq!(a.try_div(&Scalar::zero(&q())), Err(ScalarError::DivisionByZero));
        assert_eq!(a.try_add(&Scalar::one(&f3())), Err(ScalarError::FieldMismatch(1, 3)));
        assert!(Scalar::from_ratio(&q(), 1, 0).is_err());
    }

    #[test]
    fn inverse_in_gaussian_and_eisenstein_fields() {
        for m in [3u32, 4, 5, 12] {
            let f = FieldSpec::cyclotomic(m).unwrap();
            let z = Scalar::root(&f);
            let x = &(&z * &Scalar::from_int(&f, 3)) - &Scalar::from_ratio(&f, 2, 7).unwrap();
            assert!((&x * &x.inverse().unwrap()).is_one(), "m = {m}");
        }
    }

    #[test]
    fn parse_round_trip() {
        let f = f3();
        for src in ["e", "e^2", "1-2*e", "3/4", "(1+e)^3", "-e/5"] {
            let v = Scalar::parse(&f, src).unwrap();
            assert_eq!(Scalar::parse(&f, &v.to_string()).unwrap(), v, "{src}");
        }
        assert_eq!(Scalar::parse(&f, "e^3").unwrap(), Scalar::one(&f));
        assert!(Scalar::parse(&q(), "e").is_err());
        assert!(Scalar::parse(&q(), "1/0").is_err());
        assert!(Scalar::parse(&q(), "2*").is_err());
    }

    #[test]
    fn display_forms() {
        let f = f3();
        let e = Scalar::root(&f);
        let x = &Scalar::one(&f) - &(&e * &Scalar::from_int(&f, 2));
        assert_eq!(x.to_string(), "1 - 2*e");
        assert_eq!(Scalar::from_ratio(&q(), -3, 6).unwrap().to_string(), "-1/2");
        assert_eq!((&e / &Scalar::from_int(&f, 3)).to_string(), "1/3*e");
    }
}
