//! Degree-by-degree computation of the k-derivation module of the dual
//! arrangement restricted to a generic line, its splitting type, and the
//! transform η to hypersurfaces.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::config::{LineChart, PointConfig};
use crate::linalg::{self, kernel, rank, Matrix};
use crate::poly::{powers, BinaryForm, MultiIndex, MultiPoly};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivError {
    #[error("order k must be at least 1")]
    ZeroOrder,
    #[error("line and configuration have different ambient dimensions")]
    DimensionMismatch,
    #[error("Hilbert function did not stabilize by degree {cap}; raise the degree cap")]
    NotStabilized { cap: usize },
    #[error("Hilbert function {values:?} is not reproduced by nonnegative exponents")]
    NoFit { values: Vec<i64> },
    #[error("exponent sum {got} differs from the expected {expected}")]
    ChernMismatch { got: i64, expected: i64 },
    #[error("subspace basis must consist of n-1 independent vectors")]
    BadSubspace,
    #[error("wrong number of coefficient polynomials: expected {expected}, got {got}")]
    CoefficientCount { expected: usize, got: usize },
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// The multi-indices β of degree k in canonical order.
pub fn betas(nvars: usize, k: u32) -> Vec<MultiIndex> {
    MultiIndex::all_of_degree(nvars, k)
}

/// Rank of the restricted bundle modulo Euler summands, `C(n+k-1, n-1)`.
pub fn bundle_rank(n: usize, k: u32) -> usize {
    binomial(n as i64 + k as i64 - 1, n as i64 - 1) as usize
}

/// Number of Euler-type generators, `C(n+k-1, n)`.
pub fn euler_count(n: usize, k: u32) -> usize {
    binomial(n as i64 + k as i64 - 1, n as i64) as usize
}

/// `Σ P^β` action on a linear form: degree-d coefficient tuple restricted to
/// the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationElement {
    pub k: u32,
    pub d: usize,
    pub coeffs: Vec<BinaryForm>,
}

impl DerivationElement {
    /// From a flat coefficient vector indexed by `j*(d+1) + e`.
    pub fn from_vector(k: u32, d: usize, v: &[Scalar]) -> Self {
        let coeffs = v.chunks(d + 1).map(|c| BinaryForm::new(c.to_vec())).collect();
        DerivationElement { k, d, coeffs }
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        self.coeffs.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BinaryForm::is_zero)
    }

    /// Whether `Σ_j coeffs[j](s_i, t_i) P_i^{β_j} = 0` for every point.
    pub fn satisfies_point_conditions(&self, z: &PointConfig, chart: &LineChart) -> bool {
        let bs = betas(z.nvars(), self.k);
        z.points.iter().zip(&chart.params).all(|(p, (s, t))| {
            let mut acc = Scalar::zero(&z.field);
            for (b, g) in bs.iter().zip(&self.coeffs) {
                acc = &acc + &(&g.eval(s, t) * &b.eval_monomial(p));
            }
            acc.is_zero()
        })
    }
}

/// `θ_{E_γ} = Σ_m Y_m ∂_{γ+e_m}` for `|γ| = k-1`, restricted to the line.
#[derive(Debug, Clone)]
pub struct EulerGenerator {
    pub gamma: MultiIndex,
    pub element: DerivationElement,
}

pub fn euler_generators(chart: &LineChart, k: u32) -> Vec<EulerGenerator> {
    let nv = chart.nvars();
    let bs = betas(nv, k);
    let field = chart.field();
    MultiIndex::all_of_degree(nv, k - 1)
        .into_iter()
        .map(|gamma| {
            let mut coeffs = vec![BinaryForm::zero(field, 1); bs.len()];
            for m in 0..nv {
                let slot = gamma.plus(&MultiIndex::unit(nv, m));
                let j = bs.iter().position(|b| *b == slot).expect("slot is a degree-k index");
                let y = BinaryForm::new(vec![chart.a[m].clone(), chart.b[m].clone()]);
                coeffs[j] = coeffs[j].add(&y);
            }
            EulerGenerator { gamma, element: DerivationElement { k, d: 1, coeffs } }
        })
        .collect()
}

fn check(z: &PointConfig, chart: &LineChart, k: u32) -> Result<(), DerivError> {
    if k == 0 {
        return Err(DerivError::ZeroOrder);
    }
    if chart.nvars() != z.nvars() || chart.params.len() != z.r() {
        return Err(DerivError::DimensionMismatch);
    }
    Ok(())
}

/// The `r × (d+1)·C(n+k,n)` matrix whose kernel is the degree-d piece.
pub fn condition_matrix(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Matrix {
    let bs = betas(z.nvars(), k);
    let cols = (d + 1) * bs.len();
    let rows = z
        .points
        .iter()
        .zip(&chart.params)
        .map(|(p, (s, t))| {
            let sp = powers(s, d);
            let tp = powers(t, d);
            let mono: Vec<Scalar> = (0..=d).map(|e| &sp[d - e] * &tp[e]).collect();
            let mut row = Vec::with_capacity(cols);
            for b in &bs {
                let pb = b.eval_monomial(p);
                for m in &mono {
                    row.push(&pb * m);
                }
            }
            row
        })
        .collect();
    Matrix::from_rows(&z.field, cols, rows)
}

pub fn dk_basis(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Result<Vec<DerivationElement>, DerivError> {
    check(z, chart, k)?;
    Ok(kernel(&condition_matrix(z, chart, k, d)).iter().map(|v| DerivationElement::from_vector(k, d, v)).collect())
}

pub fn dk_dim(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Result<usize, DerivError> {
    check(z, chart, k)?;
    Ok(linalg::nullity(&condition_matrix(z, chart, k, d)))
}

/// Spanning set `{ s^{d-1-e} t^e · θ_{E_γ} }` of the degree-d Euler part, as
/// flat coefficient vectors.
pub fn euler_span(chart: &LineChart, k: u32, d: usize) -> Matrix {
    let gens = euler_generators(chart, k);
    let nb = gens.first().map(|g| g.element.coeffs.len()).unwrap_or(0);
    let field = chart.field();
    let mut m = Matrix::zeros(field, 0, (d + 1) * nb);
    if d == 0 {
        return m;
    }
    for g in &gens {
        for e in 0..d {
            let mut coeffs = vec![Scalar::zero(field); d - 1 + 1];
            coeffs[e] = Scalar::one(field);
            let mult = BinaryForm::new(coeffs);
            let v: Vec<Scalar> = g.element.coeffs.iter().flat_map(|c| c.mul(&mult).coeffs().to_vec()).collect();
            m.push_row(v);
        }
    }
    m
}

pub fn euler_dim(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Result<usize, DerivError> {
    check(z, chart, k)?;
    Ok(rank(&euler_span(chart, k, d)))
}

/// `h₀(d) = dim D^k_d − dim Euler_d`.
pub fn h0(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Result<i64, DerivError> {
    Ok(dk_dim(z, chart, k, d)? as i64 - euler_dim(z, chart, k, d)? as i64)
}

/// Sorted exponents `a_1 ≤ a_2 ≤ ...` of a direct sum of `O(-a_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingType {
    exponents: Vec<i64>,
}

/// `(a; ε_0 = 0 < ε_1 < ...; t_0, t_1, ...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub a: i64,
    pub eps: Vec<i64>,
    pub t: Vec<usize>,
}

impl SplittingType {
    pub fn new(mut exponents: Vec<i64>) -> Self {
        exponents.sort_unstable();
        SplittingType { exponents }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// `Σ max(0, d − a_i + 1)`.
    pub fn sections(&self, d: i64) -> i64 {
        self.exponents.iter().map(|a| (d - a + 1).max(0)).sum()
    }

    pub fn decomposition(&self) -> Decomposition {
        let a = self.exponents.first().copied().unwrap_or(0);
        let mut eps: Vec<i64> = Vec::new();
        let mut t: Vec<usize> = Vec::new();
        for &x in &self.exponents {
            if eps.last() == Some(&(x - a)) {
                *t.last_mut().unwrap() += 1;
            } else {
                eps.push(x - a);
                t.push(1);
            }
        }
        Decomposition { a, eps, t }
    }

    /// Multiplicity notation, e.g. `1^3 2^4 3^2 4^1`.
    pub fn render_powers(&self) -> String {
        let d = self.decomposition();
        d.eps.iter().zip(&d.t).map(|(e, t)| format!("{}^{}", d.a + e, t)).collect::<Vec<_>>().join(" ")
    }

    /// Fits exponents to `h[d]` for `d = 0..`, using `Δh(d) = #{a_i ≤ d}`.
    pub fn fit(h: &[i64]) -> Result<SplittingType, DerivError> {
        let mut exps = Vec::new();
        let mut prev_delta = 0;
        let mut prev_h = 0;
        for (d, &v) in h.iter().enumerate() {
            let delta = v - prev_h;
            let count = delta - prev_delta;
            if count < 0 {
                return Err(DerivError::NoFit { values: h.to_vec() });
            }
            exps.extend(std::iter::repeat(d as i64).take(count as usize));
            prev_delta = delta;
            prev_h = v;
        }
        let st = SplittingType::new(exps);
        if h.iter().enumerate().any(|(d, &v)| st.sections(d as i64) != v) {
            return Err(DerivError::NoFit { values: h.to_vec() });
        }
        Ok(st)
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Measured data behind a splitting type.
#[derive(Debug, Clone)]
pub struct SplittingAnalysis {
    pub k: u32,
    pub splitting: SplittingType,
    /// `(dk_dim, euler_dim)` for `d = 0..`.
    pub dims: Vec<(usize, usize)>,
}

impl SplittingAnalysis {
    pub fn h0(&self) -> Vec<i64> {
        self.dims.iter().map(|&(a, b)| a as i64 - b as i64).collect()
    }
}

/// Measures `h₀` degree by degree until `Δh₀` has equalled the bundle rank in
/// two consecutive degrees, fits exponents, and checks their sum against
/// `r − C(n+k−1, n)`. Without an explicit cap the search stops at that sum
/// plus two, which bounds every nonnegative exponent.
pub fn splitting_type(z: &PointConfig, chart: &LineChart, k: u32, degree_cap: Option<usize>) -> Result<SplittingAnalysis, DerivError> {
    check(z, chart, k)?;
    let rank_target = bundle_rank(z.n, k) as i64;
    let chern = z.r() as i64 - euler_count(z.n, k) as i64;
    let cap = degree_cap.unwrap_or(chern.max(0) as usize + 2);
    let mut dims = Vec::new();
    let mut h = Vec::new();
    let mut streak = 0;
    for d in 0..=cap {
        let dk = dk_dim(z, chart, k, d)?;
        let eu = euler_dim(z, chart, k, d)?;
        dims.push((dk, eu));
        let v = dk as i64 - eu as i64;
        let delta = v - h.last().copied().unwrap_or(0);
        h.push(v);
        streak = if delta == rank_target { streak + 1 } else { 0 };
        if streak >= 2 {
            let st = SplittingType::fit(&h)?;
            let got: i64 = st.exponents().iter().sum();
            if st.rank() as i64 != rank_target {
                return Err(DerivError::NoFit { values: h });
            }
            if got != chern {
                return Err(DerivError::ChernMismatch { got, expected: chern });
            }
            return Ok(SplittingAnalysis { k, splitting: st, dims });
        }
    }
    Err(DerivError::NotStabilized { cap })
}

/// Basis of `ℋ = {A∘X = 0, B∘X = 0}`: `n − 1` vectors.
pub fn subspace_basis(chart: &LineChart) -> Vec<Vec<Scalar>> {
    let m = Matrix::from_rows(chart.field(), chart.nvars(), vec![chart.a.clone(), chart.b.clone()]);
    kernel(&m)
}

/// Linear forms `σ, τ` on the dual space with `σ(sA+tB) = s`, `τ(sA+tB) = t`,
/// supported on the first pair of coordinates where A and B are independent.
pub fn line_coordinates(chart: &LineChart) -> (Vec<Scalar>, Vec<Scalar>) {
    let field = chart.field();
    let nv = chart.nvars();
    let (a, b) = (&chart.a, &chart.b);
    for i in 0..nv {
        for j in i + 1..nv {
            let det = &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
            if det.is_zero() {
                continue;
            }
            let inv = det.inverse().expect("nonzero minor");
            let mut sigma = vec![Scalar::zero(field); nv];
            let mut tau = vec![Scalar::zero(field); nv];
            sigma[i] = &b[j] * &inv;
            sigma[j] = -&(&b[i] * &inv);
            tau[i] = -&(&a[j] * &inv);
            tau[j] = &a[i] * &inv;
            return (sigma, tau);
        }
    }
    panic!("certified line has independent A and B");
}

/// Lifts a restricted element to full coefficients `f_β(Y) = g_β(σ(Y), τ(Y))`.
pub fn lift(theta: &DerivationElement, chart: &LineChart) -> Vec<MultiPoly> {
    let (sigma, tau) = line_coordinates(chart);
    let s = MultiPoly::linear_form(&sigma);
    let t = MultiPoly::linear_form(&tau);
    theta.coeffs.iter().map(|g| g.substitute(&s, &t)).collect()
}

/// `e_α(M_i)(X) = det(e_i; X; α_1; ...; α_{n−1})` as linear forms in X.
pub fn e_alpha_forms(alpha: &[Vec<Scalar>], nv: usize) -> Result<Vec<MultiPoly>, DerivError> {
    let field = alpha.first().map(|v| v[0].field().clone()).ok_or(DerivError::BadSubspace)?;
    if alpha.len() + 2 != nv || alpha.iter().any(|v| v.len() != nv) || rank(&Matrix::from_rows(&field, nv, alpha.to_vec())) != alpha.len() {
        return Err(DerivError::BadSubspace);
    }
    let unit = |i: usize| -> Vec<Scalar> { (0..nv).map(|j| if i == j { Scalar::one(&field) } else { Scalar::zero(&field) }).collect() };
    Ok((0..nv)
        .map(|i| {
            let coeffs: Vec<Scalar> = (0..nv)
                .map(|j| {
                    let mut rows = vec![unit(i), unit(j)];
                    rows.extend(alpha.iter().cloned());
                    linalg::determinant(&Matrix::from_rows(&field, nv, rows))
                })
                .collect();
            MultiPoly::linear_form(&coeffs)
        })
        .collect())
}

/// `F = Σ_j f_{β_j}(e_α(M_0), ..., e_α(M_n)) · X^{β_j}`.
pub fn eta_transform(coeffs: &[MultiPoly], k: u32, alpha: &[Vec<Scalar>]) -> Result<MultiPoly, DerivError> {
    let nv = alpha.first().map(|v| v.len()).ok_or(DerivError::BadSubspace)?;
    let bs = betas(nv, k);
    if coeffs.len() != bs.len() {
        return Err(DerivError::CoefficientCount { expected: bs.len(), got: coeffs.len() });
    }
    let m = e_alpha_forms(alpha, nv)?;
    let field = m[0].field().clone();
    let mut out = MultiPoly::zero(&field, nv);
    for (f, b) in coeffs.iter().zip(&bs) {
        if f.is_zero() {
            continue;
        }
        let sub = f.substitute(&m).expect("variable count");
        out = out.add(&sub.mul(&MultiPoly::monomial(Scalar::one(&field), b.clone())));
    }
    Ok(out)
}

/// Integer helper for `C(n, k)` over big integers.
pub fn big_binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::dot;
    use crate::scalars::FieldSpec;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        let f = FieldSpec::rational();
        v.iter().map(|&x| Scalar::from_int(&f, x)).collect()
    }

    fn triangle() -> PointConfig {
        PointConfig::new(&FieldSpec::rational(), 2, vec![ints(&[1, 2, 3]), ints(&[-1, 4, 1]), ints(&[2, 0, -5])]).unwrap()
    }

    /// Brute force: enumerate the condition matrix independently from the
    /// binary-form evaluation of each candidate basis vector.
    fn brute_dk(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> usize {
        let bs = betas(z.nvars(), k);
        let cols = (d + 1) * bs.len();
        let mut rows = Vec::new();
        for (p, (s, t)) in z.points.iter().zip(&chart.params) {
            let mut row = Vec::new();
            for col in 0..cols {
                let mut v = vec![Scalar::zero(&z.field); cols];
                v[col] = Scalar::one(&z.field);
                let el = DerivationElement::from_vector(k, d, &v);
                let mut acc = Scalar::zero(&z.field);
                for (b, g) in bs.iter().zip(&el.coeffs) {
                    acc = &acc + &(&g.eval(s, t) * &b.eval_monomial(p));
                }
                row.push(acc);
            }
            rows.push(row);
        }
        cols - rank(&Matrix::from_rows(&z.field, cols, rows))
    }

    #[test]
    fn generic_triangle() {
        let z = triangle();
        let chart = LineChart::sample(&z, 1, 101).unwrap();
        assert_eq!(dk_dim(&z, &chart, 1, 1).unwrap(), 3);
        assert_eq!(brute_dk(&z, &chart, 1, 1), 3);
        assert_eq!(euler_dim(&z, &chart, 1, 1).unwrap(), 1);
        let st = splitting_type(&z, &chart, 1, None).unwrap();
        assert_eq!(st.splitting.exponents(), &[1, 1]);
    }

    #[test]
    fn euler_dims() {
        let z = triangle();
        let chart = LineChart::sample(&z, 1, 101).unwrap();
        assert_eq!(euler_dim(&z, &chart, 1, 0).unwrap(), 0);
        assert_eq!(euler_dim(&z, &chart, 2, 1).unwrap(), 3);
        for d in 0..5 {
            assert_eq!(euler_dim(&z, &chart, 2, d).unwrap(), 3 * d);
        }
    }

    #[test]
    fn euler_multiples_lie_in_dk() {
        let z = triangle();
        let chart = LineChart::sample(&z, 3, 101).unwrap();
        for k in 1..=3 {
            for g in euler_generators(&chart, k) {
                assert!(g.element.satisfies_point_conditions(&z, &chart));
            }
            let d = 3;
            let span = Matrix::from_rows(&z.field, euler_span(&chart, k, d).cols(), dk_basis(&z, &chart, k, d).unwrap().iter().map(|e| e.to_vector()).collect());
            for row in euler_span(&chart, k, d).row_vecs() {
                assert!(linalg::in_row_span(&span, &row));
            }
        }
    }

    #[test]
    fn fit_examples() {
        let h = [0i64, 0, 0, 0, 1, 3, 5, 8, 12, 16, 20];
        assert_eq!(SplittingType::fit(&h).unwrap().exponents(), &[4, 5, 7, 8]);
        assert!(SplittingType::fit(&[2, 1]).is_err());
        let st = SplittingType::new(vec![3, 1, 2, 2, 4]);
        assert_eq!(st.render_powers(), "1^1 2^2 3^1 4^1");
        let dec = st.decomposition();
        assert_eq!((dec.a, dec.eps, dec.t), (1, vec![0, 1, 2, 3], vec![1, 2, 1, 1]));
    }

    #[test]
    fn adapted_e_alpha() {
        let alpha = vec![ints(&[0, 0, 1, 0]), ints(&[0, 0, 0, 1])];
        let m = e_alpha_forms(&alpha, 4).unwrap();
        let r: Vec<String> = m.iter().map(|p| p.render("X")).collect();
        assert_eq!(r, vec!["X1", "-X0", "0", "0"]);
        assert!(matches!(e_alpha_forms(&[ints(&[0, 0, 1, 0]), ints(&[0, 0, 2, 0])], 4), Err(DerivError::BadSubspace)));
    }

    #[test]
    fn eta_kills_euler() {
        let f = FieldSpec::rational();
        let alpha = vec![ints(&[1, -2, 3, 1])];
        let alpha3 = vec![ints(&[1, -2, 3])];
        let euler: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&f, 3, i)).collect();
        assert!(eta_transform(&euler, 1, &alpha3).unwrap().is_zero());
        assert!(eta_transform(&euler, 1, &alpha).is_err());
    }

    #[test]
    fn line_coordinates_invert_parametrization() {
        let z = triangle();
        let chart = LineChart::sample(&z, 4, 101).unwrap();
        let (sigma, tau) = line_coordinates(&chart);
        let f = &z.field;
        let s = Scalar::from_int(f, 5);
        let t = Scalar::from_int(f, -3);
        let y = chart.point(&s, &t);
        assert_eq!(dot(&sigma, &y), s);
        assert_eq!(dot(&tau, &y), t);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 4), 126);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(big_binomial(10, 4), BigInt::from(210));
        assert_eq!(bundle_rank(3, 3), 10);
        assert_eq!(euler_count(3, 3), 10);
        assert_eq!(bundle_rank(4, 1), 4);
    }
}
