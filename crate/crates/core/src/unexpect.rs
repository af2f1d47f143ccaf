//! Dimension counts for forms through a point set with prescribed multiplicity
//! along the codimension-two subspace `ℋ = {A∘X = B∘X = 0}`, and the numerical
//! unexpectedness criterion read off a splitting type.

use std::sync::Arc;

use thiserror::Error;

use crate::config::{dot, LineChart, PointConfig};
use crate::derivmod::{binomial, SplittingType};
use crate::linalg::{self, extend_to_basis, rank, Matrix};
use crate::poly::{MultiIndex, MultiPoly};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnexpectError {
    #[error("condition count for (n={n}, d={d}, k={k}): direct sum {sum} but closed form {closed}")]
    FormulaMismatch { n: usize, d: u32, k: u32, sum: i64, closed: i64 },
    #[error("codimension-two counts need n >= 2, got n = {0}")]
    AmbientTooSmall(usize),
    #[error("degree {degree} is below the multiplicity {multiplicity}")]
    DegreeBelowMultiplicity { degree: u32, multiplicity: u32 },
    #[error("index j = {j} exceeds s = {s}")]
    IndexOutOfRange { j: usize, s: usize },
    #[error("frame completion does not give a basis")]
    SingularFrame,
}

/// Conditions imposed on degree `d+k` forms by multiplicity `d` along a
/// codimension-two linear subspace of `P^n`, computed by the direct sum and
/// by the closed form; the two must agree.
pub fn codim2_conditions(n: usize, d: u32, k: u32) -> Result<i64, UnexpectError> {
    if n < 2 {
        return Err(UnexpectError::AmbientTooSmall(n));
    }
    let (ni, di, ki) = (n as i64, d as i64, k as i64);
    let sum: i64 = (0..di).map(|i| (i + 1) * binomial(di + ki - i + ni - 2, ni - 2)).sum();
    let closed = (di + ki + ni) * (binomial(di + ki + ni - 1, ni - 1) - binomial(ki + ni - 1, ni - 1))
        - (ni - 1) * (binomial(di + ki + ni, ni) - binomial(ki + ni, ni));
    if sum != closed {
        return Err(UnexpectError::FormulaMismatch { n, d, k, sum, closed });
    }
    Ok(sum)
}

/// Conditions imposed by a point of multiplicity `m` in `P^n`: `C(m-1+n, n)`.
pub fn fat_point_conditions(m: u32, n: usize) -> i64 {
    binomial(m as i64 - 1 + n as i64, n as i64)
}

/// `C(d+k+n, n) − codim2(n, d, k) − simple_count − Σ C(m−1+n, n)`.
pub fn vdim(n: usize, k: u32, d: u32, simple_count: usize, fat_multiplicities: &[u32]) -> Result<i64, UnexpectError> {
    let fat: i64 = fat_multiplicities.iter().map(|&m| fat_point_conditions(m, n)).sum();
    Ok(binomial((d + k) as i64 + n as i64, n as i64) - codim2_conditions(n, d, k)? - simple_count as i64 - fat)
}

/// Coordinates `u = T·X` whose first two entries are `A∘X` and `B∘X`, so that
/// `I(ℋ) = (u0, u1)`.
#[derive(Debug, Clone)]
pub struct Frame {
    field: Arc<FieldSpec>,
    rows: Vec<Vec<Scalar>>,
    inverse: Matrix,
}

impl Frame {
    /// Completes `(A, B)` with standard unit vectors in index order.
    pub fn standard(chart: &LineChart) -> Frame {
        let rows = extend_to_basis(chart.field(), chart.nvars(), &[chart.a.clone(), chart.b.clone()]);
        Frame::from_rows(chart.field(), rows).expect("completion is a basis")
    }

    /// Completes `(A, B)` with the given `n − 1` rows.
    pub fn with_completion(chart: &LineChart, extra: &[Vec<Scalar>]) -> Result<Frame, UnexpectError> {
        let mut rows = vec![chart.a.clone(), chart.b.clone()];
        rows.extend(extra.iter().cloned());
        Frame::from_rows(chart.field(), rows)
    }

    fn from_rows(field: &Arc<FieldSpec>, rows: Vec<Vec<Scalar>>) -> Result<Frame, UnexpectError> {
        let nv = rows.len();
        if rows.iter().any(|r| r.len() != nv) {
            return Err(UnexpectError::SingularFrame);
        }
        let t = Matrix::from_rows(field, nv, rows.clone());
        let mut aug = Matrix::zeros(field, nv, 2 * nv);
        for i in 0..nv {
            for j in 0..nv {
                aug.set(i, j, t.get(i, j).clone());
            }
            aug.set(i, nv + i, Scalar::one(field));
        }
        let (r, pivots) = linalg::rref(&aug);
        if pivots.len() != nv || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(UnexpectError::SingularFrame);
        }
        let mut inverse = Matrix::zeros(field, nv, nv);
        for i in 0..nv {
            for j in 0..nv {
                inverse.set(i, j, r.get(i, nv + j).clone());
            }
        }
        Ok(Frame { field: field.clone(), rows, inverse })
    }

    pub fn nvars(&self) -> usize {
        self.rows.len()
    }

    /// `T·P`.
    pub fn apply(&self, p: &[Scalar]) -> Vec<Scalar> {
        self.rows.iter().map(|r| dot(r, p)).collect()
    }

    /// `G(u) = F(T⁻¹u)`.
    pub fn to_frame(&self, f: &MultiPoly) -> MultiPoly {
        let nv = self.nvars();
        let images: Vec<MultiPoly> = (0..nv).map(|i| MultiPoly::linear_form(self.inverse.row(i))).collect();
        f.substitute(&images).expect("variable count")
    }

    /// `F(X) = G(T·X)`.
    pub fn from_frame(&self, g: &MultiPoly) -> MultiPoly {
        let images: Vec<MultiPoly> = self.rows.iter().map(|r| MultiPoly::linear_form(r)).collect();
        g.substitute(&images).expect("variable count")
    }

    /// Monomials in `u` of degree `degree` lying in `(u0, u1)^multiplicity`.
    pub fn supported_monomials(&self, multiplicity: u32, degree: u32) -> Vec<MultiIndex> {
        MultiIndex::all_of_degree(self.nvars(), degree).into_iter().filter(|m| m.exps()[0] + m.exps()[1] >= multiplicity).collect()
    }

    /// Vanishing conditions at the points of Z on the supported monomials.
    pub fn condition_matrix(&self, z: &PointConfig, multiplicity: u32, degree: u32) -> (Vec<MultiIndex>, Matrix) {
        let mons = self.supported_monomials(multiplicity, degree);
        let rows = z
            .points
            .iter()
            .map(|p| {
                let u = self.apply(p);
                mons.iter().map(|m| m.eval_monomial(&u)).collect()
            })
            .collect();
        let m = Matrix::from_rows(&self.field, mons.len(), rows);
        (mons, m)
    }

    /// Order of vanishing along `ℋ`: the least `u0+u1` exponent among the
    /// monomials of `F` in frame coordinates.
    pub fn multiplicity_along(&self, f: &MultiPoly) -> Option<u32> {
        self.to_frame(f).terms().map(|(m, _)| m.exps()[0] + m.exps()[1]).min()
    }
}

fn check_degrees(d: u32, degree: u32) -> Result<(), UnexpectError> {
    if degree < d {
        return Err(UnexpectError::DegreeBelowMultiplicity { degree, multiplicity: d });
    }
    Ok(())
}

/// `dim [I(Z) ∩ I(ℋ)^d]_D`.
pub fn adim(z: &PointConfig, chart: &LineChart, d: u32, degree: u32) -> Result<usize, UnexpectError> {
    adim_in_frame(z, &Frame::standard(chart), d, degree)
}

pub fn adim_in_frame(z: &PointConfig, frame: &Frame, d: u32, degree: u32) -> Result<usize, UnexpectError> {
    check_degrees(d, degree)?;
    let (mons, m) = frame.condition_matrix(z, d, degree);
    Ok(mons.len() - rank(&m))
}

/// Canonical basis of `[I(Z) ∩ I(ℋ)^d]_D` in the original coordinates.
pub fn adim_basis(z: &PointConfig, chart: &LineChart, d: u32, degree: u32) -> Result<Vec<MultiPoly>, UnexpectError> {
    check_degrees(d, degree)?;
    let frame = Frame::standard(chart);
    let (mons, m) = frame.condition_matrix(z, d, degree);
    Ok(linalg::kernel(&m)
        .into_iter()
        .map(|v| {
            let g = MultiPoly::from_terms(&z.field, z.nvars(), mons.iter().cloned().zip(v));
            frame.from_frame(&g).normalized()
        })
        .collect())
}

/// `|Z| − rank` of the evaluation matrix of Z on degree-D monomials.
pub fn z_deficiency(z: &PointConfig, degree: u32) -> usize {
    let mons = MultiIndex::all_of_degree(z.nvars(), degree);
    let rows = z.points.iter().map(|p| mons.iter().map(|m| m.eval_monomial(p)).collect()).collect();
    z.r() - rank(&Matrix::from_rows(&z.field, mons.len(), rows))
}

/// Outcome of the numerical criterion at one index j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionRow {
    pub j: usize,
    /// `Σ_{i>j} t_i(ε_i − ε_j − 1)`.
    pub value: i64,
    pub unexpected: bool,
    /// Multiplicity `a + ε_j` along `ℋ`.
    pub d: u32,
    /// Degree `a + ε_j + k`.
    pub degree: u32,
}

pub fn criterion(st: &SplittingType, k: u32, j: usize) -> Result<CriterionRow, UnexpectError> {
    let dec = st.decomposition();
    let s = dec.eps.len().saturating_sub(1);
    if j > s || dec.eps.is_empty() {
        return Err(UnexpectError::IndexOutOfRange { j, s });
    }
    let value: i64 = (j + 1..dec.eps.len()).map(|i| dec.t[i] as i64 * (dec.eps[i] - dec.eps[j] - 1)).sum();
    let d = (dec.a + dec.eps[j]).max(0) as u32;
    Ok(CriterionRow { j, value, unexpected: value > 0, d, degree: d + k })
}

/// A point promoted to a fat point in the virtual count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatPoint {
    pub index: usize,
    pub multiplicity: u32,
    pub conditions: i64,
}

/// All dimension data for one row of the analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub criterion: CriterionRow,
    pub k: u32,
    pub adim: usize,
    /// Plain count with every point simple.
    pub vdim: i64,
    /// Count with the fat points promoted.
    pub vdim_fat: i64,
    /// `vdim_fat + z_deficiency`.
    pub vdim_deficiency_corrected: i64,
    pub z_deficiency: usize,
    pub fat_points: Vec<FatPoint>,
}

pub fn dimension_report(
    z: &PointConfig,
    chart: &LineChart,
    st: &SplittingType,
    k: u32,
    j: usize,
    fat: &[(usize, u32)],
) -> Result<DimensionReport, UnexpectError> {
    let row = criterion(st, k, j)?;
    let n = z.n;
    let fat_points: Vec<FatPoint> =
        fat.iter().filter(|(_, m)| *m >= 2).map(|&(index, m)| FatPoint { index, multiplicity: m, conditions: fat_point_conditions(m, n) }).collect();
    let mults: Vec<u32> = fat_points.iter().map(|f| f.multiplicity).collect();
    let plain = vdim(n, k, row.d, z.r(), &[])?;
    let vdim_fat = vdim(n, k, row.d, z.r() - fat_points.len(), &mults)?;
    let zd = z_deficiency(z, row.degree);
    Ok(DimensionReport {
        adim: adim(z, chart, row.d, row.degree)?,
        vdim: plain,
        vdim_fat,
        vdim_deficiency_corrected: vdim_fat + zd as i64,
        z_deficiency: zd,
        fat_points,
        criterion: row,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        let f = FieldSpec::rational();
        v.iter().map(|&x| Scalar::from_int(&f, x)).collect()
    }

    #[test]
    fn condition_counts() {
        assert_eq!(codim2_conditions(4, 4, 1), Ok(105));
        assert_eq!(codim2_conditions(3, 1, 3), Ok(5));
        assert_eq!(codim2_conditions(4, 5, 1), Ok(185));
        assert_eq!(codim2_conditions(1, 1, 1), Err(UnexpectError::AmbientTooSmall(1)));
    }

    #[test]
    fn fat_points() {
        assert_eq!(fat_point_conditions(3, 3), 10);
        assert_eq!(fat_point_conditions(1, 5), 1);
        assert_eq!(fat_point_conditions(2, 2), 3);
    }

    #[test]
    fn virtual_dimensions() {
        assert_eq!(vdim(4, 1, 4, 25, &[]), Ok(-4));
        assert_eq!(vdim(4, 1, 5, 25, &[]), Ok(0));
        assert_eq!(vdim(3, 3, 1, 30, &[3]), Ok(-10));
    }

    #[test]
    fn criterion_examples() {
        let st = SplittingType::new(vec![4, 5, 7, 8]);
        let got: Vec<(i64, bool, u32, u32)> = (0..3).map(|j| criterion(&st, 1, j).unwrap()).map(|r| (r.value, r.unexpected, r.degree, r.d)).collect();
        assert_eq!(got, vec![(5, true, 5, 4), (3, true, 6, 5), (0, false, 8, 7)]);
        assert!(criterion(&st, 1, 4).is_err());
    }

    #[test]
    fn single_point_has_no_deficiency() {
        let z = PointConfig::new(&FieldSpec::rational(), 2, vec![ints(&[1, 2, 3])]).unwrap();
        for d in 1..5 {
            assert_eq!(z_deficiency(&z, d), 0);
        }
    }

    #[test]
    fn frame_round_trip() {
        let z = PointConfig::new(&FieldSpec::rational(), 3, vec![ints(&[1, 0, 0, 0]), ints(&[0, 1, 1, 0])]).unwrap();
        let chart = LineChart::sample(&z, 1, 101).unwrap();
        let frame = Frame::standard(&chart);
        let f = MultiPoly::parse(&z.field, 4, "X", "X0^2*X3 - 3*X1*X2*X3 + X2^3").unwrap();
        assert_eq!(frame.from_frame(&frame.to_frame(&f)), f);
        let ab = MultiPoly::linear_form(&chart.a).mul(&MultiPoly::linear_form(&chart.b));
        assert_eq!(frame.multiplicity_along(&ab), Some(2));
        let off = MultiPoly::linear_form(&ints(&[1, 0, 0, 0]));
        assert_eq!(frame.multiplicity_along(&off), Some(0));
    }
}
