//! Hypersurfaces built from restricted syzygies: `S_G(X) = Σ_j g_j(B∘X, −A∘X)·X^{β_j}`,
//! together with the checks that certify them.

use thiserror::Error;

use crate::config::{LineChart, PointConfig};
use crate::derivmod::{self, betas, euler_span, DerivError, DerivationElement};
use crate::linalg::{self, kernel, rank, Matrix};
use crate::poly::{BinaryForm, MultiIndex, MultiPoly};
use crate::scalars::Scalar;
use crate::unexpect::Frame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("the syzygy yields the zero polynomial")]
    ZeroHypersurface,
    #[error("no reduced syzygy in degree {0}")]
    NoSyzygy(usize),
    #[error("point index {index} out of range for {r} points")]
    PointIndex { index: usize, r: usize },
    #[error(transparent)]
    Deriv(#[from] DerivError),
}

/// Coefficient tuple `(g_β)` of binary forms of degree d, indexed by the
/// canonical β order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedSyzygy {
    pub k: u32,
    pub d: usize,
    pub g: Vec<BinaryForm>,
}

impl From<DerivationElement> for RestrictedSyzygy {
    fn from(e: DerivationElement) -> Self {
        RestrictedSyzygy { k: e.k, d: e.d, g: e.coeffs }
    }
}

impl RestrictedSyzygy {
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.g.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    /// `Σ_j g_j(s0, t0)·X^{β_j}`.
    pub fn evaluate_at(&self, s0: &Scalar, t0: &Scalar) -> MultiPoly {
        let field = s0.field();
        let nv = betas_nvars(self);
        MultiPoly::from_terms(field, nv, betas(nv, self.k).into_iter().zip(self.g.iter().map(|g| g.eval(s0, t0))))
    }
}

fn betas_nvars(g: &RestrictedSyzygy) -> usize {
    let len = g.g.len();
    (1..=64).find(|&nv| derivmod::binomial(nv as i64 - 1 + g.k as i64, nv as i64 - 1) as usize == len).expect("slot count matches some C(n+k, n)")
}

/// Canonical basis vectors of the degree-d point-condition module that are
/// independent modulo the Euler span: greedy in kernel order, so the count is
/// `h₀(d)`.
pub fn restricted_syzygies(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Result<Vec<RestrictedSyzygy>, ConstructError> {
    let basis = derivmod::dk_basis(z, chart, k, d)?;
    let mut span = euler_span(chart, k, d);
    let mut current = rank(&span);
    let mut out = Vec::new();
    for el in basis {
        span.push_row(el.to_vector());
        let r = rank(&span);
        if r > current {
            current = r;
            out.push(el.into());
        }
    }
    Ok(out)
}

/// The restricted generators `(J^k)_β|_L = ∏_m (∂f/∂Y_m)|_L^{β_m}`.
pub fn jacobian_power_generators(z: &PointConfig, chart: &LineChart, k: u32) -> Vec<BinaryForm> {
    let jac = chart.restricted_jacobian(z);
    betas(z.nvars(), k)
        .iter()
        .map(|b| {
            let mut acc = BinaryForm::constant(Scalar::one(&z.field));
            for (m, &e) in b.exps().iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&jac[m]);
                }
            }
            acc
        })
        .collect()
}

/// Kernel of `g ↦ Σ_j g_j·(J^k)_{β_j}|_L` on degree-d tuples.
pub fn jacobian_power_syzygies(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Vec<RestrictedSyzygy> {
    let gens = jacobian_power_generators(z, chart, k);
    let top = gens[0].degree() + d;
    let cols = gens.len() * (d + 1);
    let mut m = Matrix::zeros(&z.field, top + 1, cols);
    for (j, g) in gens.iter().enumerate() {
        for e in 0..=d {
            for (i, c) in g.coeffs().iter().enumerate() {
                m.set(i + e, j * (d + 1) + e, c.clone());
            }
        }
    }
    kernel(&m).iter().map(|v| DerivationElement::from_vector(k, d, v).into()).collect()
}

/// Whether `Σ_j g_j·(J^k)_{β_j}|_L` vanishes identically.
pub fn is_jacobian_syzygy(g: &RestrictedSyzygy, z: &PointConfig, chart: &LineChart) -> bool {
    let gens = jacobian_power_generators(z, chart, g.k);
    let mut acc = BinaryForm::zero(&z.field, gens[0].degree() + g.d);
    for (a, b) in g.g.iter().zip(&gens) {
        acc = acc.add(&a.mul(b));
    }
    acc.is_zero()
}

/// `S_G(X) = Σ_j g_j(B∘X, −A∘X)·X^{β_j}`, scaled to content 1.
pub fn build_hypersurface(g: &RestrictedSyzygy, chart: &LineChart) -> Result<MultiPoly, ConstructError> {
    let nv = chart.nvars();
    let field = chart.field();
    let s = MultiPoly::linear_form(&chart.b);
    let t = MultiPoly::linear_form(&chart.a).neg();
    let mut out = MultiPoly::zero(field, nv);
    for (gj, b) in g.g.iter().zip(betas(nv, g.k)) {
        if gj.is_zero() {
            continue;
        }
        out = out.add(&gj.substitute(&s, &t).mul(&MultiPoly::monomial(Scalar::one(field), b)));
    }
    if out.is_zero() {
        return Err(ConstructError::ZeroHypersurface);
    }
    Ok(out.normalized())
}

/// Least m such that some partial derivative of order m is nonzero at P.
pub fn multiplicity_at_point(f: &MultiPoly, p: &[Scalar]) -> u32 {
    let nv = f.nvars();
    let top = f.degree().unwrap_or(0);
    for m in 0..=top {
        for alpha in MultiIndex::all_of_degree(nv, m) {
            let v = f.derive(&alpha).evaluate(p).expect("point length");
            if !v.is_zero() {
                return m;
            }
        }
    }
    top
}

pub fn multiplicity_along_subspace(f: &MultiPoly, chart: &LineChart) -> u32 {
    Frame::standard(chart).multiplicity_along(f).unwrap_or(0)
}

/// Whether `G(Q)` is a nonzero multiple of `(Q∘X)^k` for `Q = s0·A + t0·B`.
pub fn is_underdetermined(g: &RestrictedSyzygy, chart: &LineChart, s0: &Scalar, t0: &Scalar) -> bool {
    let gq = g.evaluate_at(s0, t0);
    if gq.is_zero() {
        return false;
    }
    let q = chart.point(s0, t0);
    let nv = chart.nvars();
    let target: Vec<Scalar> = betas(nv, g.k).iter().map(|b| b.eval_monomial(&q).scale_int(&b.multinomial())).collect();
    let have: Vec<Scalar> = betas(nv, g.k).iter().map(|b| gq.coeff(b)).collect();
    if target.iter().all(Scalar::is_zero) {
        return false;
    }
    let m = Matrix::from_rows(chart.field(), target.len(), vec![target, have]);
    rank(&m) == 1
}

/// Linear conditions on combination coefficients `c` for `Σ c_i F_i` to have
/// multiplicity at least m at P.
fn multiplicity_conditions(family: &[MultiPoly], p: &[Scalar], m: u32) -> Matrix {
    let field = p[0].field();
    let nv = p.len();
    let mut rows = Matrix::zeros(field, 0, family.len());
    for order in 0..m {
        for alpha in MultiIndex::all_of_degree(nv, order) {
            rows.push_row(family.iter().map(|f| f.derive(&alpha).evaluate(p).expect("point length")).collect());
        }
    }
    rows
}

/// Largest multiplicity at P attained by a nonzero member of the span of
/// `family`, with the canonical member attaining it.
pub fn fat_point_scan(family: &[MultiPoly], p: &[Scalar]) -> Option<(u32, MultiPoly)> {
    let field = p[0].field().clone();
    let combine = |c: &[Scalar]| -> MultiPoly {
        family.iter().zip(c).fold(MultiPoly::zero(&field, p.len()), |acc, (f, x)| acc.add(&f.scale(x))).normalized()
    };
    let top = family.iter().filter_map(MultiPoly::degree).max()?;
    let mut best: Option<(u32, MultiPoly)> = None;
    for m in 0..=top + 1 {
        let ker = kernel(&multiplicity_conditions(family, p, m));
        let Some(first) = ker.into_iter().find(|c| !combine(c).is_zero()) else {
            break;
        };
        best = Some((m, combine(&first)));
    }
    best
}

/// A hypersurface together with its certificates.
#[derive(Debug, Clone)]
pub struct Construction {
    pub k: u32,
    pub d: usize,
    pub syzygy: RestrictedSyzygy,
    pub hypersurface: MultiPoly,
    pub degree: u32,
    pub multiplicity_along: u32,
    pub point_multiplicities: Vec<u32>,
    pub vanishes_on_z: bool,
}

impl Construction {
    pub fn certify(z: &PointConfig, chart: &LineChart, syzygy: RestrictedSyzygy, hypersurface: MultiPoly) -> Construction {
        let point_multiplicities: Vec<u32> = z.points.iter().map(|p| multiplicity_at_point(&hypersurface, p)).collect();
        Construction {
            k: syzygy.k,
            d: syzygy.d,
            degree: hypersurface.degree().unwrap_or(0),
            multiplicity_along: multiplicity_along_subspace(&hypersurface, chart),
            vanishes_on_z: point_multiplicities.iter().all(|&m| m >= 1),
            point_multiplicities,
            hypersurface,
            syzygy,
        }
    }
}

/// Builds `S_G` from the first reduced syzygy of degree d whose image is nonzero.
pub fn construct(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Result<Construction, ConstructError> {
    for g in restricted_syzygies(z, chart, k, d)? {
        match build_hypersurface(&g, chart) {
            Ok(f) => return Ok(Construction::certify(z, chart, g, f)),
            Err(ConstructError::ZeroHypersurface) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ConstructError::NoSyzygy(d))
}

/// `S_G` for every reduced syzygy of degree d.
pub fn hypersurface_family(z: &PointConfig, chart: &LineChart, k: u32, d: usize) -> Result<Vec<(RestrictedSyzygy, MultiPoly)>, ConstructError> {
    let mut out = Vec::new();
    for g in restricted_syzygies(z, chart, k, d)? {
        if let Ok(f) = build_hypersurface(&g, chart) {
            out.push((g, f));
        }
    }
    Ok(out)
}

/// The member of the degree-d family with the highest multiplicity at point
/// `index` (canonical witness), certified.
pub fn construct_fat(z: &PointConfig, chart: &LineChart, k: u32, d: usize, index: usize) -> Result<(u32, Construction), ConstructError> {
    if index >= z.r() {
        return Err(ConstructError::PointIndex { index, r: z.r() });
    }
    let fam = hypersurface_family(z, chart, k, d)?;
    let polys: Vec<MultiPoly> = fam.iter().map(|(_, f)| f.clone()).collect();
    let (m, witness) = fat_point_scan(&polys, &z.points[index]).ok_or(ConstructError::NoSyzygy(d))?;
    let syzygy = recover_syzygy(&fam, &witness).unwrap_or_else(|| fam[0].0.clone());
    Ok((m, Construction::certify(z, chart, syzygy, witness)))
}

/// The syzygy combination mapping to `target` (up to scale), when it exists.
fn recover_syzygy(fam: &[(RestrictedSyzygy, MultiPoly)], target: &MultiPoly) -> Option<RestrictedSyzygy> {
    let field = target.field().clone();
    let mut mons: Vec<MultiIndex> = fam.iter().flat_map(|(_, f)| f.terms().map(|(m, _)| m.clone())).collect();
    mons.sort();
    mons.dedup();
    let cols: Vec<Vec<Scalar>> = fam.iter().map(|(_, f)| mons.iter().map(|m| f.coeff(m)).collect()).collect();
    let mut rows: Vec<Vec<Scalar>> = (0..mons.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    for (row, m) in rows.iter_mut().zip(&mons) {
        row.push(-target.coeff(m));
    }
    let sol = kernel(&Matrix::from_rows(&field, fam.len() + 1, rows)).into_iter().find(|v| !v[fam.len()].is_zero())?;
    let scale = sol[fam.len()].inverse().ok()?;
    let first = &fam[0].0;
    let mut acc: Vec<BinaryForm> = vec![BinaryForm::zero(&field, first.d); first.g.len()];
    for ((g, _), c) in fam.iter().zip(&sol) {
        let c = c * &scale;
        for (a, b) in acc.iter_mut().zip(&g.g) {
            *a = a.add(&b.scale(&c));
        }
    }
    Some(RestrictedSyzygy { k: first.k, d: first.d, g: acc })
}

/// Coefficient vector of F over the degree-D monomials in canonical order.
pub fn coefficient_vector(f: &MultiPoly, degree: u32) -> Vec<Scalar> {
    MultiIndex::all_of_degree(f.nvars(), degree).iter().map(|m| f.coeff(m)).collect()
}

/// Membership of F in the span of `basis` (all of degree D).
pub fn in_span(f: &MultiPoly, basis: &[MultiPoly], degree: u32) -> bool {
    let field = f.field();
    let cols = MultiIndex::all_of_degree(f.nvars(), degree).len();
    let m = Matrix::from_rows(field, cols, basis.iter().map(|b| coefficient_vector(b, degree)).collect());
    linalg::in_row_span(&m, &coefficient_vector(f, degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        let f = FieldSpec::rational();
        v.iter().map(|&x| Scalar::from_int(&f, x)).collect()
    }

    fn coordinate_triangle() -> PointConfig {
        PointConfig::new(&FieldSpec::rational(), 2, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap()
    }

    #[test]
    fn triangle_syzygy() {
        let z = coordinate_triangle();
        let chart = LineChart::sample(&z, 1, 101).unwrap();
        let y = |m: usize| BinaryForm::new(vec![chart.a[m].clone(), chart.b[m].clone()]);
        let g = RestrictedSyzygy { k: 1, d: 1, g: vec![y(0), y(1).scale(&Scalar::from_int(&z.field, -1)), BinaryForm::zero(&z.field, 1)] };
        assert!(is_jacobian_syzygy(&g, &z, &chart));
        let all = jacobian_power_syzygies(&z, &chart, 1, 1);
        let m = Matrix::from_rows(&z.field, 6, all.iter().map(RestrictedSyzygy::to_vector).collect());
        assert!(linalg::in_row_span(&m, &g.to_vector()));
    }

    #[test]
    fn point_multiplicities() {
        let f = FieldSpec::rational();
        let x0sq = MultiPoly::parse(&f, 3, "X", "X0^2").unwrap();
        assert_eq!(multiplicity_at_point(&x0sq, &ints(&[0, 1, 0])), 2);
        let quartic = MultiPoly::parse(&f, 3, "X", "X0^4 + X1^4 - 2*X2^4").unwrap();
        assert_eq!(multiplicity_at_point(&quartic, &ints(&[1, 1, 1])), 1);
        assert_eq!(multiplicity_at_point(&quartic, &ints(&[1, 0, 0])), 0);
    }

    #[test]
    fn underdetermined_toy_case() {
        let z = PointConfig::new(&FieldSpec::rational(), 2, vec![ints(&[1, 0, 0])]).unwrap();
        let chart = LineChart::sample(&z, 1, 101).unwrap();
        let (s1, t1) = chart.params[0].clone();
        let q1 = chart.point(&s1, &t1);
        let g = RestrictedSyzygy { k: 1, d: 0, g: q1.iter().map(|c| BinaryForm::constant(c.clone())).collect() };
        assert!(DerivationElement { k: 1, d: 0, coeffs: g.g.clone() }.satisfies_point_conditions(&z, &chart));
        assert!(is_underdetermined(&g, &chart, &s1, &t1));
        let other = Scalar::from_int(&z.field, 7);
        assert!(!is_underdetermined(&g, &chart, &other, &Scalar::one(&z.field)));
        let zero = RestrictedSyzygy { k: 1, d: 0, g: vec![BinaryForm::zero(&z.field, 0); 3] };
        assert!(!is_underdetermined(&zero, &chart, &s1, &t1));
    }

    #[test]
    fn euler_syzygy_builds_zero() {
        let z = coordinate_triangle();
        let chart = LineChart::sample(&z, 2, 101).unwrap();
        for g in derivmod::euler_generators(&chart, 2) {
            assert_eq!(build_hypersurface(&g.element.into(), &chart), Err(ConstructError::ZeroHypersurface));
        }
    }

    #[test]
    fn scan_finds_double_point() {
        let f = FieldSpec::rational();
        let fam: Vec<MultiPoly> = ["X0^2", "X0*X1 + X2^2", "X1^2"].iter().map(|s| MultiPoly::parse(&f, 3, "X", s).unwrap()).collect();
        let (m, w) = fat_point_scan(&fam, &ints(&[0, 0, 1])).unwrap();
        assert_eq!(m, 2);
        assert_eq!(multiplicity_at_point(&w, &ints(&[0, 0, 1])), 2);
    }
}
