//! Point configurations, their dual arrangements and certified generic lines.
//!
//! Points-file grammar (UTF-8, one directive per line, `#` starts a comment):
//!
//! ```text
//! field rational | field cyclotomic <m>     optional, defaults to rational
//! dim <n>                                   required before the first point
//! point [<label>:] <c0> <c1> ... <cn>       coordinates in scalar syntax, no spaces inside a coordinate
//! ```

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{rank, Matrix};
use crate::poly::{BinaryForm, MultiPoly};
use crate::scalars::{FieldSpec, Scalar, ScalarError};

pub const DEFAULT_COEFF_BOUND: u32 = 101;
pub const RETRY_BUDGET: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: scalar '{token}' is not in the declared field")]
    NotInField { line: usize, token: String },
    #[error("line {line}: point is the zero vector")]
    ZeroVector { line: usize },
    #[error("line {line}: point duplicates the point on line {first} projectively")]
    Duplicate { line: usize, first: usize },
    #[error("line {line}: expected {expected} coordinates, got {got}")]
    Arity { line: usize, expected: usize, got: usize },
    #[error("configuration has no points")]
    Empty,
    #[error("unsupported field: {0}")]
    Field(#[from] ScalarError),
    #[error("no certified generic line after {attempts} draws with coefficient bound {bound}; try a larger --coeff-bound")]
    RetryBudget { attempts: u32, bound: u32 },
    #[error("line is not generic: {0}")]
    NotGeneric(String),
}

/// Points of `P^n` over a common field.
#[derive(Debug, Clone)]
pub struct PointConfig {
    pub n: usize,
    pub field: Arc<FieldSpec>,
    pub points: Vec<Vec<Scalar>>,
    pub labels: Vec<Option<String>>,
}

fn proportional(p: &[Scalar], q: &[Scalar]) -> bool {
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if !(&(&p[i] * &q[j]) - &(&p[j] * &q[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

impl PointConfig {
    /// Validates and builds a configuration (no zero vectors, no projective
    /// duplicates, at least one point).
    pub fn new(field: &Arc<FieldSpec>, n: usize, points: Vec<Vec<Scalar>>) -> Result<Self, ConfigError> {
        let labels = vec![None; points.len()];
        Self::with_labels(field, n, points, labels, None)
    }

    fn with_labels(
        field: &Arc<FieldSpec>,
        n: usize,
        points: Vec<Vec<Scalar>>,
        labels: Vec<Option<String>>,
        lines: Option<&[usize]>,
    ) -> Result<Self, ConfigError> {
        if points.is_empty() {
            return Err(ConfigError::Empty);
        }
        let at = |i: usize| lines.map(|l| l[i]).unwrap_or(i + 1);
        for (i, p) in points.iter().enumerate() {
            if p.len() != n + 1 {
                return Err(ConfigError::Arity { line: at(i), expected: n + 1, got: p.len() });
            }
            if p.iter().all(Scalar::is_zero) {
                return Err(ConfigError::ZeroVector { line: at(i) });
            }
            for j in 0..i {
                if proportional(&points[j], p) {
                    return Err(ConfigError::Duplicate { line: at(i), first: at(j) });
                }
            }
        }
        Ok(PointConfig { n, field: field.clone(), points, labels })
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn parse(text: &str) -> Result<PointConfig, ConfigError> {
        let mut field = FieldSpec::rational();
        let mut dim: Option<usize> = None;
        let mut points = Vec::new();
        let mut labels = Vec::new();
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let syntax = |m: &str| ConfigError::Syntax { line, message: m.to_string() };
            let mut words = body.split_whitespace();
            match words.next().unwrap() {
                "field" => {
                    if !points.is_empty() {
                        return Err(syntax("'field' must precede all points"));
                    }
                    field = match (words.next(), words.next(), words.next()) {
                        (Some("rational"), None, None) => FieldSpec::rational(),
                        (Some("cyclotomic"), Some(m), None) => {
                            let m: u32 = m.parse().map_err(|_| syntax("cyclotomic conductor must be a positive integer"))?;
                            FieldSpec::cyclotomic(m)?
                        }
                        _ => return Err(syntax("expected 'field rational' or 'field cyclotomic <m>'")),
                    };
                }
                "dim" => {
                    if dim.is_some() {
                        return Err(syntax("duplicate 'dim'"));
                    }
                    let n = match (words.next(), words.next()) {
                        (Some(v), None) => v.parse::<usize>().ok().filter(|&n| n >= 1),
                        _ => None,
                    };
                    dim = Some(n.ok_or_else(|| syntax("expected 'dim <n>' with n >= 1"))?);
                }
                "point" => {
                    let n = dim.ok_or_else(|| syntax("'dim' must precede the first point"))?;
                    let mut rest: Vec<&str> = words.collect();
                    let mut label = None;
                    if let Some(first) = rest.first() {
                        if let Some(name) = first.strip_suffix(':') {
                            label = Some(name.to_string());
                            rest.remove(0);
                        }
                    }
                    if rest.len() != n + 1 {
                        return Err(ConfigError::Arity { line, expected: n + 1, got: rest.len() });
                    }
                    let mut coords = Vec::with_capacity(n + 1);
                    for tok in rest {
                        let v = Scalar::parse(&field, tok).map_err(|e| {
                            if field.is_rational() && tok.contains('e') {
                                ConfigError::NotInField { line, token: tok.to_string() }
                            } else {
                                ConfigError::Syntax { line, message: format!("coordinate '{}': {}", tok, e) }
                            }
                        })?;
                        coords.push(v);
                    }
                    points.push(coords);
                    labels.push(label);
                    lines.push(line);
                }
                other => return Err(syntax(&format!("unknown directive '{}'", other))),
            }
        }
        let n = dim.ok_or(ConfigError::Empty)?;
        Self::with_labels(&field, n, points, labels, Some(&lines))
    }

    /// Renders a point as `(c0:c1:...:cn)`.
    pub fn render_point(p: &[Scalar]) -> String {
        let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(":"))
    }
}

/// The linear form `P∘Y = p0 Y0 + ... + pn Yn`.
pub fn dual_form(p: &[Scalar]) -> MultiPoly {
    MultiPoly::linear_form(p)
}

/// `f = ∏ P_i∘Y` and its partial derivatives.
pub fn arrangement_data(z: &PointConfig) -> (MultiPoly, Vec<MultiPoly>) {
    let nv = z.nvars();
    let mut f = MultiPoly::constant(Scalar::one(&z.field), nv);
    for p in &z.points {
        f = f.mul(&dual_form(p));
    }
    let jac = (0..nv).map(|j| f.derive(&crate::poly::MultiIndex::unit(nv, j))).collect();
    (f, jac)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero(a[0].field());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// A line `{sA + tB}` in the dual space together with the parameters where
/// it meets each hyperplane of the arrangement.
#[derive(Debug, Clone)]
pub struct LineChart {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub seed: u64,
    pub coeff_bound: u32,
    /// `(s_i, t_i) = (P_i∘B, −P_i∘A)`.
    pub params: Vec<(Scalar, Scalar)>,
}

impl LineChart {
    /// Certifies an explicit line: A, B independent, no hyperplane contains
    /// it, and the intersection parameters are pairwise distinct.
    pub fn certify(z: &PointConfig, a: Vec<Scalar>, b: Vec<Scalar>, seed: u64, coeff_bound: u32) -> Result<Self, ConfigError> {
        let nv = z.nvars();
        if a.len() != nv || b.len() != nv {
            return Err(ConfigError::NotGeneric("A and B must have n+1 coordinates".into()));
        }
        if rank(&Matrix::from_rows(&z.field, nv, vec![a.clone(), b.clone()])) < 2 {
            return Err(ConfigError::NotGeneric("A and B are linearly dependent".into()));
        }
        let mut params = Vec::with_capacity(z.r());
        for (i, p) in z.points.iter().enumerate() {
            let pa = dot(p, &a);
            let pb = dot(p, &b);
            if pa.is_zero() && pb.is_zero() {
                return Err(ConfigError::NotGeneric(format!("the line lies in the hyperplane of point {}", i + 1)));
            }
            params.push((pb, -pa));
        }
        for i in 0..params.len() {
            for j in 0..i {
                let (si, ti) = &params[i];
                let (sj, tj) = &params[j];
                if (&(si * tj) - &(sj * ti)).is_zero() {
                    return Err(ConfigError::NotGeneric(format!("points {} and {} meet the line in the same point", j + 1, i + 1)));
                }
            }
        }
        Ok(LineChart { a, b, seed, coeff_bound, params })
    }

    /// Draws integer A, B in `[-bound, bound]` from a seeded ChaCha stream until
    /// a draw certifies.
    pub fn sample(z: &PointConfig, seed: u64, coeff_bound: u32) -> Result<Self, ConfigError> {
        let bound = coeff_bound.max(1) as i64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nv = z.nvars();
        for _ in 0..RETRY_BUDGET {
            let mut draw = || (0..nv).map(|_| Scalar::from_int(&z.field, rng.gen_range(-bound..=bound))).collect::<Vec<_>>();
            let a = draw();
            let b = draw();
            if let Ok(chart) = Self::certify(z, a, b, seed, coeff_bound) {
                return Ok(chart);
            }
        }
        Err(ConfigError::RetryBudget { attempts: RETRY_BUDGET, bound: coeff_bound })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.a[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.a.len()
    }

    /// The point `sA + tB`.
    pub fn point(&self, s: &Scalar, t: &Scalar) -> Vec<Scalar> {
        self.a.iter().zip(&self.b).map(|(x, y)| &(s * x) + &(t * y)).collect()
    }

    /// `Q_i`, the intersection of the line with the i-th hyperplane.
    pub fn intersection_point(&self, i: usize) -> Vec<Scalar> {
        let (s, t) = &self.params[i];
        self.point(s, t)
    }

    /// `ℓ_i|_L = (P_i∘A) s + (P_i∘B) t`.
    pub fn restricted_form(&self, p: &[Scalar]) -> BinaryForm {
        BinaryForm::new(vec![dot(p, &self.a), dot(p, &self.b)])
    }

    /// `∂f/∂Y_j` restricted to the line, for each j, computed as
    /// `Σ_i p_ij ∏_{m≠i} ℓ_m|_L`.
    pub fn restricted_jacobian(&self, z: &PointConfig) -> Vec<BinaryForm> {
        let forms: Vec<BinaryForm> = z.points.iter().map(|p| self.restricted_form(p)).collect();
        let r = forms.len();
        let one = BinaryForm::constant(Scalar::one(&z.field));
        let mut prefix = vec![one.clone()];
        for f in &forms {
            let next = prefix.last().unwrap().mul(f);
            prefix.push(next);
        }
        let mut suffix = vec![one; r + 1];
        for i in (0..r).rev() {
            suffix[i] = forms[i].mul(&suffix[i + 1]);
        }
        let others: Vec<BinaryForm> = (0..r).map(|i| prefix[i].mul(&suffix[i + 1])).collect();
        (0..z.nvars())
            .map(|j| {
                let mut acc = BinaryForm::zero(&z.field, r - 1);
                for (i, p) in z.points.iter().enumerate() {
                    if !p[j].is_zero() {
                        acc = acc.add(&others[i].scale(&p[j]));
                    }
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiIndex;

    fn q() -> Arc<FieldSpec> {
        FieldSpec::rational()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        let f = q();
        v.iter().map(|&x| Scalar::from_int(&f, x)).collect()
    }

    fn coordinate_triangle() -> PointConfig {
        PointConfig::new(&q(), 2, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap()
    }

    #[test]
    fn parse_grammar() {
        let z = PointConfig::parse("# demo\nfield cyclotomic 3\ndim 3\npoint a: 1 e e^2 1\npoint 0 1 0 0 # trailing\n").unwrap();
        assert_eq!((z.n, z.r()), (3, 2));
        assert_eq!(z.labels[0].as_deref(), Some("a"));
        assert_eq!(dual_form(&z.points[0]).render("Y"), "Y0 + e*Y1 + (-1 - e)*Y2 + Y3");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(PointConfig::parse("dim 3\npoint 1 0 0 0\npoint 2 0 0 0\n"), Err(ConfigError::Duplicate { line: 3, first: 2 })));
        assert!(matches!(PointConfig::parse("dim 2\npoint 0 0 0\n"), Err(ConfigError::ZeroVector { line: 2 })));
        assert!(matches!(PointConfig::parse("dim 2\npoint 1 e 0\n"), Err(ConfigError::NotInField { line: 2, .. })));
        assert!(matches!(PointConfig::parse("dim 2\npoint 1 0\n"), Err(ConfigError::Arity { line: 2, .. })));
        assert!(matches!(PointConfig::parse("point 1 0\n"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(PointConfig::parse("dim 2\nplane 1 0 0\n"), Err(ConfigError::Syntax { line: 2, .. })));
        assert!(matches!(PointConfig::parse("dim 2\n"), Err(ConfigError::Empty)));
    }

    #[test]
    fn dual_forms() {
        assert_eq!(dual_form(&ints(&[0, 1, 0, 0])).render("Y"), "Y1");
        assert_eq!(dual_form(&ints(&[1, 1, 1, 1])).render("Y"), "Y0 + Y1 + Y2 + Y3");
    }

    #[test]
    fn triangle_arrangement() {
        let (f, jac) = arrangement_data(&coordinate_triangle());
        assert_eq!(f.render("Y"), "Y0*Y1*Y2");
        let j: Vec<String> = jac.iter().map(|p| p.render("Y")).collect();
        assert_eq!(j, vec!["Y1*Y2", "Y0*Y2", "Y0*Y1"]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let z = coordinate_triangle();
        let a = LineChart::sample(&z, 5, 101).unwrap();
        let b = LineChart::sample(&z, 5, 101).unwrap();
        assert_eq!((a.a.clone(), a.b.clone()), (b.a, b.b));
        let c = LineChart::sample(&z, 6, 101).unwrap();
        assert_ne!((a.a, a.b), (c.a, c.b));
    }

    #[test]
    fn degenerate_lines_are_rejected() {
        let z = PointConfig::new(&q(), 2, vec![ints(&[1, 0, 0]), ints(&[1, 1, 1])]).unwrap();
        let r = LineChart::certify(&z, ints(&[0, 1, 2]), ints(&[0, 3, 1]), 0, 1);
        assert!(matches!(r, Err(ConfigError::NotGeneric(_))));
        let r = LineChart::certify(&z, ints(&[1, 2, 3]), ints(&[2, 4, 6]), 0, 1);
        assert!(matches!(r, Err(ConfigError::NotGeneric(_))));
    }

    #[test]
    fn tiny_bound_exhausts_budget() {
        // Every primitive vector of {0,1,2}^3: no line with coordinates in {-1,0,1} separates them.
        let mut pts = Vec::new();
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    let g = num_integer::gcd(num_integer::gcd(a, b), c);
                    if g == 1 {
                        pts.push(ints(&[a, b, c]));
                    }
                }
            }
        }
        let z = PointConfig::new(&q(), 2, pts).unwrap();
        assert!(matches!(LineChart::sample(&z, 1, 1), Err(ConfigError::RetryBudget { .. })));
    }

    #[test]
    fn restricted_jacobian_matches_expansion() {
        let z = PointConfig::new(&q(), 2, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1]), ints(&[1, 2, -1])]).unwrap();
        let chart = LineChart::sample(&z, 2, 101).unwrap();
        let (f, jac) = arrangement_data(&z);
        let lj = chart.restricted_jacobian(&z);
        for (p, b) in jac.iter().zip(&lj) {
            assert_eq!(&p.restrict_line(&chart.a, &chart.b).unwrap(), b);
        }
        let euler = (0..3).fold(MultiPoly::zero(&z.field, 3), |acc, j| acc.add(&MultiPoly::var(&z.field, 3, j).mul(&jac[j])));
        assert_eq!(euler, f.scale(&Scalar::from_int(&z.field, 4)));
        assert_eq!(f.derive(&MultiIndex::new(vec![0, 0, 1])), jac[2]);
    }
}
