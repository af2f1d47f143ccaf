//! Exact dense linear algebra over a [`Scalar`] field: echelon forms, rank,
//! canonical kernels and determinants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalars::{FieldSpec, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn from_rows(field: &Arc<FieldSpec>, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(&self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i).to_vec())).finish()
    }
}

/// Cost used to prefer simple pivots: number of nonzero root coefficients,
/// then bit size.
fn weight(s: &Scalar) -> (usize, u64) {
    let nz = s.numerator().iter().filter(|c| !c.is_zero()).count();
    let bits = s.numerator().iter().map(|c| c.bits()).sum::<u64>() + s.denominator().bits();
    (nz, bits)
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows: Vec<Vec<Scalar>> = m.row_vecs();
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..m.cols {
        if top == rows.len() {
            break;
        }
        let best = (top..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| weight(&rows[i][col]));
        let Some(p) = best else { continue };
        rows.swap(top, p);
        let inv = rows[top][col].inverse().expect("nonzero pivot");
        for x in rows[top][col..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[top].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == top || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for j in col..m.cols {
                if !pivot_row[j].is_zero() {
                    r[j] = &r[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (Matrix::from_rows(&m.field, m.cols, rows), pivots)
}

/// Rank by forward elimination (no back substitution).
pub fn rank(m: &Matrix) -> usize {
    let mut rows: Vec<Vec<Scalar>> = m.row_vecs();
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut r = 0;
    for col in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| weight(&rows[i][col]));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("nonzero pivot");
        let pivot_row: Vec<Scalar> = rows[r].iter().map(|x| if x.is_zero() { x.clone() } else { x * &inv }).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..m.cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        r += 1;
    }
    r
}

/// Kernel dimension `cols - rank`.
pub fn nullity(m: &Matrix) -> usize {
    m.cols - rank(m)
}

/// Canonical basis of the right kernel: one vector per free column of the
/// RREF, each scaled by [`content_normalizer`].
pub fn kernel(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![None; m.cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(&m.field); m.cols];
        v[free] = Scalar::one(&m.field);
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -r.get(i, free);
        }
        basis.push(normalize_vector(&v));
    }
    basis
}

/// Rational factor turning `v` into a vector of algebraic integers whose
/// integer coordinates have gcd 1 and whose first nonzero entry has positive
/// leading sign. `None` for the zero vector.
pub fn content_normalizer(v: &[Scalar]) -> Option<Scalar> {
    let first = v.iter().find(|x| !x.is_zero())?;
    let field = first.field().clone();
    let mut den = BigInt::one();
    for x in v {
        if !x.is_zero() {
            den = den.lcm(x.denominator());
        }
    }
    let mut g = BigInt::zero();
    for x in v {
        if x.is_zero() {
            continue;
        }
        let k = &den / x.denominator();
        for c in x.numerator() {
            g = g.gcd(&(c * &k));
        }
    }
    let mut num = den;
    if first.leading_sign() < 0 {
        num = -num;
    }
    let q = Scalar::from_parts(&field, vec![num], g.abs()).expect("nonzero content");
    Some(q)
}

pub fn normalize_vector(v: &[Scalar]) -> Vec<Scalar> {
    match content_normalizer(v) {
        Some(k) => v.iter().map(|x| x * &k).collect(),
        None => v.to_vec(),
    }
}

/// Determinant by elimination.
pub fn determinant(m: &Matrix) -> Scalar {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.row_vecs();
    let mut det = Scalar::one(&m.field);
    for col in 0..n {
        let Some(p) = (col..n).filter(|&i| !a[i][col].is_zero()).min_by_key(|&i| weight(&a[i][col])) else {
            return Scalar::zero(&m.field);
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det = &det * &piv;
        let inv = piv.inverse().expect("nonzero pivot");
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            for j in col..n {
                if !a[col][j].is_zero() {
                    a[i][j] = &a[i][j] - &(&f * &a[col][j]);
                }
            }
        }
    }
    det
}

/// Extends independent `vectors` to a basis of the ambient space by appending
/// standard unit vectors in index order.
pub fn extend_to_basis(field: &Arc<FieldSpec>, dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut basis: Vec<Vec<Scalar>> = vectors.to_vec();
    let mut current = rank(&Matrix::from_rows(field, dim, basis.clone()));
    for i in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut e = vec![Scalar::zero(field); dim];
        e[i] = Scalar::one(field);
        basis.push(e);
        let r = rank(&Matrix::from_rows(field, dim, basis.clone()));
        if r == current {
            basis.pop();
        } else {
            current = r;
        }
    }
    basis
}

/// Whether `v` lies in the row span of `m`.
pub fn in_row_span(m: &Matrix, v: &[Scalar]) -> bool {
    let mut ext = m.clone();
    ext.push_row(v.to_vec());
    rank(&ext) == rank(m)
}

/// Leading sign helper for integer vectors.
pub fn sign_of_first(v: &[BigInt]) -> i32 {
    v.iter().find(|c| !c.is_zero()).map(|c| if c.is_positive() { 1 } else { -1 }).unwrap_or(0)
}
