//! Dense exact matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldSpec, Scalar};
use crate::error::LinalgError;

/// Dense row-major matrix over a single exact field. Rows and columns are
/// indexed from 0. Most of the crate uses square matrices of order `d + 1`;
/// rectangular shapes appear as coefficient matrices of linear systems.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Incompatible(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(LinalgError::Incompatible(format!(
                "entry {bad} from {} in a matrix over {field}",
                bad.field()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: FieldSpec, diag: &[Scalar]) -> Result<Self, LinalgError> {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, s) in diag.iter().enumerate() {
            if s.field() != field {
                return Err(LinalgError::Incompatible("diagonal entry field".into()));
            }
            m.set(i, i, s.clone());
        }
        Ok(m)
    }

    /// Square or rectangular matrix from integer rows.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| field.from_i64(x)))
            .collect();
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Single-row matrix.
    pub fn from_row(field: FieldSpec, row: Vec<Scalar>) -> Result<Self, LinalgError> {
        let n = row.len();
        Self::new(field, 1, n, row)
    }

    /// Stacks equal-length vectors as rows.
    pub fn from_rows(
        field: FieldSpec,
        cols: usize,
        rows: &[Vec<Scalar>],
    ) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::Incompatible("ragged rows".into()));
            }
            data.extend(r.iter().cloned());
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// Inverse of [`Matrix::vectorize`] for a square matrix of order `n`.
    pub fn from_vector(field: FieldSpec, n: usize, v: Vec<Scalar>) -> Result<Self, LinalgError> {
        Self::new(field, n, n, v)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Row-major flattening.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.data
            .iter()
            .position(|s| !s.is_zero())
            .map(|k| (k / self.cols, k % self.cols, &self.data[k]))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `self + s·I`.
    pub fn shift(&self, s: &Scalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) + s;
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    /// `Σ cᵢ·Mᵢ` over equally shaped matrices.
    pub fn linear_combination(coeffs: &[Scalar], mats: &[&Matrix]) -> Result<Matrix, LinalgError> {
        let first = mats
            .first()
            .ok_or_else(|| LinalgError::Incompatible("empty combination".into()))?;
        if coeffs.len() != mats.len() {
            return Err(LinalgError::Incompatible("coefficient count".into()));
        }
        let mut acc = Matrix::zeros(first.field, first.rows, first.cols);
        for (c, m) in coeffs.iter().zip(mats) {
            check_same_shape(&acc, m)?;
            if c.field() != acc.field {
                return Err(LinalgError::Incompatible("coefficient field".into()));
            }
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.data.iter_mut().zip(&m.data) {
                *a = &*a + &(c * x);
            }
        }
        Ok(acc)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Incompatible(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let red = super::elim::rref(&aug);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Scalar] {
        &mut self.data
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

fn check_same_shape(a: &Matrix, b: &Matrix) -> Result<(), LinalgError> {
    if a.field != b.field || a.rows != b.rows || a.cols != b.cols {
        return Err(LinalgError::Incompatible(format!(
            "{}x{} over {} vs {}x{} over {}",
            a.rows, a.cols, a.field, b.rows, b.cols, b.field
        )));
    }
    Ok(())
}

/// Exact product; errors when fields differ or inner dimensions disagree.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    if a.field != b.field || a.cols != b.rows {
        return Err(LinalgError::Incompatible(format!(
            "cannot multiply {}x{} over {} by {}x{} over {}",
            a.rows, a.cols, a.field, b.rows, b.cols, b.field
        )));
    }
    let mut out = Matrix::zeros(a.field, a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if x.is_zero() {
                continue;
            }
            for c in 0..b.cols {
                let y = b.get(k, c);
                if y.is_zero() {
                    continue;
                }
                let v = out.get(r, c) + &(x * y);
                out.set(r, c, v);
            }
        }
    }
    Ok(out)
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    check_same_shape(a, b)?;
    Ok(Matrix {
        field: a.field,
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect(),
    })
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    check_same_shape(a, b)?;
    Ok(Matrix {
        field: a.field,
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x - y).collect(),
    })
}

// Operator forms panic on incompatible operands; use the `mat_*` functions
// when the operands come from untrusted input.

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        mat_mul(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        mat_add(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        mat_sub(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-&self.field.one())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(Scalar::to_canonical_string)
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
