//! Gauss-Jordan elimination and the queries built on it.

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;
use crate::error::LinalgError;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination over the matrix's own field. Pivots are the first
/// nonzero entry in each column, so the result is the unique RREF.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(found, pr);
        let inv = a.get(pr, c).inv().expect("pivot is nonzero");
        {
            let data = a.data_mut();
            for x in &mut data[pr * cols + c..(pr + 1) * cols] {
                *x = &*x * &inv;
            }
        }
        let pivot_row: Vec<Scalar> = a.row(pr).to_vec();
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = a.get(r, c).clone();
            if factor.is_zero() {
                continue;
            }
            let data = a.data_mut();
            for k in c..cols {
                let y = &pivot_row[k];
                if y.is_zero() {
                    continue;
                }
                let idx = r * cols + k;
                data[idx] = &data[idx] - &(&factor * y);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

/// Basis of the right nullspace `{v : m·v = 0}`, returned in reduced
/// row-echelon normal form (stacked as rows, the basis is its own RREF).
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field();
    let n = m.cols();
    let red = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let raw: Vec<Vec<Scalar>> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); n];
            v[free] = field.one();
            for (row, &pc) in red.pivots.iter().enumerate() {
                v[pc] = -red.matrix.get(row, free);
            }
            v
        })
        .collect();
    row_echelon_basis(field, n, &raw)
}

/// Canonical (RREF) basis of the span of the given vectors.
pub fn row_echelon_basis(
    field: FieldSpec,
    len: usize,
    vectors: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, len, vectors).expect("equal-length vectors");
    let red = rref(&m);
    (0..red.rank())
        .map(|r| red.matrix.row(r).to_vec())
        .collect()
}

/// Dimension of the span of a list of vectors.
pub fn span_dim(field: FieldSpec, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(field, len, vectors).expect("equal-length vectors"))
}

/// Dimension of the span of a list of equally shaped matrices.
pub fn matrix_span_dim(mats: &[Matrix]) -> usize {
    match mats.first() {
        None => 0,
        Some(m) => {
            let vecs: Vec<Vec<Scalar>> = mats.iter().map(Matrix::vectorize).collect();
            span_dim(m.field(), m.rows() * m.cols(), &vecs)
        }
    }
}

/// Solves `m·x = b`. Free variables are set to zero, so the answer is
/// canonical; `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::Incompatible("right-hand side length".into()));
    }
    let field = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug = Matrix::zeros(field, rows, cols + 1);
    for r in 0..rows {
        for c in 0..cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        if b[r].field() != field {
            return Err(LinalgError::Incompatible("right-hand side field".into()));
        }
        aug.set(r, cols, b[r].clone());
    }
    let red = rref(&aug);
    if red.pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); cols];
    for (row, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(row, cols).clone();
    }
    Ok(Some(x))
}

/// Span membership: `Some(coords)` with `Σ coords[k]·spanners[k] = target`
/// exactly, `None` otherwise. Coordinates are unique when the spanners are
/// independent; otherwise free coordinates are zero.
pub fn in_span(target: &Matrix, spanners: &[&Matrix]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    let field = target.field();
    for s in spanners {
        if s.field() != field || s.rows() != target.rows() || s.cols() != target.cols() {
            return Err(LinalgError::Incompatible("spanner shape or field".into()));
        }
    }
    if spanners.is_empty() {
        return Ok(target.is_zero().then(Vec::new));
    }
    let len = target.rows() * target.cols();
    let mut m = Matrix::zeros(field, len, spanners.len());
    for (k, s) in spanners.iter().enumerate() {
        for (i, x) in s.entries().iter().enumerate() {
            m.set(i, k, x.clone());
        }
    }
    solve(&m, target.entries())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn q(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(Q, rows)
    }

    #[test]
    fn nullspace_of_zero_and_identity() {
        let z = Matrix::zeros(Q, 2, 2);
        assert_eq!(
            nullspace(&z),
            vec![vec![Q.one(), Q.zero()], vec![Q.zero(), Q.one()]]
        );
        assert!(nullspace(&Matrix::identity(Q, 3)).is_empty());
    }

    #[test]
    fn nullspace_hand_elimination() {
        let basis = nullspace(&q(&[vec![1, 1], vec![2, 2]]));
        assert_eq!(basis, vec![vec![Q.from_i64(1), Q.from_i64(-1)]]);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Matrix::identity(Q, 3)), 3);
        assert_eq!(rank(&Matrix::zeros(Q, 3, 3)), 0);
        assert_eq!(rank(&q(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]])), 2);
    }

    #[test]
    fn span_membership() {
        let a = q(&[vec![0, 2, 0], vec![1, 0, 1], vec![0, 2, 0]]);
        let i = Matrix::identity(Q, 3);
        assert_eq!(
            in_span(&a, &[&i, &a]).unwrap(),
            Some(vec![Q.zero(), Q.one()])
        );
        assert_eq!(in_span(&i, &[&a]).unwrap(), None);
        let a2 = &a * &a;
        assert_eq!(
            in_span(&a2, &[&i, &a, &a2]).unwrap(),
            Some(vec![Q.zero(), Q.zero(), Q.one()])
        );
    }

    #[test]
    fn inconsistent_system() {
        let m = q(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(solve(&m, &[Q.one(), Q.zero()]).unwrap(), None);
    }
}
