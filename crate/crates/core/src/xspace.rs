//! The space X of matrices `X` with `E_i X E_j = 0` and `E*_i X E*_j = 0`
//! whenever `|i - j| > 1`, and checks of its structure.

use serde::Serialize;

use crate::error::XSpaceError;
use crate::leonard::LeonardSystem;
use crate::linalg::{in_span, matrix_span_dim, nullspace, span_dim, Matrix, Scalar};

/// Labels of the designated spanning set, in order.
pub const SPANNING_LABELS: [&str; 5] = ["I", "A", "A*", "AA*", "A*A"];

#[derive(Clone, Debug)]
pub struct XSpaceBasis {
    system: LeonardSystem,
    basis: Vec<Matrix>,
    spanning: [Matrix; 5],
}

impl XSpaceBasis {
    pub fn system(&self) -> &LeonardSystem {
        &self.system
    }

    /// Echelon-normalized basis of X (vectorized row-major, the basis is
    /// in reduced row-echelon form).
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// `I, A, A*, AA*, A*A`.
    pub fn spanning_set(&self) -> &[Matrix; 5] {
        &self.spanning
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `I, A, A*, AA*, A*A` for a system.
pub fn spanning_set(ls: &LeonardSystem) -> [Matrix; 5] {
    let (a, s) = (ls.a(), ls.a_star());
    [ls.identity(), a.clone(), s.clone(), a * s, s * a]
}

/// A nonzero row and a nonzero column of a rank-one matrix. Then
/// `E_i X E_j = 0` iff `row(E_i)·X·col(E_j) = 0`.
fn row_and_column(e: &Matrix) -> (Vec<Scalar>, Vec<Scalar>) {
    let (r, c, _) = e
        .first_nonzero()
        .expect("primitive idempotents are nonzero");
    (e.row(r).to_vec(), e.column(c))
}

/// Computes X as the exact nullspace of its defining constraints.
pub fn compute_x(ls: &LeonardSystem) -> XSpaceBasis {
    let f = ls.field();
    let n = ls.order();
    let rc: Vec<_> = ls.e().iter().map(row_and_column).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) <= 1 {
                continue;
            }
            // E*_i X E*_j = X[i][j]·(unit), since E*_i are diagonal units.
            let mut star = vec![f.zero(); n * n];
            star[i * n + j] = f.one();
            rows.push(star);

            let (w, _) = &rc[i];
            let (_, u) = &rc[j];
            let mut row = Vec::with_capacity(n * n);
            for wr in w {
                for uc in u {
                    row.push(wr * uc);
                }
            }
            rows.push(row);
        }
    }
    let basis: Vec<Matrix> = if rows.is_empty() {
        (0..n * n)
            .map(|k| {
                let mut m = Matrix::zeros(f, n, n);
                m.set(k / n, k % n, f.one());
                m
            })
            .collect()
    } else {
        let sys = Matrix::from_rows(f, n * n, &rows).expect("uniform rows");
        nullspace(&sys)
            .into_iter()
            .map(|v| Matrix::from_vector(f, n, v).expect("square"))
            .collect()
    };
    XSpaceBasis {
        system: ls.clone(),
        basis,
        spanning: spanning_set(ls),
    }
}

/// Checks the defining constraints with full matrix products.
pub fn satisfies_x_constraints(ls: &LeonardSystem, x: &Matrix) -> bool {
    let n = ls.order();
    if x.field() != ls.field() || !x.is_square() || x.rows() != n {
        return false;
    }
    for i in 0..n {
        let ex = &ls.e()[i] * x;
        let sx = &ls.e_star()[i] * x;
        for j in 0..n {
            if i.abs_diff(j) > 1
                && (!(&ex * &ls.e()[j]).is_zero() || !(&sx * &ls.e_star()[j]).is_zero())
            {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    /// Every basis element of X is a combination of `I, A, A*, AA*, A*A`.
    pub spans: bool,
    /// The five matrices are linearly independent.
    pub independent: bool,
}

pub fn verify_main_theorem(xb: &XSpaceBasis) -> MainTheoremReport {
    let spanners: Vec<&Matrix> = xb.spanning.iter().collect();
    let spans = xb
        .basis
        .iter()
        .all(|x| matches!(in_span(x, &spanners), Ok(Some(_))));
    let independent = matrix_span_dim(&xb.spanning) == 5;
    MainTheoremReport { spans, independent }
}

/// The map `X ↦ (X E*_0, X A E*_0)` is injective on X.
pub fn verify_key_injectivity(xb: &XSpaceBasis) -> bool {
    let ls = &xb.system;
    let e0 = &ls.e_star()[0];
    let ae0 = ls.a() * e0;
    let n = ls.order();
    let images: Vec<Vec<Scalar>> = xb
        .basis
        .iter()
        .map(|x| {
            let mut v = (x * e0).vectorize();
            v.extend((x * &ae0).vectorize());
            v
        })
        .collect();
    span_dim(ls.field(), 2 * n * n, &images) == xb.dim()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimBoundReport {
    pub dim_x_e0star: usize,
    pub dim_x_a_e0star: usize,
}

impl DimBoundReport {
    /// `dim X·E*_0 ≤ 2` and `dim X·A·E*_0 ≤ 3`.
    pub fn within_bounds(&self) -> bool {
        self.dim_x_e0star <= 2 && self.dim_x_a_e0star <= 3
    }
}

/// Dimensions of `X·E*_0` and `X·A·E*_0`; requires `d ≥ 2`.
pub fn verify_dim_bound_mechanism(xb: &XSpaceBasis) -> Result<DimBoundReport, XSpaceError> {
    let ls = &xb.system;
    if ls.d() < 2 {
        return Err(XSpaceError::OutOfRange { d: ls.d(), min: 2 });
    }
    let e0 = &ls.e_star()[0];
    let ae0 = ls.a() * e0;
    let first: Vec<Matrix> = xb.basis.iter().map(|x| x * e0).collect();
    let second: Vec<Matrix> = xb.basis.iter().map(|x| x * &ae0).collect();
    Ok(DimBoundReport {
        dim_x_e0star: matrix_span_dim(&first),
        dim_x_a_e0star: matrix_span_dim(&second),
    })
}
