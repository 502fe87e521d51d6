//! Leonard candidates, their validation into Leonard systems, primitive
//! idempotents and the antiautomorphism fixing `A` and `A*`.
//!
//! Everything is expressed in the basis where `A*` is diagonal and `A` is
//! irreducible tridiagonal. In that basis the idempotents `E*_i` of `A*` are
//! the diagonal matrix units, and all the work sits in the `E_i`.

use crate::error::{Axiom, LeonardError, SupportFailure};
use crate::linalg::{nullspace, rank, FieldSpec, Matrix, Scalar};

/// A pair `(A, A*)` plus claimed eigenvalue orderings, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeonardCandidate {
    /// Diameter; matrices have order `d + 1`.
    pub d: usize,
    /// `A`, expected irreducible tridiagonal.
    pub a: Matrix,
    /// `A*`, expected diagonal with distinct entries.
    pub a_star: Matrix,
    /// Claimed eigenvalues of `A`, in the order defining `E_0, …, E_d`.
    pub thetas: Vec<Scalar>,
    /// Diagonal of `A*` in position order.
    pub theta_stars: Vec<Scalar>,
}

impl LeonardCandidate {
    /// Builds a candidate from `A`, a diagonal `A*` and the claimed ordering
    /// of the eigenvalues of `A`. Only shapes are checked here.
    pub fn new(a: Matrix, a_star: Matrix, thetas: Vec<Scalar>) -> Result<Self, LeonardError> {
        let n = a.rows();
        if n == 0 {
            return Err(LeonardError::Malformed("empty matrix".into()));
        }
        let theta_stars = (0..a_star.rows().min(a_star.cols()))
            .map(|i| a_star.get(i, i).clone())
            .collect();
        let c = LeonardCandidate {
            d: n - 1,
            a,
            a_star,
            thetas,
            theta_stars,
        };
        c.check_shape()?;
        Ok(c)
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn order(&self) -> usize {
        self.d + 1
    }

    /// Same pair with a different claimed ordering of the eigenvalues of `A`.
    pub fn with_thetas(&self, thetas: Vec<Scalar>) -> Self {
        LeonardCandidate {
            thetas,
            ..self.clone()
        }
    }

    pub(crate) fn check_shape(&self) -> Result<(), LeonardError> {
        let n = self.d + 1;
        let f = self.field();
        let mal = |m: String| Err(LeonardError::Malformed(m));
        if !self.a.is_square() || self.a.rows() != n {
            return mal(format!("A must be {n}x{n}"));
        }
        if !self.a_star.is_square() || self.a_star.rows() != n {
            return mal(format!("A* must be {n}x{n}"));
        }
        if self.a_star.field() != f {
            return mal("A and A* are over different fields".into());
        }
        if self.thetas.len() != n || self.theta_stars.len() != n {
            return mal(format!("expected {n} eigenvalues of each matrix"));
        }
        if self
            .thetas
            .iter()
            .chain(&self.theta_stars)
            .any(|t| t.field() != f)
        {
            return mal("eigenvalue from a different field".into());
        }
        for r in 0..n {
            for c in 0..n {
                if r != c && !self.a_star.get(r, c).is_zero() {
                    return mal(format!("A* must be diagonal; entry ({r}, {c}) is nonzero"));
                }
            }
            if self.a_star.get(r, r) != &self.theta_stars[r] {
                return mal(format!("theta_stars[{r}] differs from A*[{r}][{r}]"));
            }
        }
        Ok(())
    }
}

/// The Krawtchouk pair: `A` has `(i, i-1)` entry `i`, `(i, i+1)` entry
/// `d - i` and zero diagonal; `A* = diag(d - 2i)`; `θ_i = d - 2i`.
pub fn krawtchouk_family(d: usize, field: FieldSpec) -> Result<LeonardCandidate, LeonardError> {
    if let FieldSpec::Prime(p) = field {
        if p <= 2 * d as u64 {
            return Err(LeonardError::UnusableField(format!(
                "d - 2i for d = {d} in GF({p})"
            )));
        }
    }
    let n = d + 1;
    let mut a = Matrix::zeros(field, n, n);
    for i in 0..n {
        if i > 0 {
            a.set(i, i - 1, field.from_i64(i as i64));
        }
        if i < d {
            a.set(i, i + 1, field.from_i64((d - i) as i64));
        }
    }
    let thetas: Vec<Scalar> = (0..n)
        .map(|i| field.from_i64(d as i64 - 2 * i as i64))
        .collect();
    let a_star = Matrix::diagonal(field, &thetas)?;
    LeonardCandidate::new(a, a_star, thetas)
}

/// `A ↦ uA + vI`, `A* ↦ u*A* + v*I`, with the eigenvalues mapped alike.
pub fn affine_transform(
    c: &LeonardCandidate,
    u: &Scalar,
    v: &Scalar,
    u_star: &Scalar,
    v_star: &Scalar,
) -> Result<LeonardCandidate, LeonardError> {
    let f = c.field();
    if [u, v, u_star, v_star].iter().any(|s| s.field() != f) {
        return Err(LeonardError::InvalidArgument(
            "scalars from a different field".into(),
        ));
    }
    if u.is_zero() || u_star.is_zero() {
        return Err(LeonardError::InvalidArgument("zero scaling".into()));
    }
    let map = |t: &Scalar, s: &Scalar, o: &Scalar| &(t * s) + o;
    Ok(LeonardCandidate {
        d: c.d,
        a: c.a.scale(u).shift(v),
        a_star: c.a_star.scale(u_star).shift(v_star),
        thetas: c.thetas.iter().map(|t| map(t, u, v)).collect(),
        theta_stars: c
            .theta_stars
            .iter()
            .map(|t| map(t, u_star, v_star))
            .collect(),
    })
}

fn first_repeat(xs: &[Scalar]) -> Option<(usize, usize)> {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] == xs[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// `E_i = Π_{j≠i} (m - θ_j I)/(θ_i - θ_j)`, after checking the `θ` are
/// distinct and that `Π_j (m - θ_j I) = 0`.
pub fn primitive_idempotents(m: &Matrix, thetas: &[Scalar]) -> Result<Vec<Matrix>, LeonardError> {
    let f = m.field();
    let n = m.rows();
    if !m.is_square() || thetas.len() != n {
        return Err(LeonardError::Malformed(format!(
            "{} eigenvalues for a {}x{} matrix",
            thetas.len(),
            m.rows(),
            m.cols()
        )));
    }
    if let Some((i, j)) = first_repeat(thetas) {
        return Err(LeonardError::Axiom {
            axiom: Axiom::MultiplicityFree,
            message: format!("eigenvalues {i} and {j} coincide ({})", thetas[i]),
        });
    }
    let shifted: Vec<Matrix> = thetas.iter().map(|t| m.shift(&-t)).collect();
    let mut annihilator = Matrix::identity(f, n);
    for s in &shifted {
        annihilator = &annihilator * s;
    }
    if let Some((r, c, x)) = annihilator.first_nonzero() {
        return Err(LeonardError::Axiom {
            axiom: Axiom::IdempotentsOfA,
            message: format!(
                "the claimed eigenvalues do not annihilate the matrix: product of (A - θ_j I) has entry ({r}, {c}) = {x}"
            ),
        });
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = Matrix::identity(f, n);
        let mut denom = f.one();
        for j in (0..n).filter(|&j| j != i) {
            e = &e * &shifted[j];
            denom = &denom * &(&thetas[i] - &thetas[j]);
        }
        out.push(e.scale(&denom.inv().expect("distinct eigenvalues")));
    }
    Ok(out)
}

/// The antiautomorphism `X ↦ S⁻¹ Xᵀ S` fixing `A` and `A*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dagger {
    s: Matrix,
    s_inv: Matrix,
}

impl Dagger {
    /// `S`, normalized so its first nonzero entry (row-major) is 1.
    pub fn s_mat(&self) -> &Matrix {
        &self.s
    }

    pub fn apply(&self, x: &Matrix) -> Matrix {
        &(&self.s_inv * &x.transpose()) * &self.s
    }
}

/// Solves `S·A = Aᵀ·S`, `S·A* = A*ᵀ·S` for `S`. The solution space must be
/// one-dimensional and its generator invertible.
pub fn dagger_map(c: &LeonardCandidate) -> Result<Dagger, LeonardError> {
    let f = c.field();
    let n = c.order();
    let nn = n * n;
    let mut sys = Matrix::zeros(f, 2 * nn, nn);
    for (block, m) in [&c.a, &c.a_star].into_iter().enumerate() {
        // (S·M - Mᵀ·S)[i][j] = Σ_k s[i][k]·m[k][j] - Σ_k m[k][i]·s[k][j]
        for i in 0..n {
            for j in 0..n {
                let row = block * nn + i * n + j;
                for k in 0..n {
                    let x = m.get(k, j);
                    if !x.is_zero() {
                        let v = sys.get(row, i * n + k) + x;
                        sys.set(row, i * n + k, v);
                    }
                    let y = m.get(k, i);
                    if !y.is_zero() {
                        let v = sys.get(row, k * n + j) - y;
                        sys.set(row, k * n + j, v);
                    }
                }
            }
        }
    }
    let mut basis = nullspace(&sys);
    if basis.len() != 1 {
        return Err(LeonardError::DaggerNotUnique(basis.len()));
    }
    // The echelon-form generator already has leading entry 1.
    let s = Matrix::from_vector(f, n, basis.pop().expect("one vector"))?;
    let s_inv = s.inverse().map_err(|_| LeonardError::DaggerSingular)?;
    Ok(Dagger { s, s_inv })
}

/// A validated Leonard system in the working basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeonardSystem {
    candidate: LeonardCandidate,
    e: Vec<Matrix>,
    e_star: Vec<Matrix>,
    dagger: Dagger,
}

impl LeonardSystem {
    pub fn candidate(&self) -> &LeonardCandidate {
        &self.candidate
    }

    pub fn d(&self) -> usize {
        self.candidate.d
    }

    pub fn order(&self) -> usize {
        self.candidate.d + 1
    }

    pub fn field(&self) -> FieldSpec {
        self.candidate.field()
    }

    pub fn a(&self) -> &Matrix {
        &self.candidate.a
    }

    pub fn a_star(&self) -> &Matrix {
        &self.candidate.a_star
    }

    pub fn thetas(&self) -> &[Scalar] {
        &self.candidate.thetas
    }

    pub fn theta_stars(&self) -> &[Scalar] {
        &self.candidate.theta_stars
    }

    /// Primitive idempotents `E_0, …, E_d` of `A`.
    pub fn e(&self) -> &[Matrix] {
        &self.e
    }

    /// Primitive idempotents `E*_0, …, E*_d` of `A*` (diagonal units).
    pub fn e_star(&self) -> &[Matrix] {
        &self.e_star
    }

    pub fn dagger(&self) -> &Dagger {
        &self.dagger
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.order())
    }
}

fn support_check(
    axiom: Axiom,
    product: &'static str,
    i: usize,
    j: usize,
    m: &Matrix,
) -> Result<(), LeonardError> {
    let gap = i.abs_diff(j);
    if gap > 1 {
        if let Some((row, col, x)) = m.first_nonzero() {
            return Err(LeonardError::Support {
                axiom,
                product,
                i,
                j,
                failure: SupportFailure::OutsideBand,
                row,
                col,
                entry: x.to_string(),
            });
        }
    } else if gap == 1 && m.is_zero() {
        return Err(LeonardError::Support {
            axiom,
            product,
            i,
            j,
            failure: SupportFailure::Reducible,
            row: i,
            col: j,
            entry: "0".into(),
        });
    }
    Ok(())
}

/// Checks every defining condition of a Leonard system and returns the
/// validated bundle. Errors name the violated condition and location.
pub fn validate(c: &LeonardCandidate) -> Result<LeonardSystem, LeonardError> {
    c.check_shape()?;
    let f = c.field();
    let n = c.order();

    // (v) in the working basis: E*_i A E*_j is A[i][j] times a matrix unit.
    for i in 0..n {
        for j in 0..n {
            let x = c.a.get(i, j);
            let gap = i.abs_diff(j);
            let failure = if gap > 1 && !x.is_zero() {
                SupportFailure::OutsideBand
            } else if gap == 1 && x.is_zero() {
                SupportFailure::Reducible
            } else {
                continue;
            };
            return Err(LeonardError::Support {
                axiom: Axiom::Tridiagonal,
                product: "E*_i A E*_j",
                i,
                j,
                failure,
                row: i,
                col: j,
                entry: x.to_string(),
            });
        }
    }
    if let Some((i, j)) = first_repeat(&c.theta_stars) {
        return Err(LeonardError::Axiom {
            axiom: Axiom::MultiplicityFree,
            message: format!(
                "A* has repeated eigenvalue {} at positions {i} and {j}",
                c.theta_stars[i]
            ),
        });
    }

    let e = primitive_idempotents(&c.a, &c.thetas)?;
    let e_star: Vec<Matrix> = (0..n)
        .map(|i| {
            let mut u = Matrix::zeros(f, n, n);
            u.set(i, i, f.one());
            u
        })
        .collect();

    // (iv)
    let left: Vec<Matrix> = e.iter().map(|ei| ei * &c.a_star).collect();
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) == 0 {
                continue;
            }
            let m = &left[i] * &e[j];
            support_check(Axiom::DualTridiagonal, "E_i A* E_j", i, j, &m)?;
        }
    }

    let dagger = dagger_map(c)?;
    Ok(LeonardSystem {
        candidate: c.clone(),
        e,
        e_star,
        dagger,
    })
}

/// For every `i`: `rank(E_i E*_0) = 1` and `rank(E*_i E_0) = 1`.
pub fn verify_v_generation(ls: &LeonardSystem) -> bool {
    (0..ls.order())
        .all(|i| rank(&(&ls.e[i] * &ls.e_star[0])) == 1 && rank(&(&ls.e_star[i] * &ls.e[0])) == 1)
}

/// Conjugates `A` by `diag(g)`; `A*` is unchanged. The result satisfies the
/// same defining conditions whenever the input does.
pub fn gauge_transform(
    c: &LeonardCandidate,
    g: &[Scalar],
) -> Result<LeonardCandidate, LeonardError> {
    let f = c.field();
    let dg = Matrix::diagonal(f, g)?;
    let inv = dg
        .inverse()
        .map_err(|_| LeonardError::InvalidArgument("singular gauge".into()))?;
    Ok(LeonardCandidate {
        a: &(&dg * &c.a) * &inv,
        ..c.clone()
    })
}
