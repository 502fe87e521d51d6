//! Askey-Wilson parameters, the maps Υ and Υ* on X, and the bipartite
//! dichotomy for their kernels and images.
//!
//! With `(β, γ, γ*, ϱ, ϱ*, ω, η, η*)` the relations read
//!
//! ```text
//! A²A* − βAA*A + A*A² − γ(AA* + A*A) − ϱA* = γ*A² + ωA + ηI
//! A*²A − βA*AA* + AA*² − γ*(A*A + AA*) − ϱ*A = γA*² + ωA* + η*I
//! ```
//!
//! and `Υ(X) = A²X − βAXA + XA² − γ(AX + XA) − ϱX`, with `Υ*` obtained by
//! swapping the roles of `A` and `A*`.

use serde_json::{json, Value};

use crate::error::AwError;
use crate::leonard::LeonardSystem;
use crate::linalg::{
    in_span, matrix_span_dim, nullspace, row_echelon_basis, solve, Matrix, Scalar,
};
use crate::serial::{matrix_to_json, scalars_to_json};
use crate::xspace::{satisfies_x_constraints, spanning_set, SPANNING_LABELS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AwParams {
    pub beta: Scalar,
    pub gamma: Scalar,
    pub gamma_star: Scalar,
    pub rho: Scalar,
    pub rho_star: Scalar,
    pub omega: Scalar,
    pub eta: Scalar,
    pub eta_star: Scalar,
    /// The parameters are determined by the system (true iff `d ≥ 3`).
    pub unique: bool,
}

impl AwParams {
    pub fn to_json(&self) -> Value {
        json!({
            "beta": self.beta.to_json(),
            "gamma": self.gamma.to_json(),
            "gamma_star": self.gamma_star.to_json(),
            "rho": self.rho.to_json(),
            "rho_star": self.rho_star.to_json(),
            "omega": self.omega.to_json(),
            "eta": self.eta.to_json(),
            "eta_star": self.eta_star.to_json(),
            "unique": self.unique,
        })
    }
}

fn aab(x: &Matrix, y: &Matrix) -> Matrix {
    &(x * x) * y
}

/// Residuals `LHS − RHS` of both relations; both vanish for valid parameters.
pub fn aw_residuals(ls: &LeonardSystem, p: &AwParams) -> (Matrix, Matrix) {
    (
        relation_residual(
            ls.a(),
            ls.a_star(),
            &p.beta,
            &p.gamma,
            &p.gamma_star,
            &p.rho,
            &p.omega,
            &p.eta,
        ),
        relation_residual(
            ls.a_star(),
            ls.a(),
            &p.beta,
            &p.gamma_star,
            &p.gamma,
            &p.rho_star,
            &p.omega,
            &p.eta_star,
        ),
    )
}

/// `x²y − βxyx + yx² − γ(xy + yx) − ϱy − γ'x² − ωx − ηI`.
#[allow(clippy::too_many_arguments)]
fn relation_residual(
    x: &Matrix,
    y: &Matrix,
    beta: &Scalar,
    gamma: &Scalar,
    gamma_other: &Scalar,
    rho: &Scalar,
    omega: &Scalar,
    eta: &Scalar,
) -> Matrix {
    let xy = x * y;
    let yx = y * x;
    let xx = x * x;
    let lhs = &(&(&(&xx * y) - &(&xy * x).scale(beta)) + &(&yx * x)) - &(&xy + &yx).scale(gamma);
    let lhs = &lhs - &y.scale(rho);
    let rhs = (&xx.scale(gamma_other) + &x.scale(omega)).shift(eta);
    &lhs - &rhs
}

/// Shared eigenvalue-formula checks: one value of `f(i)` for all `i` in range.
fn consistent(
    name: &'static str,
    range: std::ops::RangeInclusive<usize>,
    f: impl Fn(usize) -> Scalar,
) -> Result<Scalar, AwError> {
    let mut value: Option<Scalar> = None;
    for i in range {
        let v = f(i);
        match &value {
            None => value = Some(v),
            Some(w) if *w != v => return Err(AwError::Inconsistent { name, index: i }),
            _ => {}
        }
    }
    value.ok_or(AwError::OutOfRange { d: 0, min: 3 })
}

fn div(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_div(b).expect("distinct eigenvalues")
}

fn gamma_of(th: &[Scalar], beta: &Scalar, name: &'static str) -> Result<Scalar, AwError> {
    consistent(name, 1..=th.len() - 2, |i| {
        &(&th[i - 1] - &(beta * &th[i])) + &th[i + 1]
    })
}

fn rho_of(
    th: &[Scalar],
    beta: &Scalar,
    gamma: &Scalar,
    name: &'static str,
) -> Result<Scalar, AwError> {
    consistent(name, 1..=th.len() - 1, |i| {
        let (a, b) = (&th[i - 1], &th[i]);
        let t = &(&(a * a) - &(&(beta * a) * b)) + &(b * b);
        &t - &(gamma * &(a + b))
    })
}

/// Solves both relations for all eight parameters as one linear system,
/// taking free parameters to be zero. `None` when no solution exists.
pub fn solve_aw_system(ls: &LeonardSystem) -> Result<Option<AwParams>, AwError> {
    let (a, s) = (ls.a(), ls.a_star());
    let f = ls.field();
    let n = ls.order();
    let zero = Matrix::zeros(f, n, n);
    let i = ls.identity();
    let (as_, sa) = (a * s, s * a);
    let anti = &as_ + &sa;
    // Columns: β, γ, γ*, ϱ, ϱ*, ω, η, η*.
    let first = [
        &as_ * a,
        anti.clone(),
        a * a,
        s.clone(),
        zero.clone(),
        a.clone(),
        i.clone(),
        zero.clone(),
    ];
    let second = [
        &sa * s,
        s * s,
        anti,
        zero.clone(),
        a.clone(),
        s.clone(),
        zero,
        i,
    ];
    let rhs1 = &aab(a, s) + &(&sa * a);
    let rhs2 = &aab(s, a) + &(&as_ * s);
    let nn = n * n;
    let mut m = Matrix::zeros(f, 2 * nn, 8);
    for (col, (p, q)) in first.iter().zip(&second).enumerate() {
        for k in 0..nn {
            m.set(k, col, p.entries()[k].clone());
            m.set(nn + k, col, q.entries()[k].clone());
        }
    }
    let mut b = rhs1.vectorize();
    b.extend(rhs2.vectorize());
    Ok(solve(&m, &b)?.map(|x| {
        let mut it = x.into_iter();
        let mut next = || it.next().expect("eight unknowns");
        AwParams {
            beta: next(),
            gamma: next(),
            gamma_star: next(),
            rho: next(),
            rho_star: next(),
            omega: next(),
            eta: next(),
            eta_star: next(),
            unique: ls.d() >= 3,
        }
    }))
}

/// Extracts the Askey-Wilson parameters. For `d ≥ 3`, `β, γ, γ*, ϱ, ϱ*` come
/// from the eigenvalue formulas (checked for every admissible index) and
/// `ω, η, η*` from matching the relations; for `d ≤ 2` the canonical solution
/// of the relations is returned with `unique = false`.
pub fn aw_params(ls: &LeonardSystem) -> Result<AwParams, AwError> {
    let params = if ls.d() >= 3 {
        closed_form(ls)?
    } else {
        solve_aw_system(ls)?
            .ok_or_else(|| AwError::NotLeonard("Askey-Wilson relations have no solution".into()))?
    };
    let (r1, r2) = aw_residuals(ls, &params);
    if !r1.is_zero() || !r2.is_zero() {
        return Err(AwError::NotLeonard("nonzero Askey-Wilson residual".into()));
    }
    Ok(params)
}

fn closed_form(ls: &LeonardSystem) -> Result<AwParams, AwError> {
    let d = ls.d();
    let f = ls.field();
    let (th, ths) = (ls.thetas(), ls.theta_stars());
    let beta_plus_one =
        |t: &[Scalar], i: usize| div(&(&t[i - 2] - &t[i + 1]), &(&t[i - 1] - &t[i]));
    let beta = consistent("beta", 2..=d - 1, |i| beta_plus_one(th, i))?;
    let beta_star = consistent("beta (dual)", 2..=d - 1, |i| beta_plus_one(ths, i))?;
    if beta != beta_star {
        return Err(AwError::Inconsistent {
            name: "beta (dual)",
            index: 2,
        });
    }
    let beta = &beta - &f.one();
    let gamma = gamma_of(th, &beta, "gamma")?;
    let gamma_star = gamma_of(ths, &beta, "gamma_star")?;
    let rho = rho_of(th, &beta, &gamma, "rho")?;
    let rho_star = rho_of(ths, &beta, &gamma_star, "rho_star")?;

    // Match the remaining left-hand sides against ωA + ηI and ωA* + η*I.
    let zero = f.zero();
    let r1 = relation_residual(
        ls.a(),
        ls.a_star(),
        &beta,
        &gamma,
        &gamma_star,
        &rho,
        &zero,
        &zero,
    );
    let r2 = relation_residual(
        ls.a_star(),
        ls.a(),
        &beta,
        &gamma_star,
        &gamma,
        &rho_star,
        &zero,
        &zero,
    );
    let n = ls.order();
    let nn = n * n;
    let i = ls.identity();
    let mut m = Matrix::zeros(f, 2 * nn, 3);
    for k in 0..nn {
        m.set(k, 0, ls.a().entries()[k].clone());
        m.set(k, 1, i.entries()[k].clone());
        m.set(nn + k, 0, ls.a_star().entries()[k].clone());
        m.set(nn + k, 2, i.entries()[k].clone());
    }
    let mut b = r1.vectorize();
    b.extend(r2.vectorize());
    let x = solve(&m, &b)?
        .ok_or_else(|| AwError::NotLeonard("relations cannot be matched by ω, η, η*".into()))?;
    let [omega, eta, eta_star]: [Scalar; 3] = x.try_into().expect("three unknowns");
    Ok(AwParams {
        beta,
        gamma,
        gamma_star,
        rho,
        rho_star,
        omega,
        eta,
        eta_star,
        unique: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Which {
    Upsilon,
    UpsilonStar,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::Upsilon => "Upsilon",
            Which::UpsilonStar => "UpsilonStar",
        }
    }
}

/// The acting matrix and its parameters for one of the two maps.
struct Roles<'a> {
    act: &'a Matrix,
    beta: &'a Scalar,
    gamma: &'a Scalar,
    rho: &'a Scalar,
}

fn roles<'a>(ls: &'a LeonardSystem, p: &'a AwParams, which: Which) -> Roles<'a> {
    match which {
        Which::Upsilon => Roles {
            act: ls.a(),
            beta: &p.beta,
            gamma: &p.gamma,
            rho: &p.rho,
        },
        Which::UpsilonStar => Roles {
            act: ls.a_star(),
            beta: &p.beta,
            gamma: &p.gamma_star,
            rho: &p.rho_star,
        },
    }
}

impl Roles<'_> {
    fn apply(&self, x: &Matrix) -> Matrix {
        let a = self.act;
        let ax = a * x;
        let xa = x * a;
        let t = &(&(a * &ax) - &(&ax * a).scale(self.beta)) + &(&xa * a);
        &(&t - &(&ax + &xa).scale(self.gamma)) - &x.scale(self.rho)
    }

    /// `(2 − β)·a² − 2γ·a − ϱ·I`.
    fn b_mat(&self) -> Matrix {
        let f = self.act.field();
        let two = f.from_i64(2);
        let lead = &two - self.beta;
        let sq = self.act * self.act;
        (&sq.scale(&lead) - &self.act.scale(&(&two * self.gamma))).shift(&-self.rho)
    }

    /// `I, a, …, a^(k-1)` with `k = min(d + 1, 4)`, a basis of the span of
    /// `I, a, a², a³`.
    fn target_basis(&self) -> Vec<Matrix> {
        let k = self.act.rows().min(4);
        let mut out = vec![Matrix::identity(self.act.field(), self.act.rows())];
        for _ in 1..k {
            let next = out.last().expect("nonempty") * self.act;
            out.push(next);
        }
        out
    }
}

fn apply_checked(
    ls: &LeonardSystem,
    p: &AwParams,
    x: &Matrix,
    which: Which,
) -> Result<Matrix, AwError> {
    if !satisfies_x_constraints(ls, x) {
        return Err(AwError::Domain);
    }
    let r = roles(ls, p, which);
    let y = r.apply(x);
    let powers: Vec<Matrix> = (0..ls.order() as u32).map(|k| r.act.pow(k)).collect();
    let refs: Vec<&Matrix> = powers.iter().collect();
    if in_span(&y, &refs)?.is_none() {
        return Err(AwError::ImageOutsideAlgebra(which.name().into()));
    }
    Ok(y)
}

/// `Υ(X)`; errors unless `X` lies in X. The image is checked to lie in the
/// algebra generated by `A`.
pub fn upsilon_apply(ls: &LeonardSystem, p: &AwParams, x: &Matrix) -> Result<Matrix, AwError> {
    apply_checked(ls, p, x, Which::Upsilon)
}

/// `Υ*(X)`, the mirror of [`upsilon_apply`] with `A*` acting.
pub fn upsilon_star_apply(ls: &LeonardSystem, p: &AwParams, x: &Matrix) -> Result<Matrix, AwError> {
    apply_checked(ls, p, x, Which::UpsilonStar)
}

/// `B = (2−β)A² − 2γA − ϱI` or its starred analogue.
pub fn b_matrix(ls: &LeonardSystem, p: &AwParams, which: Which) -> Matrix {
    roles(ls, p, which).b_mat()
}

#[derive(Clone, Debug)]
pub struct UpsilonReport {
    pub which: Which,
    /// `k × 5` matrix: column `m` holds the coordinates of the image of the
    /// m-th element of `I, A, A*, AA*, A*A` in the basis `I, a, …, a^(k-1)`.
    pub matrix_of_map: Matrix,
    /// Coordinate vectors (over `I, A, A*, AA*, A*A`) spanning the kernel.
    pub kernel_basis: Vec<Vec<Scalar>>,
    /// Dimension of the kernel as a subspace of X.
    pub kernel_dim: usize,
    pub image_basis: Vec<Matrix>,
    pub image_dim: usize,
    /// Dimension of `span{I, a, a², a³}`.
    pub target_dim: usize,
    pub b_mat: Matrix,
    /// `B` and `aB` are linearly independent.
    pub b_independent: bool,
    /// Kernel equals `span{AA* − A*A}`.
    pub equality_i: bool,
    /// Image equals `span{I, a, a², a³}`.
    pub equality_ii: bool,
}

impl UpsilonReport {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.matrix_of_map.rows())
            .map(|r| scalars_to_json(self.matrix_of_map.row(r)))
            .collect();
        let target = ["I", "a", "a^2", "a^3"];
        json!({
            "which": self.which.name(),
            "matrix_of_map": rows,
            "domain_basis": SPANNING_LABELS,
            "target_basis": &target[..self.matrix_of_map.rows()],
            "kernel_basis": self.kernel_basis.iter().map(|v| scalars_to_json(v)).collect::<Vec<_>>(),
            "kernel_dim": self.kernel_dim,
            "image_basis": self.image_basis.iter().map(matrix_to_json).collect::<Vec<_>>(),
            "image_dim": self.image_dim,
            "target_dim": self.target_dim,
            "b_mat": matrix_to_json(&self.b_mat),
            "b_independent": self.b_independent,
            "equality_i": self.equality_i,
            "equality_ii": self.equality_ii,
        })
    }
}

/// Kernel and image of `Υ` or `Υ*` computed on the spanning set of X.
pub fn upsilon_report(
    ls: &LeonardSystem,
    p: &AwParams,
    which: Which,
) -> Result<UpsilonReport, AwError> {
    let d = ls.d();
    if d < 1 {
        return Err(AwError::OutOfRange { d, min: 1 });
    }
    let f = ls.field();
    let r = roles(ls, p, which);
    let span = spanning_set(ls);
    let targets = r.target_basis();
    let k = targets.len();
    let target_refs: Vec<&Matrix> = targets.iter().collect();

    let mut map = Matrix::zeros(f, k, 5);
    for (col, x) in span.iter().enumerate() {
        let y = r.apply(x);
        let coords = in_span(&y, &target_refs)?.ok_or_else(|| {
            AwError::ImageOutsideAlgebra(format!("{} under {}", SPANNING_LABELS[col], which.name()))
        })?;
        for (row, c) in coords.into_iter().enumerate() {
            map.set(row, col, c);
        }
    }

    let kernel_basis = nullspace(&map);
    let span_refs: Vec<&Matrix> = span.iter().collect();
    let kernel_mats: Vec<Matrix> = kernel_basis
        .iter()
        .map(|c| Matrix::linear_combination(c, &span_refs))
        .collect::<Result<_, _>>()?;
    let kernel_dim = matrix_span_dim(&kernel_mats);

    let commutator = &span[3] - &span[4];
    if !r.apply(&commutator).is_zero() {
        return Err(AwError::Identity(format!(
            "AA* − A*A is not in the kernel of {}",
            which.name()
        )));
    }

    let columns: Vec<Vec<Scalar>> = (0..5).map(|c| map.column(c)).collect();
    let image_coords = row_echelon_basis(f, k, &columns);
    let image_basis: Vec<Matrix> = image_coords
        .iter()
        .map(|c| Matrix::linear_combination(c, &target_refs))
        .collect::<Result<_, _>>()?;
    let image_dim = image_basis.len();
    let target_dim = k;

    let b_mat = r.b_mat();
    let b_independent = matrix_span_dim(&[b_mat.clone(), r.act * &b_mat]) == 2;

    let equality_i = kernel_dim == 1;
    let equality_ii = image_dim == target_dim;
    if d >= 3 && equality_i != equality_ii {
        return Err(AwError::Identity(format!(
            "kernel/image equality disagree for {} (kernel {kernel_dim}, image {image_dim})",
            which.name()
        )));
    }
    Ok(UpsilonReport {
        which,
        matrix_of_map: map,
        kernel_basis,
        kernel_dim,
        image_basis,
        image_dim,
        target_dim,
        b_mat,
        b_independent,
        equality_i,
        equality_ii,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BipartiteFlags {
    pub bipartite: bool,
    pub dual_bipartite: bool,
}

/// Bipartite: `E*_i A E*_i = 0` for all `i`; dual bipartite: `E_i A* E_i = 0`.
pub fn bipartite_flags(ls: &LeonardSystem) -> BipartiteFlags {
    let zero_sandwich = |es: &[Matrix], m: &Matrix| es.iter().all(|e| (&(e * m) * e).is_zero());
    BipartiteFlags {
        bipartite: zero_sandwich(ls.e_star(), ls.a()),
        dual_bipartite: zero_sandwich(ls.e(), ls.a_star()),
    }
}

/// For `1 ≤ i ≤ d−1`: `(2−β)θ_i² − 2γθ_i − ϱ = (θ_i − θ_{i−1})(θ_i − θ_{i+1})`
/// and the common value is nonzero. Requires `d ≥ 3`.
pub fn verify_bipartite_nonvanishing(ls: &LeonardSystem, p: &AwParams) -> Result<bool, AwError> {
    let d = ls.d();
    if d < 3 {
        return Err(AwError::OutOfRange { d, min: 3 });
    }
    let th = ls.thetas();
    let two = ls.field().from_i64(2);
    Ok((1..d).all(|i| {
        let t = &th[i];
        let lhs = &(&(&(&two - &p.beta) * &(t * t)) - &(&(&two * &p.gamma) * t)) - &p.rho;
        let rhs = &(t - &th[i - 1]) * &(t - &th[i + 1]);
        lhs == rhs && !lhs.is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leonard::{affine_transform, krawtchouk_family, validate};
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn kraw(d: usize) -> LeonardSystem {
        validate(&krawtchouk_family(d, Q).unwrap()).unwrap()
    }

    #[test]
    fn krawtchouk_three_parameters() {
        let p = aw_params(&kraw(3)).unwrap();
        assert_eq!(p.beta, Q.from_i64(2));
        assert!(p.gamma.is_zero() && p.gamma_star.is_zero());
        assert_eq!(p.rho, Q.from_i64(4));
        assert_eq!(p.rho_star, Q.from_i64(4));
        assert!(p.omega.is_zero() && p.eta.is_zero() && p.eta_star.is_zero());
        assert!(p.unique);
    }

    #[test]
    fn translation_keeps_beta_gamma_rho() {
        let c = krawtchouk_family(3, Q).unwrap();
        let t = affine_transform(&c, &Q.one(), &Q.one(), &Q.one(), &Q.zero()).unwrap();
        let ls = validate(&t).unwrap();
        let p = aw_params(&ls).unwrap();
        assert_eq!(p.beta, Q.from_i64(2));
        assert!(p.gamma.is_zero());
        assert_eq!(p.rho, Q.from_i64(4));
        let (r1, r2) = aw_residuals(&ls, &p);
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn low_diameter_parameters_are_flagged() {
        for d in 0..=2 {
            let p = aw_params(&kraw(d)).unwrap();
            assert!(!p.unique);
        }
    }

    #[test]
    fn upsilon_of_identity() {
        let ls = kraw(3);
        let p = aw_params(&ls).unwrap();
        let y = upsilon_apply(&ls, &p, &ls.identity()).unwrap();
        assert_eq!(y, ls.identity().scale(&Q.from_i64(-4)));
        let y = upsilon_star_apply(&ls, &p, &ls.identity()).unwrap();
        assert_eq!(y, ls.identity().scale(&Q.from_i64(-4)));
    }

    #[test]
    fn upsilon_domain_error() {
        let ls = kraw(3);
        let p = aw_params(&ls).unwrap();
        let mut x = Matrix::zeros(Q, 4, 4);
        x.set(3, 0, Q.one());
        assert!(matches!(upsilon_apply(&ls, &p, &x), Err(AwError::Domain)));
    }

    #[test]
    fn bipartite_krawtchouk() {
        for d in 0..=4 {
            let f = bipartite_flags(&kraw(d));
            assert!(f.bipartite && f.dual_bipartite, "d = {d}");
        }
        let c = krawtchouk_family(3, Q).unwrap();
        let t = affine_transform(&c, &Q.one(), &Q.one(), &Q.one(), &Q.zero()).unwrap();
        assert!(!bipartite_flags(&validate(&t).unwrap()).bipartite);
    }

    #[test]
    fn nonvanishing_requires_three() {
        let ls = kraw(2);
        let p = aw_params(&ls).unwrap();
        assert!(matches!(
            verify_bipartite_nonvanishing(&ls, &p),
            Err(AwError::OutOfRange { .. })
        ));
    }
}
