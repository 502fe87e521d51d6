mod common;

use common::{kraw, shifted, stock, Q};
use leonard_core::awrel::{
    aw_params, aw_residuals, b_matrix, bipartite_flags, solve_aw_system, upsilon_apply,
    upsilon_report, upsilon_star_apply, verify_bipartite_nonvanishing, AwParams, Which,
};
use leonard_core::linalg::{in_span, matrix_span_dim};
use leonard_core::xspace::compute_x;
use leonard_core::{AwError, FieldSpec, LeonardSystem, Matrix, Scalar};
use proptest::prelude::*;

/// `x²y − βxyx + yx² − γ(xy + yx) − ϱy`, written out independently.
fn raw_map(x: &Matrix, y: &Matrix, beta: &Scalar, gamma: &Scalar, rho: &Scalar) -> Matrix {
    let xx = x * x;
    let t1 = &xx * y;
    let t2 = (&(x * y) * x).scale(beta);
    let t3 = y * &xx;
    let t4 = (&(x * y) + &(y * x)).scale(gamma);
    let t5 = y.scale(rho);
    &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
}

fn ups(ls: &LeonardSystem, p: &AwParams, x: &Matrix) -> Matrix {
    raw_map(ls.a(), x, &p.beta, &p.gamma, &p.rho)
}

fn ups_star(ls: &LeonardSystem, p: &AwParams, x: &Matrix) -> Matrix {
    raw_map(ls.a_star(), x, &p.beta, &p.gamma_star, &p.rho_star)
}

/// `c2·m² + c1·m + c0·I` and its product with `m`.
fn quad(m: &Matrix, c2: &Scalar, c1: &Scalar, c0: &Scalar) -> Matrix {
    let i = Matrix::identity(m.field(), m.order());
    &(&(m * m).scale(c2) + &m.scale(c1)) + &i.scale(c0)
}

fn systems(d: usize) -> Vec<LeonardSystem> {
    let mut v = stock(d, Q);
    v.extend(stock(d, FieldSpec::Prime(101)));
    v
}

#[test]
fn krawtchouk_d3_parameters() {
    let ls = kraw(3, Q);
    let p = aw_params(&ls).unwrap();
    let n = |k: i64| Q.from_i64(k);
    assert_eq!(
        (&p.beta, &p.gamma, &p.gamma_star, &p.rho, &p.rho_star),
        (&n(2), &n(0), &n(0), &n(4), &n(4))
    );
    assert_eq!((&p.omega, &p.eta, &p.eta_star), (&n(0), &n(0), &n(0)));
    assert!(p.unique);
    // Oracle: the full eight-unknown linear solve lands on the same values.
    assert_eq!(solve_aw_system(&ls).unwrap().unwrap(), p);
    assert_eq!(
        leonard_core::serial::canonical_json(&p.to_json()),
        r#"{"beta":"2","eta":"0","eta_star":"0","gamma":"0","gamma_star":"0","omega":"0","rho":"4","rho_star":"4","unique":true}"#
    );
}

#[test]
fn relations_hold_exactly_for_d3_to_d6() {
    for d in 3..=6 {
        for ls in systems(d) {
            let p = aw_params(&ls).unwrap();
            let (r1, r2) = aw_residuals(&ls, &p);
            assert!(r1.is_zero() && r2.is_zero());
            // Independent residual: Υ(A*) must equal γ*A² + ωA + ηI.
            assert_eq!(
                ups(&ls, &p, ls.a_star()),
                quad(ls.a(), &p.gamma_star, &p.omega, &p.eta)
            );
            assert_eq!(
                ups_star(&ls, &p, ls.a()),
                quad(ls.a_star(), &p.gamma, &p.omega, &p.eta_star)
            );
            // Closed form and full linear solve agree when the answer is unique.
            assert_eq!(solve_aw_system(&ls).unwrap().unwrap(), p);
        }
    }
}

#[test]
fn small_diameters_get_some_solution() {
    for d in 1..=2 {
        for ls in systems(d) {
            let p = aw_params(&ls).unwrap();
            assert!(!p.unique);
            let (r1, r2) = aw_residuals(&ls, &p);
            assert!(r1.is_zero() && r2.is_zero());
        }
    }
}

#[test]
fn affine_parameter_transport() {
    // θ → uθ + v sends β → β, γ → uγ + v(2 − β), ϱ → u²ϱ when β = 2.
    let base = aw_params(&kraw(4, Q)).unwrap();
    let moved = aw_params(&shifted(4, Q, 3, 1, 1, 0)).unwrap();
    assert_eq!(base.beta, moved.beta);
    assert_eq!(base.beta, Q.from_i64(2));
    assert!(moved.gamma.is_zero());
    assert_eq!(moved.rho, Q.from_i64(36));
    assert_eq!(moved.rho_star, base.rho_star);
}

#[test]
fn image_formulas_and_starred_mirrors() {
    for d in 3..=5 {
        for ls in systems(d) {
            let p = aw_params(&ls).unwrap();
            let (a, s) = (ls.a(), ls.a_star());
            let i = ls.identity();
            let b = b_matrix(&ls, &p, Which::Upsilon);
            let bs = b_matrix(&ls, &p, Which::UpsilonStar);
            let two = ls.field().from_i64(2);
            let two_minus_beta = &two - &p.beta;
            assert_eq!(b, quad(a, &two_minus_beta, &(&-&two * &p.gamma), &-&p.rho));
            assert_eq!(
                bs,
                quad(s, &two_minus_beta, &(&-&two * &p.gamma_star), &-&p.rho_star)
            );

            let c = quad(a, &p.gamma_star, &p.omega, &p.eta);
            let cs = quad(s, &p.gamma, &p.omega, &p.eta_star);
            let (as_, sa) = (a * s, s * a);
            assert_eq!(ups(&ls, &p, &i), b);
            assert_eq!(ups(&ls, &p, a), a * &b);
            assert_eq!(ups(&ls, &p, s), c);
            assert_eq!(ups(&ls, &p, &as_), a * &c);
            assert_eq!(ups(&ls, &p, &sa), a * &c);
            assert_eq!(ups_star(&ls, &p, &i), bs);
            assert_eq!(ups_star(&ls, &p, s), s * &bs);
            assert_eq!(ups_star(&ls, &p, a), cs);
            assert_eq!(ups_star(&ls, &p, &sa), s * &cs);
            assert_eq!(ups_star(&ls, &p, &as_), s * &cs);

            // The library maps agree with the raw formula on the spanning set.
            for x in [&i, a, s, &as_, &sa] {
                assert_eq!(upsilon_apply(&ls, &p, x).unwrap(), ups(&ls, &p, x));
                assert_eq!(
                    upsilon_star_apply(&ls, &p, x).unwrap(),
                    ups_star(&ls, &p, x)
                );
            }
        }
    }
}

#[test]
fn krawtchouk_d3_upsilon_of_identity() {
    let ls = kraw(3, Q);
    let p = aw_params(&ls).unwrap();
    let expected = ls.identity().scale(&Q.from_i64(-4));
    assert_eq!(upsilon_apply(&ls, &p, &ls.identity()).unwrap(), expected);
    assert_eq!(
        upsilon_star_apply(&ls, &p, &ls.identity()).unwrap(),
        expected
    );
}

#[test]
fn upsilon_refuses_matrices_outside_x() {
    let ls = kraw(3, Q);
    let p = aw_params(&ls).unwrap();
    let a2 = ls.a().pow(2);
    assert!(matches!(upsilon_apply(&ls, &p, &a2), Err(AwError::Domain)));
    assert!(matches!(
        upsilon_star_apply(&ls, &p, &a2),
        Err(AwError::Domain)
    ));
}

#[test]
fn kernel_and_image_containments() {
    for d in 1..=5 {
        for ls in systems(d) {
            let p = aw_params(&ls).unwrap();
            let comm = &(ls.a() * ls.a_star()) - &(ls.a_star() * ls.a());
            for (which, gen) in [(Which::Upsilon, ls.a()), (Which::UpsilonStar, ls.a_star())] {
                let rep = upsilon_report(&ls, &p, which).unwrap();
                let image = match which {
                    Which::Upsilon => ups(&ls, &p, &comm),
                    Which::UpsilonStar => ups_star(&ls, &p, &comm),
                };
                assert!(image.is_zero());
                let powers: Vec<Matrix> = (0..=3.min(d) as u32).map(|e| gen.pow(e)).collect();
                let refs: Vec<&Matrix> = powers.iter().collect();
                for m in &rep.image_basis {
                    assert!(in_span(m, &refs).unwrap().is_some());
                }
                assert_eq!(rep.kernel_dim + rep.image_dim, 5.min(compute_x(&ls).dim()));
                if d >= 3 {
                    assert_eq!(rep.equality_i, rep.equality_ii);
                    assert_eq!(rep.target_dim, 4);
                }
            }
        }
    }
}

#[test]
fn krawtchouk_bipartite_kernels_and_images() {
    for d in 3..=5 {
        for f in [Q, FieldSpec::Prime(101)] {
            let ls = kraw(d, f);
            let flags = bipartite_flags(&ls);
            assert!(flags.bipartite && flags.dual_bipartite);
            let p = aw_params(&ls).unwrap();
            assert!(verify_bipartite_nonvanishing(&ls, &p).unwrap());
            let (a, s) = (ls.a(), ls.a_star());
            let (as_, sa) = (a * s, s * a);

            let rs = upsilon_report(&ls, &p, Which::UpsilonStar).unwrap();
            assert_eq!((rs.kernel_dim, rs.image_dim), (3, 2));
            assert!(!rs.equality_i && !rs.equality_ii);
            let ker_star = [a.clone(), as_.clone(), sa.clone()];
            same_span(&kernel_mats(&ls, &rs.kernel_basis), &ker_star);
            let bs = b_matrix(&ls, &p, Which::UpsilonStar);
            same_span(&rs.image_basis, &[bs.clone(), s * &bs]);

            let r = upsilon_report(&ls, &p, Which::Upsilon).unwrap();
            assert_eq!((r.kernel_dim, r.image_dim), (3, 2));
            let ker = [s.clone(), sa.clone(), as_.clone()];
            same_span(&kernel_mats(&ls, &r.kernel_basis), &ker);
            let b = b_matrix(&ls, &p, Which::Upsilon);
            same_span(&r.image_basis, &[b.clone(), a * &b]);
        }
    }
}

#[test]
fn translated_bipartite_system_keeps_large_kernels() {
    // The flags look at diagonals, so translating A and A* clears them, but
    // Υ and Υ* only see differences of eigenvalues and keep their kernels.
    let ls = shifted(3, Q, 1, 1, 1, 1);
    let flags = bipartite_flags(&ls);
    assert!(!flags.bipartite && !flags.dual_bipartite);
    let p = aw_params(&ls).unwrap();
    for which in [Which::Upsilon, Which::UpsilonStar] {
        let r = upsilon_report(&ls, &p, which).unwrap();
        assert_eq!((r.kernel_dim, r.image_dim), (3, 2));
    }
}

fn kernel_mats(ls: &LeonardSystem, coords: &[Vec<Scalar>]) -> Vec<Matrix> {
    let span = leonard_core::xspace::spanning_set(ls);
    let refs: Vec<&Matrix> = span.iter().collect();
    coords
        .iter()
        .map(|c| Matrix::linear_combination(c, &refs).unwrap())
        .collect()
}

fn same_span(xs: &[Matrix], ys: &[Matrix]) {
    let dx = matrix_span_dim(xs);
    let dy = matrix_span_dim(ys);
    let mut all = xs.to_vec();
    all.extend(ys.iter().cloned());
    assert_eq!((dx, dx), (dy, matrix_span_dim(&all)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn upsilon_is_linear_on_x(
        d in 3usize..=5,
        which in 0usize..3,
        cx in prop::collection::vec(-9i64..=9, 5),
        cy in prop::collection::vec(-9i64..=9, 5),
        s in -9i64..=9,
    ) {
        let f = FieldSpec::Prime(101);
        let ls = stock(d, f).swap_remove(which);
        let p = aw_params(&ls).unwrap();
        let span = leonard_core::xspace::spanning_set(&ls);
        let refs: Vec<&Matrix> = span.iter().collect();
        let to = |c: &[i64]| {
            let cs: Vec<Scalar> = c.iter().map(|k| f.from_i64(*k)).collect();
            Matrix::linear_combination(&cs, &refs).unwrap()
        };
        let (x, y) = (to(&cx), to(&cy));
        let k = f.from_i64(s);
        let combo = &x.scale(&k) + &y;
        for apply in [upsilon_apply, upsilon_star_apply] {
            let lhs = apply(&ls, &p, &combo).unwrap();
            let rhs = &apply(&ls, &p, &x).unwrap().scale(&k) + &apply(&ls, &p, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
