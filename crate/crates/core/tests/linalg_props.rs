mod common;

use common::Q;
use leonard_core::linalg::{nullspace, rank, FieldSpec, Matrix};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn mat_vec(m: &Matrix, v: &[leonard_core::Scalar]) -> Vec<leonard_core::Scalar> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v)
                .fold(m.field().zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

proptest! {
    #[test]
    fn rank_nullity_and_kernel(rows in small_matrix(5, 6)) {
        for f in [Q, FieldSpec::Prime(7)] {
            let m = Matrix::from_i64_rows(f, &rows);
            let basis = nullspace(&m);
            prop_assert_eq!(rank(&m) + basis.len(), m.cols());
            for v in &basis {
                prop_assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(nullspace(&m), basis);
        }
    }

    #[test]
    fn prime_field_agrees_with_reduced_rationals(rows in small_matrix(4, 4)) {
        let p = 101;
        let mq = Matrix::from_i64_rows(Q, &rows);
        let mp = Matrix::from_i64_rows(FieldSpec::Prime(p), &rows);
        // Products commute with reduction unconditionally.
        let prod_q = &mq * &mq.transpose();
        let prod_p = &mp * &mp.transpose();
        let reduced: Vec<_> = prod_q.entries().iter().map(|x| x.reduce_mod(p).unwrap()).collect();
        prop_assert_eq!(reduced, prod_p.entries().to_vec());
        // Rank can only drop mod p; entries are tiny so it never does here
        // unless a minor happens to be divisible by 101.
        prop_assert!(rank(&mp) <= rank(&mq));
        if mq.is_square() {
            if let Ok(inv) = mq.inverse() {
                if inv.entries().iter().all(|x| x.reduce_mod(p).is_some()) {
                    let inv_p = mp.inverse().unwrap();
                    let red: Vec<_> = inv.entries().iter().map(|x| x.reduce_mod(p).unwrap()).collect();
                    prop_assert_eq!(red, inv_p.entries().to_vec());
                }
            }
        }
    }
}
