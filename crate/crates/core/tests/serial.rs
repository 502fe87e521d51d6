mod common;

use common::{shifted, stock, Q};
use leonard_core::serial::{
    candidate_from_json, candidate_to_json, canonical_json, matrix_from_str, matrix_to_string,
    system_from_json, system_to_json,
};
use leonard_core::{FieldSpec, LeonardError, Matrix};
use proptest::prelude::*;

#[test]
fn systems_round_trip_byte_for_byte() {
    for f in [Q, FieldSpec::Prime(101)] {
        for d in 1..=4 {
            for ls in stock(d, f) {
                let text = canonical_json(&system_to_json(&ls));
                let back = system_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
                assert_eq!(canonical_json(&system_to_json(&back)), text);

                let ctext = canonical_json(&candidate_to_json(ls.candidate()));
                let c = candidate_from_json(&serde_json::from_str(&ctext).unwrap()).unwrap();
                assert_eq!(&c, ls.candidate());
            }
        }
    }
}

#[test]
fn tampered_caches_are_rejected() {
    let ls = shifted(2, Q, 1, 0, 1, 0);
    let mut v = system_to_json(&ls);
    v["s_mat"]["rows"][0][0] = serde_json::json!("7");
    assert!(matches!(
        system_from_json(&v),
        Err(LeonardError::CacheMismatch(_))
    ));
}

#[test]
fn rationals_are_strings_and_residues_are_numbers() {
    let m = Matrix::from_rows(
        Q,
        2,
        &[
            vec![Q.from_ratio(-3, 6).unwrap(), Q.from_i64(4)],
            vec![Q.zero(), Q.from_ratio(8, 3).unwrap()],
        ],
    )
    .unwrap();
    assert_eq!(
        matrix_to_string(&m),
        r#"{"field":"Q","order":2,"rows":[["-1/2","4"],["0","8/3"]]}"#
    );
    let g = Matrix::from_i64_rows(FieldSpec::Prime(7), &[vec![-1, 9], vec![0, 3]]);
    assert_eq!(
        matrix_to_string(&g),
        r#"{"field":"GF(7)","order":2,"rows":[[6,2],[0,3]]}"#
    );
}

proptest! {
    #[test]
    fn matrices_round_trip(
        rows in prop::collection::vec(prop::collection::vec((-50i64..=50, 1i64..=9), 3), 3),
        prime in prop::sample::select(vec![0u64, 2, 7, 101]),
    ) {
        let f = if prime == 0 { Q } else { FieldSpec::Prime(prime) };
        let data: Vec<Vec<_>> = rows
            .iter()
            .map(|r| r.iter().map(|&(n, d)| f.from_ratio(n, d)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .unwrap_or_else(|_| vec![vec![f.zero(); 3]; 3]);
        let m = Matrix::from_rows(f, 3, &data).unwrap();
        let s = matrix_to_string(&m);
        let back = matrix_from_str(&s).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(matrix_to_string(&back), s);
    }
}
