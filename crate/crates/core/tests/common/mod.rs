#![allow(dead_code)]

use leonard_core::leonard::{affine_transform, krawtchouk_family, validate};
use leonard_core::{FieldSpec, LeonardSystem, Matrix, Scalar};

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn kraw(d: usize, f: FieldSpec) -> LeonardSystem {
    validate(&krawtchouk_family(d, f).unwrap()).unwrap()
}

pub fn shifted(d: usize, f: FieldSpec, u: i64, v: i64, us: i64, vs: i64) -> LeonardSystem {
    let c = krawtchouk_family(d, f).unwrap();
    let t = affine_transform(
        &c,
        &f.from_i64(u),
        &f.from_i64(v),
        &f.from_i64(us),
        &f.from_i64(vs),
    )
    .unwrap();
    validate(&t).unwrap()
}

/// Krawtchouk systems plus a few affine images, over the given field.
pub fn stock(d: usize, f: FieldSpec) -> Vec<LeonardSystem> {
    vec![
        kraw(d, f),
        shifted(d, f, 2, 5, 1, 0),
        shifted(d, f, 3, -1, -2, 7),
    ]
}

pub fn mat(f: FieldSpec, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_i64_rows(f, rows)
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Q.from_ratio(n, d).unwrap()
}

/// Deterministic pseudo-random square matrix with entries in -5..=5.
pub fn pseudo_random(f: FieldSpec, n: usize, seed: u64) -> Matrix {
    let mut s = seed
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    let mut m = Matrix::zeros(f, n, n);
    for r in 0..n {
        for c in 0..n {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            m.set(r, c, f.from_i64(((s >> 33) % 11) as i64 - 5));
        }
    }
    m
}
