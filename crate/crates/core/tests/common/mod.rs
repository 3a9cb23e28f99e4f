#![allow(dead_code)]

use oreflag_core::ore::{NCPoly, OrePresentation};
use oreflag_core::{Field, Matrix, Scalar};
use proptest::prelude::*;

pub const Q: Field = Field::Rationals;

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn matrix(field: Field, n: usize, entries: &[i64]) -> Matrix {
    Matrix::from_entries(field, n, n, entries.iter().map(|&v| field.from_i64(v)).collect())
}

/// Invertible by construction: unit lower triangular times unit upper
/// triangular, both filled from `entries`.
pub fn invertible(field: Field, n: usize, entries: &[i64]) -> Matrix {
    let mut lower = Matrix::identity(field, n);
    let mut upper = Matrix::identity(field, n);
    let mut it = entries.iter().cycle();
    for r in 0..n {
        for c in 0..n {
            if r > c {
                lower.set(r, c, field.from_i64(*it.next().unwrap()));
            } else if r < c {
                upper.set(r, c, field.from_i64(*it.next().unwrap()));
            }
        }
    }
    &lower * &upper
}

/// Upper triangular matrix with the given diagonal; the strict part is
/// read from `above`.
pub fn upper(field: Field, diag: &[i64], above: &[i64]) -> Matrix {
    let n = diag.len();
    let mut m = Matrix::zeros(field, n, n);
    let mut it = above.iter().cycle();
    for (r, &d) in diag.iter().enumerate() {
        m.set(r, r, field.from_i64(d));
        for c in r + 1..n {
            m.set(r, c, field.from_i64(*it.next().unwrap()));
        }
    }
    m
}

pub fn conjugate_all(mats: &[Matrix], p: &Matrix) -> Vec<Matrix> {
    mats.iter().map(|m| m.conjugate_by(p)).collect()
}

pub fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

pub fn ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(small(), len)
}

/// A polynomial in normal form built from a few words with small
/// coefficients.
pub fn poly_from(p: &OrePresentation, words: &[(Vec<usize>, i64)]) -> NCPoly {
    let f = p.field();
    words.iter().fold(p.zero(), |acc, (w, c)| {
        let w: Vec<usize> = w.iter().map(|g| g % p.ngens().max(1)).collect();
        acc.add(&p.normal_form(&w, &f.from_i64(*c)))
    })
}

pub fn words() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..4, 0..4), -3i64..=3), 0..4)
}

pub fn scalar_of(field: Field, v: i64) -> Scalar {
    field.from_i64(v)
}
