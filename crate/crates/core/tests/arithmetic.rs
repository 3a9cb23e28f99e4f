//! Field axioms, root finding and the exact linear algebra layer.

mod common;

use common::*;
use oreflag_core::matrix::eval_at_matrix;
use oreflag_core::{char_poly, restrict_and_quotient, univariate_roots, Field, Matrix, Scalar, Subspace, UniPoly};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Q.fraction(n, d).unwrap())
}

fn residue(p: u64) -> impl Strategy<Value = Scalar> {
    (0..p as i64).prop_map(move |v| gf(p).from_i64(v))
}

fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(), TestCaseError> {
    let f = a.field();
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(a + &(-a)), &f.zero());
    prop_assert_eq!(&(a * &f.one()), a);
    if a.is_zero() {
        prop_assert!(a.inv().is_err());
    } else {
        prop_assert_eq!(&(a * &a.inv().unwrap()), &f.one());
        prop_assert_eq!(&(b * a).checked_div(a).unwrap(), b);
    }
    Ok(())
}

fn subspace(field: Field, n: usize, vecs: &[Vec<i64>]) -> Subspace {
    let vs: Vec<Vec<Scalar>> = vecs.iter().map(|v| v[..n].iter().map(|&x| field.from_i64(x)).collect()).collect();
    Subspace::span(field, n, &vs)
}

proptest! {
    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn residues_form_a_field(a in residue(7), b in residue(7), c in residue(7)) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn roots_over_prime_fields_match_brute_force(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
        coeffs in prop::collection::vec(-20i64..=20, 1..6),
    ) {
        let f = gf(p);
        let poly = UniPoly::from_i64(f, &coeffs);
        prop_assume!(!poly.is_zero());
        let found: Vec<Scalar> = univariate_roots(&poly).unwrap().into_iter().map(|(r, _)| r).collect();
        let brute: Vec<Scalar> = f.elements().unwrap().filter(|s| poly.eval(s).is_zero()).collect();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn rational_roots_are_exactly_the_planted_ones(
        roots in prop::collection::vec((-6i64..=6, 1i64..=4), 0..4),
        irreducible in any::<bool>(),
        scale in 1i64..=5,
    ) {
        let mut poly = UniPoly::from_i64(Q, &[scale]);
        let planted: Vec<Scalar> = roots.iter().map(|&(n, d)| Q.fraction(n, d).unwrap()).collect();
        for r in &planted {
            poly = poly.mul(&UniPoly::linear(r));
        }
        if irreducible {
            poly = poly.mul(&UniPoly::from_i64(Q, &[2, 0, 1]));
        }
        let found = univariate_roots(&poly).unwrap();
        for (r, m) in &found {
            prop_assert!(poly.eval(r).is_zero());
            prop_assert_eq!(*m, planted.iter().filter(|p| *p == r).count());
        }
        let total: usize = found.iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, planted.len());
    }

    #[test]
    fn char_poly_is_a_conjugation_invariant(n in 1usize..=4, m in ints(16), p in ints(12)) {
        for field in [Q, gf(5)] {
            let a = matrix(field, n, &m[..n * n]);
            let t = invertible(field, n, &p);
            prop_assert_eq!(char_poly(&a).unwrap(), char_poly(&a.conjugate_by(&t)).unwrap());
        }
    }

    #[test]
    fn cayley_hamilton(n in 1usize..=5, m in ints(25)) {
        for field in [Q, gf(3)] {
            let a = matrix(field, n, &m[..n * n]);
            prop_assert!(eval_at_matrix(&char_poly(&a).unwrap(), &a).is_zero());
        }
    }

    #[test]
    fn subspace_dimension_formula(
        u in prop::collection::vec(ints(4), 0..4),
        w in prop::collection::vec(ints(4), 0..4),
    ) {
        let (u, w) = (subspace(Q, 4, &u), subspace(Q, 4, &w));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.basis().iter().all(|v| u.contains(v) && w.contains(v)));
    }

    #[test]
    fn block_decomposition_reassembles(n in 2usize..=4, k in 1usize..=3, d in ints(4), a in ints(10), t in ints(12)) {
        let k = k.min(n - 1);
        let base = upper(Q, &d[..n], &a);
        let basis = invertible(Q, n, &t);
        let op = &(&basis * &base) * &basis.inverse().unwrap();
        let cols = basis.columns();
        let w = Subspace::span(Q, n, &cols[..k]);
        let blocks = restrict_and_quotient(&op, &w).unwrap();
        let mut rebuilt = Matrix::zeros(Q, n, n);
        for r in 0..n {
            for c in 0..n {
                let v = match (r < k, c < k) {
                    (true, true) => blocks.restricted.get(r, c).clone(),
                    (true, false) => blocks.coupling.get(r, c - k).clone(),
                    (false, false) => blocks.induced_on_quotient.get(r - k, c - k).clone(),
                    (false, true) => Q.zero(),
                };
                rebuilt.set(r, c, v);
            }
        }
        prop_assert_eq!(op.conjugate_by(&blocks.basis), rebuilt);
    }
}
