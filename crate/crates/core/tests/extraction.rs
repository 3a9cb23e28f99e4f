//! Ideal chains of matrix algebras and the presentations read off them.

mod common;

use common::*;
use oreflag_core::extract::{extract_ore_datum, pointed_ideal_chain, ChainOutcome};
use oreflag_core::ore::{parse_presentation, to_dsl};
use oreflag_core::rep::{check_module, evaluate, regular_module};
use oreflag_core::triangularize::strict_triangularize_matrices;
use oreflag_core::Matrix;
use proptest::prelude::*;

/// Generators of a subalgebra of upper triangular matrices; diagonals drawn
/// from `{0, 1}` so that both local and split algebras occur.
fn generators() -> impl Strategy<Value = (usize, Vec<Matrix>)> {
    (2usize..=3, 1usize..=2, prop::collection::vec(prop::sample::select(vec![0i64, 0, 1]), 6), ints(6)).prop_map(
        |(n, k, diag, above)| {
            let mats = (0..k).map(|g| upper(Q, &diag[3 * g..3 * g + n], &above[g * 3..])).collect();
            (n, mats)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extracted_relations_hold_on_the_chain_elements((n, mats) in generators()) {
        let ChainOutcome::Chain(chain) = pointed_ideal_chain(Q, n, &mats).unwrap() else {
            return Err(TestCaseError::fail("upper triangular algebras are pointed"));
        };
        prop_assert_eq!(chain.len(), chain.algebra_basis.len());
        let ex = extract_ore_datum(&chain).unwrap();
        let p = &ex.presentation;
        prop_assert!(check_module(&ex.module).passed());
        prop_assert_eq!(ex.module.actions(), &ex.generators[..]);

        for j in 0..p.ngens() {
            for i in 0..j {
                prop_assert_eq!(&p.right_rule(j, i).sigma, &p.gen(i));
                let left = p.left_rule(j, i).unwrap();
                prop_assert_eq!(&left.theta, &p.right_rule(j, i).theta.scale(&-Q.one()));
            }
            prop_assert!(p.power_rule(j).is_some());
        }
        prop_assert_eq!(&parse_presentation(&to_dsl(p)).unwrap(), p);

        let nilpotent = ex.generators.iter().all(Matrix::is_nilpotent)
            && (0..p.ngens()).all(|j| {
                (0..j).all(|i| evaluate(&p.right_rule(j, i).theta, &ex.module).unwrap().is_nilpotent())
            });
        let reg = regular_module(p).unwrap();
        let strict = strict_triangularize_matrices(Q, reg.dim(), reg.actions()).unwrap();
        if nilpotent {
            prop_assert!(strict.success().is_some());
        }
        prop_assert_eq!(strict.success().is_some(), chain.is_local());
    }
}
