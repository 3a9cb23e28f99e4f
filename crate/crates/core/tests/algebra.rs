//! Rewriting, the text format, and modules over the built-in presentations.

mod common;

use std::sync::Arc;

use common::*;
use oreflag_core::corpus::EXAMPLES;
use oreflag_core::ore::{overlap_consistency_check, parse_presentation, to_dsl, NCPoly, OrePresentation};
use oreflag_core::rep::{
    evaluate, generated_algebra_basis, regular_basis, regular_module, submodule_closure, FDModule,
};
use oreflag_core::{Matrix, SpanBuilder, Vector};
use proptest::prelude::*;

const REWRITE_BUDGET: u64 = 100_000;

fn presentations() -> Vec<(&'static str, OrePresentation)> {
    EXAMPLES.iter().map(|e| (e.name, e.presentation())).collect()
}

fn modules() -> Vec<(&'static str, FDModule)> {
    EXAMPLES.iter().filter_map(|e| e.fd_module().map(|m| (e.name, m))).collect()
}

/// Every swap image `σ(x_i)·x_j + θ` has degree at most two.
fn quadratic_swaps(p: &OrePresentation) -> bool {
    (0..p.ngens()).all(|j| {
        (0..j).all(|i| {
            let r = p.right_rule(j, i);
            r.sigma.degree().unwrap_or(0) <= 1 && r.theta.degree().unwrap_or(0) <= 2
        })
    })
}

fn word_expansion(p: &OrePresentation, a: &NCPoly) -> NCPoly {
    a.terms().fold(p.zero(), |acc, (m, c)| acc.add(&p.normal_form(&m.word(), c)))
}

fn q_affine_text(qs: &[(i64, i64)], n: usize) -> String {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut text = format!("field Q\ngens {}\n", names.join(" "));
    let mut k = 0;
    for j in 0..n {
        for i in 0..j {
            let (a, b) = qs[k % qs.len()];
            k += 1;
            text += &format!("swap {} {} : sigma = {a}/{b}*{}\n", names[j], names[i], names[i]);
            text += &format!("leftswap {} {} : sigma = {b}/{a}*{}\n", names[i], names[j], names[i]);
        }
    }
    text
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in words(), b in words(), c in words()) {
        for (name, p) in presentations() {
            prop_assert!(overlap_consistency_check(&p).passed(), "{}", name);
            let (a, b, c) = (poly_from(&p, &a), poly_from(&p, &b), poly_from(&p, &c));
            prop_assert_eq!(p.mul(&p.mul(&a, &b), &c), p.mul(&a, &p.mul(&b, &c)), "{}", name);
        }
    }

    #[test]
    fn normal_form_is_idempotent(a in words()) {
        for (name, p) in presentations() {
            let a = poly_from(&p, &a);
            prop_assert_eq!(word_expansion(&p, &a), a, "{}", name);
        }
    }

    #[test]
    fn rewriting_stays_within_budget_and_degree(word in prop::collection::vec(0usize..4, 0..7)) {
        for (name, p) in presentations() {
            let w: Vec<usize> = word.iter().map(|g| g % p.ngens()).collect();
            let nf = p.normal_form_bounded(&w, &p.field().one(), REWRITE_BUDGET);
            prop_assert!(nf.is_some(), "{} exhausted the budget on {:?}", name, w);
            let (nf, _) = nf.unwrap();
            if quadratic_swaps(&p) {
                prop_assert!(nf.degree().unwrap_or(0) as usize <= w.len(), "{}", name);
            }
        }
    }

    #[test]
    fn text_format_round_trips(qs in prop::collection::vec((1i64..=5, 1i64..=5), 1..4), n in 1usize..=4) {
        let p = parse_presentation(&q_affine_text(&qs, n)).unwrap();
        prop_assert!(overlap_consistency_check(&p).passed());
        let again = parse_presentation(&to_dsl(&p)).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(to_dsl(&again), to_dsl(&p));
    }

    #[test]
    fn evaluation_is_multiplicative(a in words(), b in words(), t in ints(12)) {
        for (name, m) in modules() {
            let basis = invertible(m.field(), m.dim(), &t);
            let m = FDModule::new(m.presentation_arc().clone(), m.dim(), conjugate_all(m.actions(), &basis)).unwrap();
            prop_assert!(m.is_verified(), "{}", name);
            let p = m.presentation();
            let (a, b) = (poly_from(p, &a), poly_from(p, &b));
            let lhs = evaluate(&p.mul(&a, &b), &m).unwrap();
            let rhs = &evaluate(&a, &m).unwrap() * &evaluate(&b, &m).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", name);
        }
    }

    #[test]
    fn closure_matches_brute_force_word_span(seed in ints(4)) {
        for (name, m) in modules() {
            let n = m.dim();
            let f = m.field();
            let v: Vector = seed.iter().cycle().take(n).map(|&x| f.from_i64(x)).collect();
            let closure = submodule_closure(&m, std::slice::from_ref(&v));
            let mut span = SpanBuilder::new(f, n);
            let mut frontier = vec![v.clone()];
            span.insert(&v);
            for _ in 0..n {
                let mut next = Vec::new();
                for u in &frontier {
                    for a in m.actions() {
                        next.push(a.apply(u));
                    }
                }
                for u in &next {
                    span.insert(u);
                }
                frontier = next;
            }
            let brute = span.into_subspace();
            prop_assert_eq!(&closure, &brute, "{}", name);
            prop_assert!(closure.contains(&v));
            prop_assert!(m.actions().iter().all(|a| closure.is_invariant_under(a)));
        }
    }

    #[test]
    fn regular_module_is_faithful(a in words()) {
        for e in EXAMPLES {
            let p = e.presentation();
            let Ok(reg) = regular_module(&p) else { continue };
            let bounds: usize = (0..p.ngens()).map(|i| p.power_rule(i).unwrap().bound as usize).product();
            prop_assert_eq!(reg.dim(), bounds, "{}", e.name);
            prop_assert_eq!(regular_basis(&p).unwrap().len(), bounds);
            prop_assert!(reg.is_verified(), "{}", e.name);
            let a = poly_from(&p, &a);
            prop_assert_eq!(evaluate(&a, &reg).unwrap().is_zero(), a.is_zero(), "{}", e.name);
        }
    }

    #[test]
    fn generated_algebra_dimension_is_a_conjugation_invariant(t in ints(12)) {
        for (name, m) in modules() {
            let n = m.dim();
            let basis = invertible(m.field(), n, &t);
            let d0 = generated_algebra_basis(m.field(), n, m.actions()).unwrap().len();
            let d1 = generated_algebra_basis(m.field(), n, &conjugate_all(m.actions(), &basis)).unwrap().len();
            prop_assert!(d0 <= n * n, "{}", name);
            prop_assert_eq!(d0, d1, "{}", name);
        }
    }
}

#[test]
fn mismatched_modules_are_rejected() {
    let p = Arc::new(EXAMPLES[0].presentation());
    let wrong = vec![Matrix::identity(p.field(), 2)];
    assert!(FDModule::new(p, 2, wrong).is_err());
}
