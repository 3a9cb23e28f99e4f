//! Ore-extension presentations: polynomials in normal order, the rewriting
//! engine, a small text format, and consistency checks.

mod consistency;
mod dsl;
mod poly;
mod presentation;

use alloc::string::String;

pub use consistency::{
    affine_sigma_inverse, datum_consistency, left_datum_from_right, overlap_consistency_check, ConsistencyReport,
    DatumMismatch, OverlapFailure,
};
pub use dsl::{parse_expression, parse_presentation, to_dsl};
pub use poly::{eval_at_values, DisplayPoly, Monomial, NCPoly};
pub use presentation::{OrePresentation, PowerRule, Rewriter, SwapRule};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("line {line}: rule for {hi}·{lo} uses generator {generator}, which is not below {hi}")]
    IndexViolation { line: usize, hi: String, lo: String, generator: String },
    #[error("line {line}: power relation for {generator}: {reason}")]
    PowerViolation { line: usize, generator: String, reason: String },
    #[error("rule tables do not match the number of generators")]
    Shape,
    #[error("polynomials over different fields")]
    FieldMismatch,
    #[error("claimed inverse of sigma at level {level} ({generator}) fails substitution")]
    NotInverse { level: usize, generator: String },
    #[error("left and right data disagree on {lo}·{hi}")]
    LeftDatumInconsistent { lo: String, hi: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    const QPLANE: &str = "field Q\ngens x y\nswap y x : sigma = 2*x, theta = 0\n";
    const HEIS: &str =
        "field Q\ngens z x y\nswap x z : sigma = z\nswap y z : sigma = z\nswap y x : sigma = x, theta = -z\n";
    const S3: &str = "field Q\ngens r s\npower r 3 = 1\npower s 2 = 1\nswap s r : sigma = r*r, theta = 0\n";
    const BOREL: &str = "field Q\ngens h e\nswap e h : sigma = h - 2\n";

    fn show(p: &OrePresentation, f: &NCPoly) -> alloc::string::String {
        f.display_with(p.names()).to_string()
    }

    #[test]
    fn quantum_plane_rewrites() {
        let p = parse_presentation(QPLANE).unwrap();
        let one = p.field().one();
        assert_eq!(show(&p, &p.normal_form(&[1, 0], &one)), "2*x*y");
        assert_eq!(show(&p, &p.normal_form(&[0, 1], &one)), "x*y");
        let x_plus_y = p.gen(0).add(&p.gen(1));
        assert_eq!(show(&p, &p.mul(&x_plus_y, &p.gen(0))), "x^2 + 2*x*y");
        assert_eq!(p.mul(&x_plus_y, &p.one()), x_plus_y);
        assert!(overlap_consistency_check(&p).passed());
    }

    #[test]
    fn heisenberg_commutator() {
        let p = parse_presentation(HEIS).unwrap();
        assert_eq!(show(&p, &p.normal_form(&[2, 1], &p.field().one())), "x*y - z");
        let report = overlap_consistency_check(&p);
        assert!(report.passed());
        assert_eq!(report.overlaps_checked, 1);
    }

    #[test]
    fn s3_power_relations() {
        let p = parse_presentation(S3).unwrap();
        assert_eq!(p.mul(&p.gen(1), &p.gen(1)), p.one());
        // s r = r^2 s, so (s r)^2 = r^2 (s s) r = r^3 = 1
        let sr = p.normal_form(&[1, 0, 1, 0], &p.field().one());
        assert_eq!(show(&p, &sr), "1");
        assert_eq!(show(&p, &p.normal_form(&[1, 0], &p.field().one())), "r^2*s");
        assert!(overlap_consistency_check(&p).passed());
    }

    #[test]
    fn inconsistent_twist_is_reported() {
        let text =
            "field Q\ngens z x y\nswap x z : sigma = 2*z\nswap y z : sigma = z\nswap y x : sigma = x, theta = -z\n";
        let p = parse_presentation(text).unwrap();
        let report = overlap_consistency_check(&p);
        let bad = report.first_failure().expect("must fail");
        assert_eq!(bad.word, vec![2, 1, 0]);
        assert_eq!(show(&p, &bad.left), "2*z*x*y - z^2");
        assert_eq!(show(&p, &bad.right), "2*z*x*y - 2*z^2");
    }

    #[test]
    fn expressions_multiply_in_any_order() {
        let p = parse_presentation(QPLANE).unwrap();
        assert_eq!(show(&p, &parse_expression(&p, "y x").unwrap()), "2*x*y");
        assert_eq!(show(&p, &parse_expression(&p, "y*x - 2 x y + 3").unwrap()), "3");
        assert_eq!(show(&p, &parse_expression(&p, "-1/2*y^2 x").unwrap()), "-2*x*y^2");
        assert!(parse_expression(&p, "y + + x").is_err());
        assert!(parse_expression(&p, "w").is_err());
    }

    #[test]
    fn heisenberg_with_theta_minus_x_is_still_associative() {
        let text =
            "field Q\ngens z x y\nswap x z : sigma = z\nswap y z : sigma = z\nswap y x : sigma = x, theta = -x\n";
        let p = parse_presentation(text).unwrap();
        assert!(overlap_consistency_check(&p).passed());
    }

    #[test]
    fn index_violation() {
        let err = parse_presentation("field Q\ngens x y\nswap y x : sigma = y\n").unwrap_err();
        assert!(matches!(err, PresentationError::IndexViolation { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn power_violation() {
        let err = parse_presentation("field Q\ngens x\npower x 2 = x^2\n").unwrap_err();
        assert!(matches!(err, PresentationError::PowerViolation { line: 3, .. }), "{err:?}");
        let err = parse_presentation("field Q\ngens x y\npower x 2 = y\n").unwrap_err();
        assert!(matches!(err, PresentationError::PowerViolation { .. }), "{err:?}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_presentation("field Q\ngens x y\nswap y x : sigma = 2*?\n").unwrap_err();
        assert_eq!(
            err,
            PresentationError::SyntaxError { line: 3, column: 22, message: "unexpected character '?'".into() }
        );
        let err = parse_presentation("field Q\ngens x y\nswap y x : sigma = y*x\n").unwrap_err();
        assert!(matches!(err, PresentationError::SyntaxError { line: 3, column: 22, .. }), "{err:?}");
        let err = parse_presentation("field Q\ngens x y\nswap x y : sigma = x\n").unwrap_err();
        assert!(matches!(err, PresentationError::SyntaxError { line: 3, column: 6, .. }), "{err:?}");
        let err = parse_presentation("field GF 6\ngens x\n").unwrap_err();
        assert!(matches!(err, PresentationError::SyntaxError { line: 1, column: 10, .. }), "{err:?}");
        assert!(parse_presentation("gens x\n").is_err());
    }

    #[test]
    fn dsl_round_trip() {
        for text in [
            QPLANE,
            HEIS,
            S3,
            BOREL,
            "field GF 5\ngens a b\npower a 5 = 0\nswap b a : sigma = 3*a, theta = 1/2*a^2 - 1\n",
        ] {
            let p = parse_presentation(text).unwrap();
            let emitted = to_dsl(&p);
            let q = parse_presentation(&emitted).unwrap();
            assert_eq!(p, q);
            assert_eq!(to_dsl(&q), emitted);
        }
    }

    #[test]
    fn left_datum_of_quantum_plane() {
        let p = parse_presentation(QPLANE).unwrap();
        let half = Field::Rationals.fraction(1, 2).unwrap();
        let inv = vec![vec![], vec![p.gen(0).scale(&half)]];
        let full = left_datum_from_right(&p, &inv).unwrap();
        let rule = full.left_rule(1, 0).unwrap();
        assert_eq!(show(&full, &rule.sigma), "1/2*x");
        assert!(rule.theta.is_zero());
        let wrong = vec![vec![], vec![p.gen(0)]];
        assert!(matches!(left_datum_from_right(&p, &wrong), Err(PresentationError::NotInverse { level: 1, .. })));
        assert_eq!(affine_sigma_inverse(&p).unwrap(), inv);
    }

    #[test]
    fn left_datum_of_borel() {
        let p = parse_presentation(BOREL).unwrap();
        let inv = affine_sigma_inverse(&p).unwrap();
        assert_eq!(show(&p, &inv[1][0]), "h + 2");
        let full = left_datum_from_right(&p, &inv).unwrap();
        assert_eq!(show(&full, &full.left_rule(1, 0).unwrap().sigma), "h + 2");
        assert!(overlap_consistency_check(&full).passed());
    }

    #[test]
    fn identity_twist_negates_theta() {
        let p = parse_presentation(HEIS).unwrap();
        let inv = affine_sigma_inverse(&p).unwrap();
        let full = left_datum_from_right(&p, &inv).unwrap();
        for hi in 0..3 {
            for lo in 0..hi {
                let (r, l) = (full.right_rule(hi, lo), full.left_rule(hi, lo).unwrap());
                assert_eq!(r.sigma, l.sigma);
                assert_eq!(l.theta, r.theta.scale(&-Field::Rationals.one()));
            }
        }
    }

    #[test]
    fn twisted_derivation_matches_rewriting() {
        let p = parse_presentation(BOREL).unwrap();
        let a = p.normal_form(&[0, 0, 0], &p.field().from_i64(3)).add(&p.gen(0));
        let xa = p.mul(&p.gen(1), &a);
        let expected = xa.sub(&p.mul(&p.sigma_right(1, &a), &p.gen(1)));
        assert_eq!(p.theta_right(1, &a), expected);
        let p = parse_presentation(HEIS).unwrap();
        let a: NCPoly = p.normal_form(&[0, 1, 1], &p.field().one()).add(&p.gen(1));
        let ya = p.mul(&p.gen(2), &a);
        assert_eq!(p.theta_right(2, &a), ya.sub(&p.mul(&p.sigma_right(2, &a), &p.gen(2))));
    }

    #[test]
    fn left_twisted_derivation_matches_rewriting() {
        let p = parse_presentation(HEIS).unwrap();
        let full = left_datum_from_right(&p, &affine_sigma_inverse(&p).unwrap()).unwrap();
        let a = full.normal_form(&[0, 1, 1], &full.field().one());
        // a·y = y·σ(a) + θ(a)
        let ay = full.mul(&a, &full.gen(2));
        let sig = full.sigma_left(2, &a).unwrap();
        let expected: NCPoly = ay.sub(&full.mul(&full.gen(2), &sig));
        assert_eq!(full.theta_left(2, &a).unwrap(), expected);
    }

    #[test]
    fn step_budget() {
        let p = parse_presentation(HEIS).unwrap();
        let word: Vec<usize> = [2, 1, 0].repeat(4);
        let (nf, steps) = p.normal_form_bounded(&word, &p.field().one(), 10_000).unwrap();
        assert_eq!(nf, p.normal_form(&word, &p.field().one()));
        assert!(steps > 0);
        assert!(p.normal_form_bounded(&word, &p.field().one(), 1).is_none());
    }
}
