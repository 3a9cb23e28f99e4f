//! Built-in example presentations, some with a small module.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::ore::{parse_presentation, OrePresentation};
use crate::rep::FDModule;

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    pub dsl: &'static str,
    /// Integer action matrices, one per generator, when the example ships a
    /// module.
    pub module: Option<&'static [&'static [&'static [i64]]]>,
}

impl Example {
    pub fn presentation(&self) -> OrePresentation {
        parse_presentation(self.dsl).expect("built-in examples parse")
    }

    pub fn module_matrices(&self) -> Option<Vec<Matrix>> {
        let p = self.presentation();
        self.module.map(|m| m.iter().map(|rows| Matrix::from_i64(p.field(), rows)).collect())
    }

    pub fn fd_module(&self) -> Option<FDModule> {
        let mats = self.module_matrices()?;
        let dim = mats.first().map_or(0, Matrix::rows);
        FDModule::new(Arc::new(self.presentation()), dim, mats).ok()
    }
}

const E12_2: &[&[i64]] = &[&[0, 1], &[0, 0]];

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "qplane-q2",
        summary: "quantum plane yx = 2xy over Q",
        dsl: "field Q\ngens x y\nswap y x : sigma = 2*x\nleftswap x y : sigma = 1/2*x\n",
        module: Some(&[E12_2, &[&[2, 0], &[0, 1]]]),
    },
    Example {
        name: "qplane-gf5",
        summary: "quantum plane yx = 2xy over GF(5); 2 has order 4",
        dsl: "field GF 5\ngens x y\nswap y x : sigma = 2*x\nleftswap x y : sigma = 3*x\n",
        module: Some(&[E12_2, &[&[2, 0], &[0, 1]]]),
    },
    Example {
        name: "qplane-qm1",
        summary: "anticommuting plane yx = -xy over Q",
        dsl: "field Q\ngens x y\nswap y x : sigma = -x\nleftswap x y : sigma = -x\n",
        module: Some(&[&[&[0, 1], &[1, 0]], &[&[1, 0], &[0, -1]]]),
    },
    Example {
        name: "qaffine3",
        summary: "quantum affine 3-space with commuting constants 2, 3, 1",
        dsl: "field Q\ngens x y z\n\
              swap y x : sigma = 2*x\nswap z x : sigma = 3*x\nswap z y : sigma = y\n\
              leftswap x y : sigma = 1/2*x\nleftswap x z : sigma = 1/3*x\nleftswap y z : sigma = y\n",
        module: None,
    },
    Example {
        name: "qmatrix22",
        summary: "quantum 2x2 matrices with q = 2",
        dsl: "field Q\ngens a b c d\n\
              swap b a : sigma = 1/2*a\nswap c a : sigma = 1/2*a\nswap c b : sigma = b\n\
              swap d a : sigma = a, theta = -3/2*b*c\nswap d b : sigma = 1/2*b\nswap d c : sigma = 1/2*c\n\
              leftswap a b : sigma = 2*a\nleftswap a c : sigma = 2*a\nleftswap b c : sigma = b\n\
              leftswap a d : sigma = a, theta = 3/2*b*c\nleftswap b d : sigma = 2*b\nleftswap c d : sigma = 2*c\n",
        module: None,
    },
    Example {
        name: "borel",
        summary: "Borel subalgebra eh = (h - 2)e with its natural module",
        dsl: "field Q\ngens h e\nswap e h : sigma = h - 2\nleftswap h e : sigma = h + 2\n",
        module: Some(&[&[&[1, 0], &[0, -1]], E12_2]),
    },
    Example {
        name: "borel-lie",
        summary: "the same Borel algebra in bracket form he = eh + 2e",
        dsl: "field Q\ngens e h\nswap h e : sigma = e, theta = 2*e\nleftswap e h : sigma = e, theta = -2*e\n",
        module: Some(&[E12_2, &[&[1, 0], &[0, -1]]]),
    },
    Example {
        name: "heisenberg",
        summary: "Heisenberg algebra yx = xy - z with z central",
        dsl: "field Q\ngens z x y\nswap y x : sigma = x, theta = -z\nleftswap x y : sigma = x, theta = z\n",
        module: Some(&[
            &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]],
            &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]],
        ]),
    },
    Example {
        name: "heisenberg-image",
        summary: "the unital algebra spanned by 1, E12, E23, E13",
        dsl: "field Q\ngens x y\npower x 2 = 0\npower y 2 = 0\nswap y x : sigma = 0\n",
        module: Some(&[&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]], &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]]),
    },
    Example {
        name: "s3",
        summary: "group algebra of S3: r^3 = s^2 = 1, sr = r^2 s",
        dsl: "field Q\ngens r s\npower r 3 = 1\npower s 2 = 1\nswap s r : sigma = r^2\nleftswap r s : sigma = r^2\n",
        module: None,
    },
    Example {
        name: "t2-upper",
        summary: "4-dimensional cover of the upper triangular 2x2 algebra, with its natural module",
        dsl: "field Q\ngens n e\npower n 2 = 0\npower e 2 = e\nswap e n : sigma = 0, theta = n\n",
        module: Some(&[E12_2, &[&[1, 0], &[0, 0]]]),
    },
    Example {
        name: "jordan3",
        summary: "truncated polynomials x^3 = 0 acting by a nilpotent Jordan block",
        dsl: "field Q\ngens x\npower x 3 = 0\n",
        module: Some(&[&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]]),
    },
];

pub fn example(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::{overlap_consistency_check, to_dsl};

    #[test]
    fn every_example_is_consistent_and_round_trips() {
        for e in EXAMPLES {
            let p = e.presentation();
            let report = overlap_consistency_check(&p);
            assert!(report.passed(), "{}: {:?}", e.name, report.first_failure());
            assert_eq!(parse_presentation(&to_dsl(&p)).unwrap(), p, "{}", e.name);
            if e.module.is_some() {
                assert!(e.fd_module().unwrap().is_verified(), "{}", e.name);
            }
        }
    }
}
