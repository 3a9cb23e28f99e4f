//! Characters of truncated presentations, twist orbits, extensions between
//! characters, and hypothesis checkers built from them.

mod characters;
mod checks;
mod comm;
mod ext;
mod orbit;

use alloc::string::String;

use crate::scalar::Field;

pub use characters::{
    character_sigma_action, enumerate_characters, CharacterComponent, CharacterFamily, Pattern, MAX_ENUMERATION,
};
pub use checks::{
    check_genlie, check_genlie2, check_na1, check_t3, ConditionReport, HypothesisReport, Overall, Theorem, Verdict,
    Witness, FIELD_PROVISO,
};
pub use ext::ext1_characters;
pub use orbit::{orbit_classify, OrbitReport, DEFAULT_ORBIT_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LabError {
    #[error("this check needs characteristic zero, got {0}")]
    WrongCharacteristic(Field),
    #[error("the presentation has no left datum")]
    MissingLeftDatum,
    #[error("presentation fails the overlap check at {0}")]
    InconsistentPresentation(String),
    #[error("cannot solve for the characters at level {level}: relation {relation} is out of reach")]
    Undecidable { level: usize, relation: String },
    #[error("the twisted values do not form a character")]
    NotACharacter,
    #[error("the values do not form a character of the truncated presentation")]
    InvalidCharacter,
    #[error("the module has not been checked against its relations")]
    UnverifiedModule,
    #[error("exhaustive enumeration would visit {candidates} tuples")]
    EnumerationTooLarge { candidates: u128 },
    #[error("module and presentation do not match")]
    PresentationMismatch,
    #[error("level {level} is out of range for {ngens} generators")]
    LevelOutOfRange { level: usize, ngens: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::ore::{parse_presentation, OrePresentation};
    use crate::rep::FDModule;
    use crate::triangularize::Character;
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use alloc::vec;
    use alloc::vec::Vec;

    const QPLANE: &str = "field Q\ngens x y\nswap y x : sigma = 2*x\nleftswap x y : sigma = 1/2*x\n";
    const QPLANE_GF5: &str = "field GF 5\ngens x y\nswap y x : sigma = 2*x\nleftswap x y : sigma = 3*x\n";
    const BOREL: &str = "field Q\ngens h e\nswap e h : sigma = h - 2\nleftswap h e : sigma = h + 2\n";
    const BOREL_LIE: &str =
        "field Q\ngens e h\nswap h e : sigma = e, theta = 2*e\nleftswap e h : sigma = e, theta = -2*e\n";
    const HEIS: &str = "field Q\ngens z x y\nswap y x : sigma = x, theta = -z\nleftswap x y : sigma = x, theta = z\n";
    const FREE2: &str = "field Q\ngens x y\nleftswap x y : sigma = x\n";
    const QAFFINE3: &str =
        "field Q\ngens x y z\nswap y x : sigma = 2*x\nswap z x : sigma = 3*x\nswap z y : sigma = y\n\
        leftswap x y : sigma = 1/2*x\nleftswap x z : sigma = 1/3*x\nleftswap y z : sigma = y\n";
    const BOREL_EXT: &str = "field Q\ngens h e x\nswap e h : sigma = h - 2\nswap x h : sigma = h - 2\n\
        leftswap h e : sigma = h + 2\nleftswap h x : sigma = h + 2\nleftswap e x : sigma = e\n";

    fn pres(text: &str) -> OrePresentation {
        parse_presentation(text).unwrap()
    }

    fn chr(p: &OrePresentation, v: &[i64]) -> Character {
        Character::new(v.iter().map(|&x| p.field().from_i64(x)).collect())
    }

    fn module(p: &OrePresentation, mats: &[&[&[i64]]]) -> FDModule {
        let f = p.field();
        let action: Vec<Matrix> = mats.iter().map(|m| Matrix::from_i64(f, m)).collect();
        let dim = action[0].rows();
        FDModule::new(Arc::new(p.clone()), dim, action).unwrap()
    }

    #[test]
    fn gf5_plane_has_nine_characters() {
        let p = pres(QPLANE_GF5);
        let fam = enumerate_characters(&p, 2).unwrap();
        assert_eq!(fam.explicit.as_ref().unwrap().len(), 9);
    }

    #[test]
    fn symbolic_families() {
        let p = pres(FREE2);
        let fam = enumerate_characters(&p, 2).unwrap();
        assert_eq!(fam.components, vec![CharacterComponent { patterns: vec![Pattern::Free, Pattern::Free] }]);
        let h = pres(HEIS);
        let fam = enumerate_characters(&h, 3).unwrap();
        assert_eq!(
            fam.components,
            vec![CharacterComponent { patterns: vec![Pattern::Zero, Pattern::Free, Pattern::Free] }]
        );
        let q = pres(QPLANE);
        let fam = enumerate_characters(&q, 2).unwrap();
        assert_eq!(fam.components.len(), 2);
    }

    #[test]
    fn sigma_action_on_characters() {
        let q = pres(QPLANE);
        let image = character_sigma_action(&chr(&q, &[1]), &q, 1).unwrap();
        assert_eq!(image.values[0], q.field().fraction(1, 2).unwrap());
        let b = pres(BOREL);
        let image = character_sigma_action(&chr(&b, &[5]), &b, 1).unwrap();
        assert_eq!(image, chr(&b, &[7]));
        assert_eq!(character_sigma_action(&chr(&b, &[5]), &b, 2), Err(LabError::MissingLeftDatum));
    }

    #[test]
    fn orbit_kinds() {
        let q = pres(QPLANE);
        assert!(matches!(orbit_classify(&chr(&q, &[1]), &q, 1, 64).unwrap(), OrbitReport::Infinite(_)));
        assert_eq!(orbit_classify(&chr(&q, &[0]), &q, 1, 64).unwrap(), OrbitReport::Trivial);
        let g = pres(QPLANE_GF5);
        assert_eq!(orbit_classify(&chr(&g, &[1]), &g, 1, 64).unwrap(), OrbitReport::Cycle(4));
    }

    #[test]
    fn ext_between_characters() {
        let b = pres(BOREL);
        // e acts with weight -2 relative to h
        assert_eq!(ext1_characters(&b, 2, &chr(&b, &[3, 0]), &chr(&b, &[1, 0])).unwrap(), 1);
        assert_eq!(ext1_characters(&b, 2, &chr(&b, &[5, 0]), &chr(&b, &[1, 0])).unwrap(), 0);
        let f = pres(FREE2);
        assert_eq!(ext1_characters(&f, 2, &chr(&f, &[1, 1]), &chr(&f, &[1, 1])).unwrap(), 2);
    }

    #[test]
    fn genlie_verdicts() {
        let r = check_genlie(&pres(BOREL_LIE)).unwrap();
        assert_eq!(r.overall, Overall::Pass, "{r:?}");
        let r = check_genlie(&pres(QPLANE)).unwrap();
        assert_eq!(r.overall, Overall::Fail);
        match &r.condition("ii").unwrap().verdict {
            Verdict::Fail(Witness::Character { character, .. }) => {
                assert_eq!(character.values[0], Field::Rationals.one())
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(check_genlie(&pres(FREE2)).unwrap().overall, Overall::Pass);
        assert!(matches!(check_genlie(&pres(QPLANE_GF5)), Err(LabError::WrongCharacteristic(_))));
    }

    #[test]
    fn genlie2_verdicts() {
        let r = check_genlie2(&pres(BOREL), 5).unwrap();
        assert_eq!(r.overall, Overall::Pass, "{r:?}");
        let r = check_genlie2(&pres(BOREL_EXT), 5).unwrap();
        assert_eq!(r.overall, Overall::Fail, "{r:?}");
        match &r.condition("ii").unwrap().verdict {
            Verdict::Fail(Witness::Ext { dim, level, .. }) => assert_eq!((*dim, *level), (1, 2)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn t3_verdicts() {
        assert_eq!(check_t3(&pres(QPLANE), None, 64).unwrap().overall, Overall::Pass);
        let r = check_t3(&pres(QPLANE_GF5), None, 64).unwrap();
        match &r.condition("ii").unwrap().verdict {
            Verdict::Fail(Witness::Orbit { orbit, .. }) => assert_eq!(*orbit, OrbitReport::Cycle(4)),
            v => panic!("{v:?}"),
        }
        let r = check_t3(&pres(QAFFINE3), None, 64).unwrap();
        assert_eq!(r.overall, Overall::Pass, "{r:?}");
    }

    #[test]
    fn na1_verdicts() {
        let h = pres(HEIS);
        let m = module(
            &h,
            &[
                &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]],
            ],
        );
        let r = check_na1(&h, &m).unwrap();
        assert_eq!(r.overall, Overall::Pass, "{r:?}");
        assert_eq!(r.conditions.len(), 3);

        let b = pres(BOREL);
        let m = module(&b, &[&[&[2, 0], &[0, 0]], &[&[0, 1], &[0, 0]]]);
        let r = check_na1(&b, &m).unwrap();
        assert_eq!(r.overall, Overall::Fail);
        assert!(matches!(r.condition("2").unwrap().verdict, Verdict::Fail(Witness::Operator { .. })));

        let zero = module(&b, &[&[&[0]], &[&[0]]]);
        assert_eq!(check_na1(&b, &zero).unwrap().overall, Overall::Pass);
        assert!(!FIELD_PROVISO.to_string().is_empty());
    }
}
