use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::characters::{
    character_sigma_action, enumerate_characters, require_consistent, symbolic_sigma_defect, CharacterComponent,
    CharacterFamily, Pattern,
};
use super::ext::ext1_characters;
use super::orbit::{affine_twist, moves_forever, orbit_classify, OrbitReport};
use super::LabError;
use crate::matrix::Matrix;
use crate::ore::{NCPoly, OrePresentation};
use crate::rep::{evaluate_on, FDModule};
use crate::scalar::{Field, Scalar};
use crate::subspace::SpanBuilder;
use crate::triangularize::{strict_triangularize, Character, Triangularization};
use crate::unipoly::{root_of_unity_order, RootOfUnity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Commutator-type twisted derivations with a trivial action on characters.
    GenLie,
    /// Same, with the action condition relaxed to vanishing extensions.
    GenLie2,
    /// Commutator-or-nilpotent derivations with trivial-or-infinite orbits.
    T3,
    /// Nilpotent derivations and nilpotent generators.
    Na1,
}

impl Theorem {
    pub fn tag(&self) -> &'static str {
        match self {
            Theorem::GenLie => "genlie",
            Theorem::GenLie2 => "genlie2",
            Theorem::T3 => "t3",
            Theorem::Na1 => "na1",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Theorem> {
        [Theorem::GenLie, Theorem::GenLie2, Theorem::T3, Theorem::Na1].into_iter().find(|t| t.tag() == tag)
    }
}

/// Evidence attached to a failing condition. Each can be re-checked by
/// running the named sub-operation again.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A character of the subalgebra below generator `level` that the twist
    /// of that generator moves.
    Character {
        level: usize,
        character: Character,
        image: Character,
    },
    Orbit {
        level: usize,
        character: Character,
        orbit: OrbitReport,
    },
    Ext {
        level: usize,
        power: usize,
        twisted: Character,
        base: Character,
        dim: usize,
    },
    /// An operator that should be nilpotent but is not.
    Operator {
        label: String,
        matrix: Matrix,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    Undecided(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub name: String,
    pub statement: String,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Overall {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub theorem: Theorem,
    pub header: String,
    pub conditions: Vec<ConditionReport>,
    pub overall: Overall,
}

/// Printed on every report: exact arithmetic cannot pass to an algebraic
/// closure, so conclusions apply when the relevant spectra split.
pub const FIELD_PROVISO: &str =
    "checked over the base field; algebraic closure is replaced by requiring split characteristic polynomials";

impl HypothesisReport {
    fn new(theorem: Theorem, conditions: Vec<ConditionReport>) -> Self {
        let overall = if conditions.iter().any(|c| matches!(c.verdict, Verdict::Fail(_))) {
            Overall::Fail
        } else if conditions.iter().any(|c| matches!(c.verdict, Verdict::Undecided(_))) {
            Overall::Undecided
        } else {
            Overall::Pass
        };
        HypothesisReport { theorem, header: FIELD_PROVISO.into(), conditions, overall }
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn condition(name: &str, statement: &str, verdict: Verdict, notes: Vec<String>) -> ConditionReport {
    ConditionReport { name: name.into(), statement: statement.into(), verdict, notes }
}

fn require_q_with_left(p: &OrePresentation) -> Result<(), LabError> {
    if p.field() != Field::Rationals {
        return Err(LabError::WrongCharacteristic(p.field()));
    }
    if !p.has_left_datum() {
        return Err(LabError::MissingLeftDatum);
    }
    require_consistent(p)
}

fn theta_label(p: &OrePresentation, level: usize, i: usize) -> String {
    format!("theta_{}({})", p.names()[level], p.names()[i])
}

/// Condition (i) of the commutator-type theorems: at each level the left
/// derivation vanishes, or the twist is trivial and the derivation is
/// `±(x_j x_i - x_i x_j)`.
fn commutator_condition(p: &OrePresentation) -> ConditionReport {
    let mut notes = Vec::new();
    for j in 1..p.ngens() {
        let rules: Vec<_> = (0..j).map(|i| p.left_rule(j, i).expect("left datum")).collect();
        if rules.iter().all(|r| r.theta.is_zero()) {
            continue;
        }
        let identity = (0..j).all(|i| rules[i].sigma == p.gen(i));
        let all_commutators = identity
            && (0..j).all(|i| {
                let comm = p.normal_form(&[j, i], &p.field().one()).sub(&p.normal_form(&[i, j], &p.field().one()));
                rules[i].theta == comm || rules[i].theta == comm.scale(&-p.field().one())
            });
        if !all_commutators {
            return condition(
                "i",
                "each derivation image is a commutator",
                Verdict::Undecided(format!(
                    "level {}: twist is not the identity or a derivation image is not a bracket of generators",
                    p.names()[j]
                )),
                notes,
            );
        }
        notes.push(format!("level {}: trivial twist, derivation is the bracket with {}", p.names()[j], p.names()[j]));
    }
    condition("i", "each derivation image is a commutator", Verdict::Pass, notes)
}

fn family_or_undecided(p: &OrePresentation, level: usize) -> Result<CharacterFamily, String> {
    enumerate_characters(p, level).map_err(|e| e.to_string())
}

/// Grid points `{1, …, size}^k`, first coordinate slowest, capped in number.
fn grid(field: Field, k: usize, size: usize, cap: usize) -> Vec<Vec<Scalar>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for pt in &out {
            for v in 1..=size {
                let mut q = pt.clone();
                q.push(field.from_i64(v as i64));
                next.push(q);
                if next.len() >= cap {
                    break;
                }
            }
            if next.len() >= cap {
                break;
            }
        }
        out = next;
    }
    out
}

/// Sample values for free character parameters.
fn samples(field: Field, k: usize, cap: usize) -> Vec<Vec<Scalar>> {
    let base: Vec<Scalar> = [0, 1, 2, -1, 3].iter().map(|&v| field.from_i64(v)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|pt: Vec<Scalar>| {
                base.iter().map(move |v| {
                    let mut q = pt.clone();
                    q.push(v.clone());
                    q
                })
            })
            .take(cap)
            .collect();
    }
    out
}

fn fixed_point_condition(p: &OrePresentation) -> ConditionReport {
    let statement = "every character of each level is fixed by the twist";
    let mut notes = Vec::new();
    for j in 1..p.ngens() {
        let family = match family_or_undecided(p, j) {
            Ok(f) => f,
            Err(e) => return condition("ii", statement, Verdict::Undecided(e), notes),
        };
        for comp in &family.components {
            let defect = symbolic_sigma_defect(p, j, comp);
            if defect.iter().all(|d| d.is_zero()) {
                continue;
            }
            let free = comp.free_positions();
            let degree = defect.iter().map(|d| d.degree()).max().unwrap_or(0) as usize;
            for pt in grid(p.field(), free.len(), degree + 1, 4096) {
                let lam = comp.instantiate(p.field(), &pt);
                let image = character_sigma_action(&lam, p, j).expect("component characters are valid");
                if image != lam {
                    return condition(
                        "ii",
                        statement,
                        Verdict::Fail(Witness::Character { level: j, character: lam, image }),
                        notes,
                    );
                }
            }
            return condition(
                "ii",
                statement,
                Verdict::Undecided(format!("level {}: symbolic defect with no grid witness", p.names()[j])),
                notes,
            );
        }
        notes.push(format!("level {}: {} character component(s) fixed", p.names()[j], family.components.len()));
    }
    condition("ii", statement, Verdict::Pass, notes)
}

/// Hypotheses of the Lie-type theorem: (i) derivations are commutators,
/// (ii) twists fix every character.
pub fn check_genlie(p: &OrePresentation) -> Result<HypothesisReport, LabError> {
    require_q_with_left(p)?;
    Ok(HypothesisReport::new(Theorem::GenLie, vec![commutator_condition(p), fixed_point_condition(p)]))
}

/// Maximum number of sampled instantiations per character component.
const SAMPLE_CAP: usize = 64;

/// As [`check_genlie`] with (ii) replaced by: whenever `λ∘σ^k ≠ λ` for
/// `1 ≤ k ≤ bound`, `Ext¹(λ∘σ^k, λ) = 0`. Free parameters are sampled.
pub fn check_genlie2(p: &OrePresentation, bound: usize) -> Result<HypothesisReport, LabError> {
    require_q_with_left(p)?;
    let statement = "extensions between a character and its distinct twists vanish";
    let mut notes = Vec::new();
    let mut verdict = Verdict::Pass;
    'levels: for j in 1..p.ngens() {
        let family = match family_or_undecided(p, j) {
            Ok(f) => f,
            Err(e) => {
                verdict = Verdict::Undecided(e);
                break;
            }
        };
        let mut sampled = 0;
        for comp in &family.components {
            let free = comp.free_positions();
            let points = samples(p.field(), free.len(), SAMPLE_CAP);
            if !free.is_empty() {
                sampled += points.len();
            }
            for pt in points {
                let base = comp.instantiate(p.field(), &pt);
                let mut twisted = base.clone();
                for k in 1..=bound {
                    twisted = character_sigma_action(&twisted, p, j)?;
                    if twisted == base {
                        continue;
                    }
                    let dim = ext1_characters(p, j, &twisted, &base)?;
                    if dim != 0 {
                        verdict = Verdict::Fail(Witness::Ext {
                            level: j,
                            power: k,
                            twisted: twisted.clone(),
                            base: base.clone(),
                            dim,
                        });
                        break 'levels;
                    }
                }
            }
        }
        if sampled > 0 {
            notes.push(format!(
                "level {}: free parameters sampled at {sampled} points from {{0, 1, 2, -1, 3}}",
                p.names()[j]
            ));
        }
    }
    notes.push(format!("twist powers checked up to {bound}"));
    Ok(HypothesisReport::new(
        Theorem::GenLie2,
        vec![commutator_condition(p), condition("ii", statement, verdict, notes)],
    ))
}

fn is_nilpotent(m: &Matrix) -> bool {
    m.is_nilpotent()
}

/// Condition (i) of the trivial-or-infinite theorem: each left derivation
/// image is zero, lies in the span of brackets of lower generators, or acts
/// nilpotently on the supplied module.
fn lower_commutator_condition(p: &OrePresentation, module: Option<&FDModule>) -> ConditionReport {
    let statement = "each derivation image is nilpotent or a commutator of lower elements";
    let f = p.field();
    let mut notes = Vec::new();
    for j in 1..p.ngens() {
        let mut brackets: Vec<NCPoly> = Vec::new();
        for b in 0..j {
            for a in 0..b {
                let c = p.normal_form(&[b, a], &f.one()).sub(&p.normal_form(&[a, b], &f.one()));
                if !c.is_zero() {
                    brackets.push(c);
                }
            }
        }
        for i in 0..j {
            let theta = &p.left_rule(j, i).expect("left datum").theta;
            if theta.is_zero() {
                continue;
            }
            if in_span(theta, &brackets) {
                notes.push(format!("{} is a combination of brackets", theta_label(p, j, i)));
                continue;
            }
            if let Some(m) = module {
                let t = evaluate_on(theta, f, m.dim(), m.actions());
                if is_nilpotent(&t) {
                    notes.push(format!("{} acts nilpotently on the module", theta_label(p, j, i)));
                    continue;
                }
            }
            return condition(
                "i",
                statement,
                Verdict::Undecided(format!("{} is not a combination of lower brackets", theta_label(p, j, i))),
                notes,
            );
        }
    }
    condition("i", statement, Verdict::Pass, notes)
}

fn in_span(target: &NCPoly, polys: &[NCPoly]) -> bool {
    let mut monos: Vec<_> = target.terms().map(|(m, _)| m.clone()).collect();
    for q in polys {
        monos.extend(q.terms().map(|(m, _)| m.clone()));
    }
    monos.sort();
    monos.dedup();
    let coords = |q: &NCPoly| -> Vec<Scalar> { monos.iter().map(|m| q.coeff(m)).collect() };
    let mut span = SpanBuilder::new(target.field(), monos.len());
    for q in polys {
        span.insert(&coords(q));
    }
    span.contains(&coords(target))
}

fn orbit_verdict(p: &OrePresentation, j: usize, lam: Character, bound: usize) -> Result<Option<Verdict>, LabError> {
    Ok(match orbit_classify(&lam, p, j, bound)? {
        OrbitReport::Trivial | OrbitReport::Infinite(_) => None,
        OrbitReport::ExceedsBound(b) => Some(Verdict::Undecided(format!(
            "level {}: orbit of {} not closed within {b} steps",
            p.names()[j],
            lam.display_with(&p.names()[..j])
        ))),
        orbit => Some(Verdict::Fail(Witness::Orbit { level: j, character: lam, orbit })),
    })
}

/// Whether every character of the component has a trivial or infinite
/// orbit, proved coordinate by coordinate from an affine twist.
fn affine_component_safe(p: &OrePresentation, j: usize, comp: &CharacterComponent) -> bool {
    let Some(affine) = affine_twist(p, j) else { return false };
    let f = p.field();
    if f != Field::Rationals {
        return affine
            .iter()
            .zip(&comp.patterns)
            .all(|((a, b), pat)| *pat != Pattern::Free || (a.is_one() && b.is_zero()))
            && concrete_part_fixed(&affine, comp);
    }
    // Each coordinate must be fixed or move forever, so that the whole
    // character is fixed or has an infinite orbit.
    affine.iter().zip(&comp.patterns).all(|((a, b), pat)| match pat {
        Pattern::Free => {
            a.is_one() || (!a.is_zero() && matches!(root_of_unity_order(a), Ok(RootOfUnity::NotRootOfUnity)))
        }
        Pattern::Zero => b.is_zero() || moves_forever(f, a, b, &f.zero()).is_some(),
        Pattern::Fixed(c) => &(a * c) + b == *c || moves_forever(f, a, b, c).is_some(),
    })
}

fn concrete_part_fixed(affine: &[(Scalar, Scalar)], comp: &CharacterComponent) -> bool {
    affine.iter().zip(&comp.patterns).all(|((a, b), pat)| match pat {
        Pattern::Free => true,
        Pattern::Zero => b.is_zero(),
        Pattern::Fixed(c) => &(a * c) + b == *c,
    })
}

/// Hypotheses of the trivial-or-infinite theorem.
pub fn check_t3(p: &OrePresentation, module: Option<&FDModule>, bound: usize) -> Result<HypothesisReport, LabError> {
    if !p.has_left_datum() {
        return Err(LabError::MissingLeftDatum);
    }
    require_consistent(p)?;
    let statement = "every character orbit under each twist is trivial or infinite";
    let mut notes = Vec::new();
    let mut verdict = Verdict::Pass;
    'levels: for j in 1..p.ngens() {
        let family = match family_or_undecided(p, j) {
            Ok(f) => f,
            Err(e) => {
                verdict = Verdict::Undecided(e);
                break;
            }
        };
        for comp in &family.components {
            if comp.is_concrete() {
                let lam = comp.instantiate(p.field(), &[]);
                if let Some(v) = orbit_verdict(p, j, lam, bound)? {
                    verdict = v;
                    break 'levels;
                }
                continue;
            }
            let free = comp.free_positions();
            for pt in samples(p.field(), free.len(), SAMPLE_CAP) {
                let lam = comp.instantiate(p.field(), &pt);
                if let Some(v) = orbit_verdict(p, j, lam, bound)? {
                    if matches!(v, Verdict::Fail(_)) {
                        verdict = v;
                        break 'levels;
                    }
                }
            }
            if !affine_component_safe(p, j, comp) {
                verdict = Verdict::Undecided(format!(
                    "level {}: twist is not a scaling or shift on a component with free parameters",
                    p.names()[j]
                ));
                break 'levels;
            }
            notes.push(format!("level {}: component with free parameters proved by coordinate analysis", p.names()[j]));
        }
    }
    Ok(HypothesisReport::new(
        Theorem::T3,
        vec![lower_commutator_condition(p, module), condition("ii", statement, verdict, notes)],
    ))
}

/// Hypotheses of the nilpotent theorem on a concrete module, followed by a
/// check of its conclusion.
pub fn check_na1(p: &OrePresentation, m: &FDModule) -> Result<HypothesisReport, LabError> {
    if !m.is_verified() {
        return Err(LabError::UnverifiedModule);
    }
    if !p.has_left_datum() {
        return Err(LabError::MissingLeftDatum);
    }
    if p.ngens() != m.presentation().ngens() || p.field() != m.field() {
        return Err(LabError::PresentationMismatch);
    }
    let f = p.field();
    let mut first = condition("1", "each derivation image acts nilpotently", Verdict::Pass, Vec::new());
    'outer: for j in 1..p.ngens() {
        for i in 0..j {
            let theta = &p.left_rule(j, i).expect("left datum").theta;
            let t = evaluate_on(theta, f, m.dim(), m.actions());
            if !is_nilpotent(&t) {
                first.verdict = Verdict::Fail(Witness::Operator { label: theta_label(p, j, i), matrix: t });
                break 'outer;
            }
        }
    }
    let mut second = condition("2", "each generator acts nilpotently", Verdict::Pass, Vec::new());
    for (i, a) in m.actions().iter().enumerate() {
        if !is_nilpotent(a) {
            second.verdict = Verdict::Fail(Witness::Operator { label: p.names()[i].clone(), matrix: a.clone() });
            break;
        }
    }
    let mut conditions = vec![first, second];
    if conditions.iter().all(|c| c.verdict == Verdict::Pass) {
        let verdict = match strict_triangularize(m) {
            Triangularization::Success(r) if r.layer_characters.iter().all(Character::is_zero) => Verdict::Pass,
            Triangularization::Success(_) => Verdict::Undecided("strict flag with nonzero character".into()),
            Triangularization::Failure(c) => Verdict::Undecided(format!("conclusion violated at stage {}", c.stage)),
        };
        let note = format!("strict flag of length {}", m.dim());
        conditions.push(condition("conclusion", "a strict flag exists", verdict, vec![note]));
    }
    Ok(HypothesisReport::new(Theorem::Na1, conditions))
}
