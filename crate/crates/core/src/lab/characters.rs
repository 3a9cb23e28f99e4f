use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::comm::CommPoly;
use super::LabError;
use crate::ore::{overlap_consistency_check, OrePresentation};
use crate::scalar::{Field, Scalar};
use crate::triangularize::Character;
use crate::unipoly::univariate_roots;

/// Value pattern of one generator within a character component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Zero,
    Fixed(Scalar),
    Free,
}

/// A product set of characters: each generator independently follows its
/// pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterComponent {
    pub patterns: Vec<Pattern>,
}

impl CharacterComponent {
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.patterns.len()).filter(|&i| self.patterns[i] == Pattern::Free).collect()
    }

    pub fn is_concrete(&self) -> bool {
        self.patterns.iter().all(|p| *p != Pattern::Free)
    }

    /// The character obtained by giving the free positions the listed values
    /// in order.
    pub fn instantiate(&self, field: Field, free_values: &[Scalar]) -> Character {
        let mut it = free_values.iter();
        Character::new(
            self.patterns
                .iter()
                .map(|p| match p {
                    Pattern::Zero => field.zero(),
                    Pattern::Fixed(c) => c.clone(),
                    Pattern::Free => it.next().expect("one value per free position").clone(),
                })
                .collect(),
        )
    }

    fn contains(&self, other: &CharacterComponent) -> bool {
        self.patterns.iter().zip(&other.patterns).all(|(a, b)| match (a, b) {
            (Pattern::Free, _) => true,
            (Pattern::Zero, Pattern::Zero) => true,
            (Pattern::Zero, Pattern::Fixed(c)) | (Pattern::Fixed(c), Pattern::Zero) => c.is_zero(),
            (Pattern::Fixed(a), Pattern::Fixed(b)) => a == b,
            _ => false,
        })
    }
}

/// All characters of the subalgebra on the first `level` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterFamily {
    pub level: usize,
    pub components: Vec<CharacterComponent>,
    /// Every character, when the field is finite.
    pub explicit: Option<Vec<Character>>,
}

/// Over a finite field the enumeration is exhaustive; this caps the number
/// of candidate tuples.
pub const MAX_ENUMERATION: u64 = 1 << 20;

/// Each defining relation among the first `level` generators as a
/// commutative polynomial in the character values, with a label.
pub(crate) fn character_equations(p: &OrePresentation, level: usize) -> Vec<(String, CommPoly)> {
    let f = p.field();
    let names = p.names();
    let mut out = Vec::new();
    for j in 0..level {
        for i in 0..j {
            let rule = p.right_rule(j, i);
            let xj = CommPoly::var(f, level, j);
            let xi = CommPoly::var(f, level, i);
            let lhs = xj.mul(&xi);
            let rhs = CommPoly::from_nc(&rule.sigma, level).mul(&xj).add(&CommPoly::from_nc(&rule.theta, level));
            out.push((
                format!(
                    "{}·{} = ({})·{} + {}",
                    names[j],
                    names[i],
                    rule.sigma.display_with(names),
                    names[j],
                    rule.theta.display_with(names)
                ),
                lhs.sub(&rhs),
            ));
        }
        if let Some(rule) = p.power_rule(j) {
            let lhs = CommPoly::var(f, level, j).pow(rule.bound);
            out.push((
                format!("{}^{} = {}", names[j], rule.bound, rule.reduction.display_with(names)),
                lhs.sub(&CommPoly::from_nc(&rule.reduction, level)),
            ));
        }
    }
    out
}

fn check_level(p: &OrePresentation, level: usize) -> Result<(), LabError> {
    if level > p.ngens() {
        return Err(LabError::LevelOutOfRange { level, ngens: p.ngens() });
    }
    Ok(())
}

pub(crate) fn require_consistent(p: &OrePresentation) -> Result<(), LabError> {
    let report = overlap_consistency_check(p);
    if !report.failures.is_empty() {
        let bad = &report.failures[0];
        return Err(LabError::InconsistentPresentation(bad.bracketing.clone()));
    }
    Ok(())
}

pub fn enumerate_characters(p: &OrePresentation, level: usize) -> Result<CharacterFamily, LabError> {
    check_level(p, level)?;
    require_consistent(p)?;
    let eqs = character_equations(p, level);
    let f = p.field();
    match f {
        Field::Prime(q) => {
            let total = (q as u128).checked_pow(level as u32).unwrap_or(u128::MAX);
            if total > MAX_ENUMERATION as u128 {
                return Err(LabError::EnumerationTooLarge { candidates: total });
            }
            let elems: Vec<Scalar> = f.elements().expect("finite field").collect();
            let mut found = Vec::new();
            let mut idx = vec![0usize; level];
            loop {
                let values: Vec<Scalar> = idx.iter().map(|&k| elems[k].clone()).collect();
                if eqs.iter().all(|(_, e)| e.eval(&values).is_zero()) {
                    found.push(Character::new(values));
                }
                // odometer, last position fastest
                let mut pos = level;
                loop {
                    if pos == 0 {
                        let components = found
                            .iter()
                            .map(|c| CharacterComponent {
                                patterns: c
                                    .values
                                    .iter()
                                    .map(|v| if v.is_zero() { Pattern::Zero } else { Pattern::Fixed(v.clone()) })
                                    .collect(),
                            })
                            .collect();
                        return Ok(CharacterFamily { level, components, explicit: Some(found) });
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        Field::Rationals => {
            let mut raw = Vec::new();
            solve(f, eqs, vec![None; level], &mut raw).map_err(|relation| LabError::Undecidable { level, relation })?;
            let comps: Vec<CharacterComponent> = raw
                .into_iter()
                .map(|assign| CharacterComponent {
                    patterns: assign
                        .into_iter()
                        .map(|a| match a {
                            None => Pattern::Free,
                            Some(v) if v.is_zero() => Pattern::Zero,
                            Some(v) => Pattern::Fixed(v),
                        })
                        .collect(),
                })
                .collect();
            let mut components: Vec<CharacterComponent> = Vec::new();
            for (k, c) in comps.iter().enumerate() {
                let subsumed =
                    comps.iter().enumerate().any(|(m, d)| m != k && d.contains(c) && (!c.contains(d) || m < k));
                if !subsumed {
                    components.push(c.clone());
                }
            }
            Ok(CharacterFamily { level, components, explicit: None })
        }
    }
}

/// Branching solver for the character equations over Q. Univariate
/// equations branch on their rational roots; an equation divisible by a
/// variable branches on that variable vanishing or the cofactor vanishing.
/// Anything else is reported back by label.
fn solve(
    f: Field,
    eqs: Vec<(String, CommPoly)>,
    assign: Vec<Option<Scalar>>,
    out: &mut Vec<Vec<Option<Scalar>>>,
) -> Result<(), String> {
    let mut live = Vec::with_capacity(eqs.len());
    for (label, mut e) in eqs {
        for (i, a) in assign.iter().enumerate() {
            if let Some(v) = a {
                e = e.substitute(i, v);
            }
        }
        if e.is_nonzero_constant() {
            return Ok(());
        }
        if !e.is_zero() {
            live.push((label, e));
        }
    }
    if live.is_empty() {
        out.push(assign);
        return Ok(());
    }
    if let Some(k) = live.iter().position(|(_, e)| e.as_univariate().is_some()) {
        let (v, uni) = live[k].1.as_univariate().expect("checked");
        let roots = univariate_roots(&uni).expect("nonzero polynomial");
        for (r, _) in roots {
            let mut a = assign.clone();
            a[v] = Some(r);
            solve(f, live.clone(), a, out)?;
        }
        return Ok(());
    }
    if let Some(k) = live.iter().position(|(_, e)| e.common_variable().is_some()) {
        let (v, m) = live[k].1.common_variable().expect("checked");
        let mut a = assign.clone();
        a[v] = Some(f.zero());
        solve(f, live.clone(), a, out)?;
        let mut rest = live;
        rest[k].1 = rest[k].1.divide_by_power(v, m);
        return solve(f, rest, assign, out);
    }
    Err(live.swap_remove(0).0)
}

/// `λ ∘ σ_level`: the pullback of a character of the subalgebra below
/// generator `level` along the left twist of that generator.
pub fn character_sigma_action(lam: &Character, p: &OrePresentation, level: usize) -> Result<Character, LabError> {
    check_level(p, level)?;
    if level == p.ngens() || !p.has_left_datum() {
        return Err(LabError::MissingLeftDatum);
    }
    if lam.values.len() != level {
        return Err(LabError::InvalidCharacter);
    }
    let values = (0..level).map(|i| lam.eval(&p.left_rule(level, i).expect("left datum").sigma)).collect();
    let out = Character::new(values);
    if !out.respects(&p.truncate(level)) {
        return Err(LabError::NotACharacter);
    }
    Ok(out)
}

/// Symbolic `λ ∘ σ_level - λ` on a component, one entry per generator below
/// `level`, with free positions as variables.
pub(crate) fn symbolic_sigma_defect(p: &OrePresentation, level: usize, comp: &CharacterComponent) -> Vec<CommPoly> {
    let f = p.field();
    let images: Vec<CommPoly> = comp
        .patterns
        .iter()
        .enumerate()
        .map(|(i, pat)| match pat {
            Pattern::Zero => CommPoly::zero(f, level),
            Pattern::Fixed(c) => CommPoly::constant(f, level, c.clone()),
            Pattern::Free => CommPoly::var(f, level, i),
        })
        .collect();
    (0..level)
        .map(|i| {
            let sigma = &p.left_rule(level, i).expect("left datum").sigma;
            CommPoly::from_nc(sigma, level).compose(&images).sub(&images[i])
        })
        .collect()
}
