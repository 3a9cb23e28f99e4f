use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::characters::character_sigma_action;
use super::LabError;
use crate::ore::OrePresentation;
use crate::scalar::{Field, Scalar};
use crate::triangularize::Character;
use crate::unipoly::{root_of_unity_order, RootOfUnity};

pub const DEFAULT_ORBIT_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitReport {
    Trivial,
    Cycle(usize),
    /// Proved infinite; the text names the coordinate that never repeats.
    Infinite(String),
    /// The orbit enters a cycle of length `period` after `preperiod` steps
    /// without returning to the start (possible for non-invertible twists).
    EventuallyPeriodic {
        preperiod: usize,
        period: usize,
    },
    ExceedsBound(usize),
}

impl OrbitReport {
    pub fn is_trivial_or_infinite(&self) -> bool {
        matches!(self, OrbitReport::Trivial | OrbitReport::Infinite(_))
    }
}

/// Per-generator affine form `x_i ↦ a·x_i + b` of the left twist at `level`,
/// when every image has that shape.
pub(crate) fn affine_twist(p: &OrePresentation, level: usize) -> Option<Vec<(Scalar, Scalar)>> {
    (0..level).map(|i| p.left_rule(level, i)?.sigma.as_affine_in(i)).collect()
}

/// Whether the coordinate value `v` moves forever under `v ↦ a·v + b` over
/// Q. `None` when it does not (it is fixed or periodic).
pub(crate) fn moves_forever(field: Field, a: &Scalar, b: &Scalar, v: &Scalar) -> Option<String> {
    if field.is_finite() || a.is_zero() {
        return None;
    }
    let image = &(a * v) + b;
    if image == *v {
        return None;
    }
    if a.is_one() {
        return Some(format!("shift by {b}"));
    }
    match root_of_unity_order(a) {
        Ok(RootOfUnity::NotRootOfUnity) => Some(format!("scaling by {a}, which is not a root of unity")),
        _ => None,
    }
}

/// Classifies the orbit of `lam` under repeated pullback along the twist of
/// generator `level`. Infinite is reported only with a proof.
pub fn orbit_classify(
    lam: &Character,
    p: &OrePresentation,
    level: usize,
    bound: usize,
) -> Result<OrbitReport, LabError> {
    let first = character_sigma_action(lam, p, level)?;
    if let Some(affine) = affine_twist(p, level) {
        for (i, ((a, b), v)) in affine.iter().zip(&lam.values).enumerate() {
            if let Some(why) = moves_forever(p.field(), a, b, v) {
                return Ok(OrbitReport::Infinite(format!("{}: {why}", p.names()[i])));
            }
        }
    }
    let mut seen: Vec<Character> = alloc::vec![lam.clone()];
    let mut cur = first;
    for step in 1..=bound {
        if let Some(pos) = seen.iter().position(|c| *c == cur) {
            return Ok(match (pos, step) {
                (0, 1) => OrbitReport::Trivial,
                (0, n) => OrbitReport::Cycle(n),
                (t, n) => OrbitReport::EventuallyPeriodic { preperiod: t, period: n - t },
            });
        }
        seen.push(cur.clone());
        cur = character_sigma_action(&cur, p, level)?;
    }
    Ok(OrbitReport::ExceedsBound(bound))
}
