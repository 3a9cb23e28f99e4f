use alloc::vec;
use alloc::vec::Vec;

use super::LabError;
use crate::matrix::Matrix;
use crate::ore::{NCPoly, OrePresentation};
use crate::scalar::{Field, Scalar};
use crate::triangularize::Character;

/// Upper-right entry of `a` in the representation
/// `x_g ↦ [[λ(x_g), δ_g], [0, μ(x_g)]]`, as a linear form in the `δ_g`.
fn off_diagonal(p: &NCPoly, lam: &[Scalar], mu: &[Scalar], field: Field) -> Vec<Scalar> {
    let n = lam.len();
    let mut out = vec![field.zero(); n];
    for (m, c) in p.terms() {
        let word = m.word();
        for (t, &g) in word.iter().enumerate() {
            let mut coeff = c.clone();
            for &h in &word[..t] {
                coeff = &coeff * &lam[h];
            }
            for &h in &word[t + 1..] {
                coeff = &coeff * &mu[h];
            }
            out[g] = &out[g] + &coeff;
        }
    }
    out
}

/// Dimension of Ext¹ between the characters `lam` and `mu` of the
/// subalgebra on the first `level` generators: solutions of the linearized
/// relations modulo inner derivations.
pub fn ext1_characters(p: &OrePresentation, level: usize, lam: &Character, mu: &Character) -> Result<usize, LabError> {
    if level > p.ngens() {
        return Err(LabError::LevelOutOfRange { level, ngens: p.ngens() });
    }
    let sub = p.truncate(level);
    if lam.values.len() != level || mu.values.len() != level || !lam.respects(&sub) || !mu.respects(&sub) {
        return Err(LabError::InvalidCharacter);
    }
    let f = p.field();
    let (l, m) = (&lam.values, &mu.values);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for j in 0..level {
        for i in 0..j {
            let rule = sub.right_rule(j, i);
            let lhs = off_word(&[j, i], l, m, f);
            let rhs_poly = sub.mul(&rule.sigma, &sub.gen(j)).add(&rule.theta);
            let rhs = off_diagonal(&rhs_poly, l, m, f);
            rows.push(lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect());
        }
        if let Some(rule) = sub.power_rule(j) {
            let word = vec![j; rule.bound as usize];
            let lhs = off_word(&word, l, m, f);
            let rhs = off_diagonal(&rule.reduction, l, m, f);
            rows.push(lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect());
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(f, rows).expect("rectangular").rank() };
    let solutions = level - rank;
    let inner = usize::from(l != m);
    Ok(solutions - inner)
}

fn off_word(word: &[usize], lam: &[Scalar], mu: &[Scalar], f: Field) -> Vec<Scalar> {
    let mut out = vec![f.zero(); lam.len()];
    for (t, &g) in word.iter().enumerate() {
        let mut coeff = f.one();
        for &h in &word[..t] {
            coeff = &coeff * &lam[h];
        }
        for &h in &word[t + 1..] {
            coeff = &coeff * &mu[h];
        }
        out[g] = &out[g] + &coeff;
    }
    out
}
