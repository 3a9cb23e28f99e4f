//! From matrices generating a pointed algebra to an ideal chain and a
//! Lie-type presentation: trivial twists, brackets as derivations.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{row_reduce, LinalgError, Matrix, Vector};
use crate::ore::{Monomial, NCPoly, OrePresentation, PowerRule, PresentationError, SwapRule};
use crate::rep::{generated_algebra_basis, solve, FDModule};
use crate::scalar::{Field, Scalar};
use crate::subspace::{SpanBuilder, Subspace};
use crate::triangularize::{triangularize_matrices, Character, FailureCertificate, Triangularization};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("matrices must be square and of equal size")]
    SizeMismatch,
    #[error("bracket with generator {level} falls outside the lower level")]
    ChainMismatch { level: usize },
    #[error("chain does not match its algebra basis")]
    ChainShape,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Two-sided ideals `V_1 ⊂ … ⊂ V_D` of the generated unital algebra, in
/// coordinates with respect to `algebra_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealChain {
    pub field: Field,
    pub size: usize,
    pub algebra_basis: Vec<Matrix>,
    pub chain: Vec<Subspace>,
    /// `flag[k]` spans `V_{k+1}` modulo `V_k`.
    pub flag: Vec<Vector>,
    /// Left and right characters of each layer, as values on the algebra
    /// basis (left multiplications first).
    pub layer_characters: Vec<Character>,
}

impl IdealChain {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Local means a single character: every layer is the same simple
    /// module under left multiplication.
    pub fn is_local(&self) -> bool {
        let d = self.algebra_basis.len();
        let left = |c: &Character| c.values[..d].to_vec();
        self.layer_characters.windows(2).all(|w| left(&w[0]) == left(&w[1]))
    }

    /// The algebra element with the given coordinates.
    pub fn element(&self, coords: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.size, self.size);
        for (c, b) in coords.iter().zip(&self.algebra_basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ChainOutcome {
    Chain(IdealChain),
    /// The algebra is not pointed as a bimodule over itself.
    NotPointed(FailureCertificate),
}

/// Coordinates of matrices in a fixed linearly independent family, via an
/// invertible square minor.
struct Coordinates {
    rows: Vec<usize>,
    inverse: Matrix,
}

impl Coordinates {
    fn new(field: Field, basis: &[Matrix]) -> Self {
        let d = basis.len();
        let width = basis.first().map_or(0, |b| b.entries().len());
        let t = Matrix::from_rows(field, basis.iter().map(|b| b.entries().to_vec()).collect())
            .unwrap_or_else(|_| Matrix::zeros(field, 0, width));
        let rows = if d == 0 { Vec::new() } else { row_reduce(&t).pivots };
        let mut minor = Matrix::zeros(field, d, d);
        for (r, &e) in rows.iter().enumerate() {
            for (c, b) in basis.iter().enumerate() {
                minor.set(r, c, b.entries()[e].clone());
            }
        }
        let inverse = minor.inverse().expect("basis is independent");
        Coordinates { rows, inverse }
    }

    fn of(&self, m: &Matrix) -> Vector {
        let picked: Vector = self.rows.iter().map(|&e| m.entries()[e].clone()).collect();
        self.inverse.apply(&picked)
    }
}

/// Triangularizes the algebra generated by `mats` as a bimodule over
/// itself. A flag of sub-bimodules is a chain of two-sided ideals.
pub fn pointed_ideal_chain(field: Field, n: usize, mats: &[Matrix]) -> Result<ChainOutcome, ExtractError> {
    if mats.iter().any(|m| m.rows() != n || m.cols() != n || m.field() != field) {
        return Err(ExtractError::SizeMismatch);
    }
    let basis = generated_algebra_basis(field, n, mats)?;
    let d = basis.len();
    let coords = Coordinates::new(field, &basis);
    let operator = |f: &dyn Fn(&Matrix) -> Matrix| {
        let cols: Vec<Vector> = basis.iter().map(|b| coords.of(&f(b))).collect();
        Matrix::from_columns(field, d, &cols)
    };
    let mut ops: Vec<Matrix> = basis.iter().map(|a| operator(&|b| a * b)).collect();
    ops.extend(basis.iter().map(|a| operator(&|b| b * a)));
    let tri = triangularize_matrices(field, d, &ops).map_err(|_| ExtractError::SizeMismatch)?;
    match tri {
        Triangularization::Failure(cert) => Ok(ChainOutcome::NotPointed(cert)),
        Triangularization::Success(res) => {
            let flag: Vec<Vector> = (0..d).map(|k| (0..d).map(|r| res.transform.get(r, k).clone()).collect()).collect();
            let chain = (1..=d).map(|k| Subspace::span(field, d, &flag[..k])).collect();
            Ok(ChainOutcome::Chain(IdealChain {
                field,
                size: n,
                algebra_basis: basis,
                chain,
                flag,
                layer_characters: res.layer_characters,
            }))
        }
    }
}

/// An extracted presentation together with the matrices of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub presentation: OrePresentation,
    pub generators: Vec<Matrix>,
    /// The original matrix space as a module over the extracted
    /// presentation; always verified.
    pub module: FDModule,
}

/// Generator candidates: one element per chain gap below the top, each the
/// first algebra basis element completing the lower ideal, or the flag
/// vector when no basis element does.
fn gap_elements(chain: &IdealChain) -> Vec<Matrix> {
    let d = chain.len();
    let f = chain.field;
    (1..d)
        .map(|k| {
            let upper = &chain.chain[k - 1];
            let lower = if k >= 2 { Some(&chain.chain[k - 2]) } else { None };
            let pick = (0..d)
                .map(|b| crate::subspace::unit_vector(f, d, b))
                .find(|e| upper.contains(e) && lower.is_none_or(|l| !l.contains(e)));
            chain.element(&pick.unwrap_or_else(|| chain.flag[k - 1].clone()))
        })
        .collect()
}

struct Levels {
    right: Vec<Vec<SwapRule>>,
    left: Vec<Vec<SwapRule>>,
    power: Vec<Option<PowerRule>>,
}

fn poly_of(field: Field, k: usize, monos: &[Vec<u32>], coeffs: &[Scalar]) -> NCPoly {
    NCPoly::from_terms(
        field,
        k,
        monos.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (Monomial(m.clone()), c.clone())),
    )
}

fn coords_in(field: Field, mats: &[Matrix], target: &Matrix) -> Option<Vector> {
    let len = target.entries().len();
    let cols: Vec<Vector> = mats.iter().map(|b| b.entries().to_vec()).collect();
    if cols.is_empty() {
        return target.entries().iter().all(Scalar::is_zero).then(Vec::new);
    }
    solve(&Matrix::from_columns(field, len, &cols), target.entries())
}

/// Builds the level-by-level data for generators `gens` in order, tracking
/// an independent set of normal monomials spanning each level.
fn build_levels(field: Field, n: usize, gens: &[Matrix]) -> Result<Levels, usize> {
    let k = gens.len();
    let mut monos: Vec<Vec<u32>> = vec![vec![0; k]];
    let mut mats: Vec<Matrix> = vec![Matrix::identity(field, n)];
    let mut levels = Levels { right: Vec::new(), left: Vec::new(), power: Vec::new() };
    for (j, x) in gens.iter().enumerate() {
        let mut right = Vec::new();
        let mut left = Vec::new();
        for (i, y) in gens[..j].iter().enumerate() {
            let bracket = &(x * y) - &(y * x);
            let c = coords_in(field, &mats, &bracket).ok_or(j)?;
            let theta = poly_of(field, k, &monos, &c);
            let sigma = NCPoly::generator(field, k, i);
            left.push(SwapRule { sigma: sigma.clone(), theta: theta.scale(&-field.one()) });
            right.push(SwapRule { sigma, theta });
        }
        levels.right.push(right);
        levels.left.push(left);

        let base: Vec<(Vec<u32>, Matrix)> = monos.iter().cloned().zip(mats.iter().cloned()).collect();
        let mut span = SpanBuilder::new(field, n * n);
        for m in &mats {
            span.insert(m.entries());
        }
        let mut power_of_x = x.clone();
        let mut m = 1u32;
        loop {
            if let Some(c) = coords_in(field, &mats, &power_of_x) {
                let reduction = poly_of(field, k, &monos, &c);
                levels.power.push(Some(PowerRule { bound: m, reduction }));
                break;
            }
            for (e, b) in &base {
                let prod = b * &power_of_x;
                if span.insert(prod.entries()) {
                    let mut e = e.clone();
                    e[j] = m;
                    monos.push(e);
                    mats.push(prod);
                }
            }
            power_of_x = &power_of_x * x;
            m += 1;
            if m as usize > n * n + 1 {
                return Err(j);
            }
        }
    }
    Ok(levels)
}

fn names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("x{i}")).collect()
}

/// Emits a presentation with trivial twists and bracket derivations whose
/// relations hold for the chosen chain elements. Generators that the others
/// already generate are dropped greedily, lowest first, when the remaining
/// ones still give a valid level structure.
pub fn extract_ore_datum(chain: &IdealChain) -> Result<Extraction, ExtractError> {
    let f = chain.field;
    let n = chain.size;
    let d = chain.algebra_basis.len();
    if chain.len() != d || chain.flag.len() != d {
        return Err(ExtractError::ChainShape);
    }
    let mut gens = gap_elements(chain);
    build_levels(f, n, &gens).map_err(|level| ExtractError::ChainMismatch { level })?;
    let mut idx = 0;
    while idx < gens.len() {
        let mut fewer = gens.clone();
        fewer.remove(idx);
        let spans = generated_algebra_basis(f, n, &fewer)?.len() == d;
        if spans && build_levels(f, n, &fewer).is_ok() {
            gens = fewer;
        } else {
            idx += 1;
        }
    }
    let levels = build_levels(f, n, &gens).map_err(|level| ExtractError::ChainMismatch { level })?;
    let presentation = OrePresentation::new(f, names(gens.len()), levels.right, Some(levels.left), levels.power)?;
    let module =
        FDModule::new(Arc::new(presentation.clone()), n, gens.clone()).map_err(|_| ExtractError::ChainShape)?;
    debug_assert!(module.is_verified());
    Ok(Extraction { presentation, generators: gens, module })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::{overlap_consistency_check, to_dsl};
    use crate::rep::regular_module;
    use crate::triangularize::strict_triangularize;
    use alloc::string::ToString;

    fn unit(n: usize, i: usize, j: usize) -> Matrix {
        Matrix::unit(Field::Rationals, n, i, j)
    }

    fn chain_of(mats: &[Matrix], n: usize) -> IdealChain {
        match pointed_ideal_chain(Field::Rationals, n, mats).unwrap() {
            ChainOutcome::Chain(c) => c,
            ChainOutcome::NotPointed(c) => panic!("{c:?}"),
        }
    }

    #[test]
    fn upper_triangular_chain() {
        let c = chain_of(&[unit(2, 0, 0), unit(2, 0, 1)], 2);
        assert_eq!(c.len(), 3);
        assert!(!c.is_local());
        let bottom = c.element(&c.chain[0].basis()[0]);
        assert!(bottom.get(1, 0).is_zero() && bottom.get(0, 0).is_zero() && bottom.get(1, 1).is_zero());
        let x = extract_ore_datum(&c).unwrap();
        assert_eq!(x.presentation.ngens(), 2);
        assert!(x.module.is_verified());
        let theta = &x.presentation.right_rule(1, 0).theta;
        assert!(!theta.is_zero() && theta.max_generator() == Some(0));
    }

    #[test]
    fn full_matrix_algebra_is_not_pointed() {
        let out = pointed_ideal_chain(Field::Rationals, 2, &[unit(2, 0, 1), unit(2, 1, 0)]).unwrap();
        assert!(matches!(out, ChainOutcome::NotPointed(_)));
    }

    #[test]
    fn scalars_give_a_single_ideal() {
        let c = chain_of(&[Matrix::identity(Field::Rationals, 2)], 2);
        assert_eq!(c.len(), 1);
        assert_eq!(extract_ore_datum(&c).unwrap().presentation.ngens(), 0);
    }

    #[test]
    fn jordan_block_extracts_one_nilpotent_generator() {
        let j = &unit(3, 0, 1) + &unit(3, 1, 2);
        let c = chain_of(&[j], 3);
        assert!(c.is_local());
        let x = extract_ore_datum(&c).unwrap();
        let p = &x.presentation;
        assert_eq!(p.ngens(), 1);
        let rule = p.power_rule(0).unwrap();
        assert_eq!(rule.bound, 3);
        assert!(rule.reduction.is_zero());
        let reg = regular_module(p).unwrap();
        assert!(reg.is_verified() && strict_triangularize(&reg).success().is_some());
    }

    #[test]
    fn heisenberg_image_has_bracket_derivations() {
        let x = extract_ore_datum(&chain_of(&[unit(3, 0, 1), unit(3, 1, 2)], 3)).unwrap();
        let p = &x.presentation;
        assert_eq!(p.ngens(), 3);
        for j in 0..3 {
            for i in 0..j {
                assert_eq!(p.right_rule(j, i).sigma, p.gen(i));
                assert_eq!(p.left_rule(j, i).unwrap().theta, p.right_rule(j, i).theta.scale(&-Field::Rationals.one()));
            }
        }
        assert!(x.generators.iter().all(Matrix::is_nilpotent));
        let text = to_dsl(p);
        assert_eq!(crate::ore::parse_presentation(&text).unwrap(), *p, "{text}");
        let _ = overlap_consistency_check(p).passed().to_string();
    }
}
