//! Common eigenvectors, flags and the related nilpotency tests.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::{char_poly, row_reduce, LinalgError, Matrix, Vector};
use crate::ore::{eval_at_values, NCPoly, OrePresentation};
use crate::rep::FDModule;
use crate::scalar::{Field, Scalar};
use crate::subspace::{combine, SpanBuilder, Subspace};
use crate::unipoly::{univariate_roots, UniPoly};

/// Values of a one-dimensional representation on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn new(values: Vec<Scalar>) -> Self {
        Character { values }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Character { values: vec![field.zero(); n] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// `λ̂(p)`.
    pub fn eval(&self, p: &NCPoly) -> Scalar {
        eval_at_values(p, &self.values)
    }

    /// Whether the values satisfy every swap and power relation of `p`.
    pub fn respects(&self, p: &OrePresentation) -> bool {
        let v = &self.values;
        for j in 0..p.ngens() {
            for i in 0..j {
                let rule = p.right_rule(j, i);
                if &v[j] * &v[i] != &(&self.eval(&rule.sigma) * &v[j]) + &self.eval(&rule.theta) {
                    return false;
                }
            }
            if let Some(rule) = p.power_rule(j) {
                if v[j].pow(rule.bound) != self.eval(&rule.reduction) {
                    return false;
                }
            }
        }
        true
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayCharacter { ch: self, names }
    }
}

struct DisplayCharacter<'a> {
    ch: &'a Character,
    names: &'a [String],
}

impl fmt::Display for DisplayCharacter<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, (name, v)) in self.names.iter().zip(&self.ch.values).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}:{v}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TriangularizeError {
    #[error("common eigenvector search needs a nonzero dimension")]
    EmptyDimension,
    #[error("the ladder needs a left datum")]
    MissingLeftDatum,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// The characteristic polynomial of one generator has no root in the
    /// field; `remainder` is what is left after removing field roots.
    NoEigenvalueInField { generator: usize, remainder: UniPoly },
    /// Every eigenvalue tuple was tried; a pruned prefix counts as one tuple.
    NoCommonEigenvector { tuples_explored: usize },
    /// A common eigenvector exists but its character is nonzero.
    NonzeroCharacterRequired { character: Character },
}

impl FailureReason {
    pub fn tag(&self) -> &'static str {
        match self {
            FailureReason::NoEigenvalueInField { .. } => "NoEigenvalueInField",
            FailureReason::NoCommonEigenvector { .. } => "NoCommonEigenvector",
            FailureReason::NonzeroCharacterRequired { .. } => "NonzeroCharacterRequired",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenSearch {
    Found { vector: Vector, eigenvalues: Vec<Scalar>, tuples_explored: usize },
    None(FailureReason),
}

/// Hook that may reorder the candidate eigenvalues of matrix `k` before the
/// search visits them.
pub type RootOrder<'a> = dyn FnMut(usize, &mut Vec<Scalar>) + 'a;

fn keep_order(_: usize, _: &mut Vec<Scalar>) {}

fn check_square(field: Field, n: usize, mats: &[Matrix]) -> Result<(), LinalgError> {
    for m in mats {
        if !m.is_square() {
            return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if m.rows() != n || m.field() != field {
            return Err(LinalgError::SizeMismatch);
        }
    }
    Ok(())
}

fn eigenspace(m: &Matrix, lambda: &Scalar) -> Subspace {
    let shifted = m - &Matrix::identity(m.field(), m.rows()).scale(lambda);
    row_reduce(&shifted).kernel
}

/// Roots of each characteristic polynomial, or the first generator whose
/// polynomial has none.
fn candidate_roots(mats: &[Matrix]) -> Result<Result<Vec<Vec<Scalar>>, FailureReason>, LinalgError> {
    let mut out = Vec::with_capacity(mats.len());
    for (k, m) in mats.iter().enumerate() {
        let cp = char_poly(m)?;
        let roots = univariate_roots(&cp).expect("characteristic polynomial is monic");
        if roots.is_empty() {
            return Ok(Err(FailureReason::NoEigenvalueInField { generator: k, remainder: cp }));
        }
        out.push(roots.into_iter().map(|(r, _)| r).collect());
    }
    Ok(Ok(out))
}

pub fn common_eigenvector(mats: &[Matrix]) -> Result<EigenSearch, TriangularizeError> {
    let Some(first) = mats.first() else {
        return Err(TriangularizeError::EmptyDimension);
    };
    common_eigenvector_in(first.field(), first.rows(), mats, &mut keep_order)
}

/// Common eigenvector search in dimension `n`. With no matrices the first
/// standard basis vector is returned.
pub fn common_eigenvector_in(
    field: Field,
    n: usize,
    mats: &[Matrix],
    order: &mut RootOrder<'_>,
) -> Result<EigenSearch, TriangularizeError> {
    if n == 0 {
        return Err(TriangularizeError::EmptyDimension);
    }
    check_square(field, n, mats)?;
    let mut roots = match candidate_roots(mats)? {
        Ok(r) => r,
        Err(reason) => return Ok(EigenSearch::None(reason)),
    };
    for (k, r) in roots.iter_mut().enumerate() {
        order(k, r);
    }
    let mut explored = 0;
    let mut chosen = Vec::with_capacity(mats.len());
    let found = search(mats, &roots, 0, Subspace::full(field, n), &mut chosen, &mut explored);
    Ok(match found {
        Some(space) => {
            EigenSearch::Found { vector: space.basis()[0].clone(), eigenvalues: chosen, tuples_explored: explored }
        }
        None => EigenSearch::None(FailureReason::NoCommonEigenvector { tuples_explored: explored }),
    })
}

fn search(
    mats: &[Matrix],
    roots: &[Vec<Scalar>],
    k: usize,
    space: Subspace,
    chosen: &mut Vec<Scalar>,
    explored: &mut usize,
) -> Option<Subspace> {
    if k == mats.len() {
        *explored += 1;
        return Some(space);
    }
    for r in &roots[k] {
        let next = space.intersect(&eigenspace(&mats[k], r)).expect("same ambient");
        if next.is_zero() {
            *explored += 1;
            continue;
        }
        chosen.push(r.clone());
        if let Some(found) = search(mats, roots, k + 1, next, chosen, explored) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Sum of all joint eigenspaces: the span of every common eigenvector.
pub fn pointed_socle(field: Field, n: usize, mats: &[Matrix]) -> Result<Subspace, LinalgError> {
    check_square(field, n, mats)?;
    let mut total = Subspace::zero(field, n);
    if n == 0 {
        return Ok(total);
    }
    let Ok(roots) = candidate_roots(mats)? else {
        return Ok(total);
    };
    fn walk(mats: &[Matrix], roots: &[Vec<Scalar>], k: usize, space: Subspace, total: &mut Subspace) {
        if k == mats.len() {
            *total = total.sum(&space).expect("same ambient");
            return;
        }
        for r in &roots[k] {
            let next = space.intersect(&eigenspace(&mats[k], r)).expect("same ambient");
            if !next.is_zero() {
                walk(mats, roots, k + 1, next, total);
            }
        }
    }
    walk(mats, &roots, 0, Subspace::full(field, n), &mut total);
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularizationResult {
    /// Columns are the flag vectors, bottom layer first.
    pub transform: Matrix,
    pub layer_characters: Vec<Character>,
    pub strict: bool,
}

impl TriangularizationResult {
    /// Multiset of layer characters in a canonical order.
    pub fn character_multiset(&self) -> Vec<Character> {
        let mut out = self.layer_characters.clone();
        out.sort_by(|a, b| {
            a.values
                .iter()
                .zip(&b.values)
                .map(|(x, y)| x.canonical_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        out
    }

    /// Checks `T` invertible, every conjugate upper triangular, and the
    /// diagonals equal to the recorded characters.
    pub fn verify(&self, mats: &[Matrix]) -> bool {
        let Some(inv) = self.transform.inverse() else { return false };
        let strict_ok = self.strict == self.layer_characters.iter().all(Character::is_zero);
        strict_ok
            && mats.iter().enumerate().all(|(g, m)| {
                let c = &(&inv * m) * &self.transform;
                c.is_upper_triangular()
                    && c.diagonal_entries().iter().zip(&self.layer_characters).all(|(d, ch)| *d == ch.values[g])
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureCertificate {
    /// Number of flag layers built before the search got stuck.
    pub stage: usize,
    pub reason: FailureReason,
    /// Induced action on the quotient where the search got stuck.
    pub witness_quotient: Vec<Matrix>,
}

impl FailureCertificate {
    pub fn witness_dim(&self) -> usize {
        self.witness_quotient.first().map_or(0, Matrix::rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triangularization {
    Success(TriangularizationResult),
    Failure(FailureCertificate),
}

impl Triangularization {
    pub fn success(&self) -> Option<&TriangularizationResult> {
        match self {
            Triangularization::Success(r) => Some(r),
            Triangularization::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&FailureCertificate> {
        match self {
            Triangularization::Success(_) => None,
            Triangularization::Failure(c) => Some(c),
        }
    }
}

/// Induced action on `V / span(flag)` in the coordinates of the standard
/// complement, plus that complement.
fn quotient_action(field: Field, n: usize, mats: &[Matrix], w: &Subspace) -> (Vec<Matrix>, Vec<Vector>) {
    let comp = w.extend_basis();
    let pivots = w.pivots();
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let quo = mats
        .iter()
        .map(|m| {
            let cols: Vec<Vector> = comp
                .iter()
                .map(|c| {
                    let r = w.reduce(&m.apply(c));
                    free.iter().map(|&i| r[i].clone()).collect()
                })
                .collect();
            Matrix::from_columns(field, free.len(), &cols)
        })
        .collect();
    (quo, comp)
}

fn lift(field: Field, n: usize, comp: &[Vector], u: &[Scalar]) -> Vector {
    combine(field, n, comp, u)
}

fn flag_loop(
    field: Field,
    n: usize,
    mats: &[Matrix],
    strict: bool,
    order: &mut RootOrder<'_>,
) -> Result<Triangularization, TriangularizeError> {
    check_square(field, n, mats)?;
    let mut flag: Vec<Vector> = Vec::with_capacity(n);
    let mut chars = Vec::with_capacity(n);
    let mut span = SpanBuilder::new(field, n);
    while flag.len() < n {
        let w = Subspace::span(field, n, &flag);
        let (quo, comp) = quotient_action(field, n, mats, &w);
        let qdim = n - flag.len();
        let step = if strict {
            let mut kernel = Subspace::full(field, qdim);
            for q in &quo {
                kernel = kernel.intersect(&row_reduce(q).kernel).expect("same ambient");
            }
            if let Some(v) = kernel.basis().first() {
                Ok((v.clone(), vec![field.zero(); mats.len()]))
            } else {
                match common_eigenvector_in(field, qdim, &quo, &mut *order)? {
                    EigenSearch::Found { eigenvalues, .. } => {
                        Err(FailureReason::NonzeroCharacterRequired { character: Character::new(eigenvalues) })
                    }
                    EigenSearch::None(reason) => Err(reason),
                }
            }
        } else {
            match common_eigenvector_in(field, qdim, &quo, &mut *order)? {
                EigenSearch::Found { vector, eigenvalues, .. } => Ok((vector, eigenvalues)),
                EigenSearch::None(reason) => Err(reason),
            }
        };
        match step {
            Ok((u, values)) => {
                let v = lift(field, n, &comp, &u);
                let fresh = span.insert(&v);
                debug_assert!(fresh);
                flag.push(v);
                chars.push(Character::new(values));
            }
            Err(reason) => {
                return Ok(Triangularization::Failure(FailureCertificate {
                    stage: flag.len(),
                    reason,
                    witness_quotient: quo,
                }))
            }
        }
    }
    let all_zero = chars.iter().all(Character::is_zero);
    let result = TriangularizationResult {
        transform: Matrix::from_columns(field, n, &flag),
        layer_characters: chars,
        strict: all_zero,
    };
    assert!(result.verify(mats), "triangularization failed its own verification");
    Ok(Triangularization::Success(result))
}

pub fn triangularize(m: &FDModule) -> Triangularization {
    triangularize_matrices(m.field(), m.dim(), m.actions()).expect("module matrices are well formed")
}

pub fn triangularize_matrices(
    field: Field,
    n: usize,
    mats: &[Matrix],
) -> Result<Triangularization, TriangularizeError> {
    flag_loop(field, n, mats, false, &mut keep_order)
}

/// As [`triangularize_matrices`], visiting eigenvalues in the order chosen
/// by `order` at every layer.
pub fn triangularize_matrices_with_order(
    field: Field,
    n: usize,
    mats: &[Matrix],
    order: &mut RootOrder<'_>,
) -> Result<Triangularization, TriangularizeError> {
    flag_loop(field, n, mats, false, order)
}

pub fn strict_triangularize(m: &FDModule) -> Triangularization {
    strict_triangularize_matrices(m.field(), m.dim(), m.actions()).expect("module matrices are well formed")
}

pub fn strict_triangularize_matrices(
    field: Field,
    n: usize,
    mats: &[Matrix],
) -> Result<Triangularization, TriangularizeError> {
    flag_loop(field, n, mats, true, &mut keep_order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoewySeries {
    /// Dimension of each pointed socle layer, bottom first.
    pub layers: Vec<usize>,
    pub p_semiartinian: bool,
}

pub fn loewy_series(field: Field, n: usize, mats: &[Matrix]) -> Result<LoewySeries, LinalgError> {
    check_square(field, n, mats)?;
    let mut w = Subspace::zero(field, n);
    let mut layers = Vec::new();
    while w.dim() < n {
        let (quo, comp) = quotient_action(field, n, mats, &w);
        let socle = pointed_socle(field, n - w.dim(), &quo)?;
        if socle.is_zero() {
            break;
        }
        let lifted: Vec<Vector> = socle.basis().iter().map(|u| lift(field, n, &comp, u)).collect();
        layers.push(socle.dim());
        w = w.sum(&Subspace::span(field, n, &lifted))?;
    }
    Ok(LoewySeries { layers, p_semiartinian: w.dim() == n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// Least `N` with every product of `N` generators equal to zero.
    Nilpotent(usize),
    NotWithinBound,
}

/// `S^1 = span(mats)`, `S^{k+1} = span(mats · S^k)`; the least `N ≤ bound`
/// with `S^N = 0`. A zero `S^1` gives `Nilpotent(1)` for any bound.
pub fn nilpotency_ladder(field: Field, n: usize, mats: &[Matrix], bound: usize) -> Result<Nilpotency, LinalgError> {
    check_square(field, n, mats)?;
    // Products are carried forward as computed; echelon vectors would have
    // far larger entries over Q.
    let independent = |products: &mut dyn Iterator<Item = Matrix>| {
        let mut span = SpanBuilder::new(field, n * n);
        products.filter(|m| span.insert(m.entries())).collect::<Vec<_>>()
    };
    let mut level = independent(&mut mats.iter().cloned());
    // A non-nilpotent generator or pair product keeps every power nonzero.
    let mut short = mats.iter().cloned().chain(mats.iter().flat_map(|a| mats.iter().map(move |b| a * b)));
    if bound > 1 && !level.is_empty() && short.any(|m| !m.is_nilpotent()) {
        return Ok(Nilpotency::NotWithinBound);
    }
    let mut k = 1;
    loop {
        if level.is_empty() {
            return Ok(Nilpotency::Nilpotent(k));
        }
        if k >= bound {
            return Ok(Nilpotency::NotWithinBound);
        }
        level = independent(&mut level.iter().flat_map(|b| mats.iter().map(move |a| a * b)));
        k += 1;
    }
}

/// Predicted matrix of `a` on `v, x v, …, x^{k-1} v`, where `x` is generator
/// `level`, `v` is an eigenvector of the lower generators with values `lam`,
/// and `a` lies in the subalgebra below `x`. Uses the left datum:
/// `a · x^i v = x · (σ(a) · x^{i-1} v) + θ(a) · x^{i-1} v`.
pub fn weight_ladder_matrix(
    p: &OrePresentation,
    level: usize,
    lam: &[Scalar],
    a: &NCPoly,
    k: usize,
) -> Result<Matrix, TriangularizeError> {
    if !p.has_left_datum() {
        return Err(TriangularizeError::MissingLeftDatum);
    }
    let field = p.field();
    fn column(p: &OrePresentation, level: usize, lam: &[Scalar], a: &NCPoly, i: usize, k: usize) -> Vector {
        let field = p.field();
        let mut out = vec![field.zero(); k];
        if a.is_zero() {
            return out;
        }
        if i == 0 {
            out[0] = eval_at_values(a, lam);
            return out;
        }
        let sigma = p.sigma_left(level, a).expect("left datum");
        let theta = p.theta_left(level, a).expect("left datum");
        let shifted = column(p, level, lam, &sigma, i - 1, k);
        for r in (1..k).rev() {
            out[r] = shifted[r - 1].clone();
        }
        let rest = column(p, level, lam, &theta, i - 1, k);
        for (o, t) in out.iter_mut().zip(rest) {
            *o = &*o + &t;
        }
        out
    }
    let cols: Vec<Vector> = (0..k).map(|i| column(p, level, lam, a, i, k)).collect();
    Ok(Matrix::from_columns(field, k, &cols))
}

/// Human-readable summary used by reports.
pub fn describe_reason(reason: &FailureReason, names: &[String]) -> String {
    match reason {
        FailureReason::NoEigenvalueInField { generator, remainder } => {
            let g = names.get(*generator).cloned().unwrap_or_else(|| format!("#{generator}"));
            format!("no eigenvalue in the field for {g}: characteristic polynomial {remainder}")
        }
        FailureReason::NoCommonEigenvector { tuples_explored } => {
            format!("no common eigenvector after {tuples_explored} eigenvalue tuples")
        }
        FailureReason::NonzeroCharacterRequired { character } => {
            format!("only nonzero characters available, first {}", character.display_with(names))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::{affine_sigma_inverse, left_datum_from_right, parse_presentation};
    use crate::subspace::unit_vector;

    const Q: Field = Field::Rationals;

    fn q(v: i64) -> Scalar {
        Q.from_i64(v)
    }

    fn borel() -> Vec<Matrix> {
        vec![Matrix::from_i64(Q, &[&[1, 0], &[0, -1]]), Matrix::from_i64(Q, &[&[0, 1], &[0, 0]])]
    }

    fn anticommuting() -> Vec<Matrix> {
        vec![Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]), Matrix::from_i64(Q, &[&[1, 0], &[0, -1]])]
    }

    fn heisenberg() -> Vec<Matrix> {
        vec![Matrix::unit(Q, 3, 0, 2), Matrix::unit(Q, 3, 0, 1), Matrix::unit(Q, 3, 1, 2)]
    }

    #[test]
    fn eigenvector_examples() {
        let d = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]);
        match common_eigenvector(&[d]).unwrap() {
            EigenSearch::Found { vector, eigenvalues, .. } => {
                assert_eq!(vector, unit_vector(Q, 2, 0));
                assert_eq!(eigenvalues, vec![q(1)]);
            }
            other => panic!("{other:?}"),
        }
        match common_eigenvector(&borel()).unwrap() {
            EigenSearch::Found { vector, eigenvalues, .. } => {
                assert_eq!(vector, unit_vector(Q, 2, 0));
                assert_eq!(eigenvalues, vec![q(1), q(0)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            common_eigenvector(&anticommuting()).unwrap(),
            EigenSearch::None(FailureReason::NoCommonEigenvector { tuples_explored: 4 })
        );
        assert_eq!(common_eigenvector(&[]), Err(TriangularizeError::EmptyDimension));
    }

    #[test]
    fn borel_flag() {
        let r = triangularize_matrices(Q, 2, &borel()).unwrap();
        let r = r.success().unwrap();
        assert_eq!(r.layer_characters, vec![Character::new(vec![q(1), q(0)]), Character::new(vec![q(-1), q(0)])]);
        assert!(!r.strict);
    }

    #[test]
    fn anticommuting_fails_at_stage_zero() {
        let r = triangularize_matrices(Q, 2, &anticommuting()).unwrap();
        let c = r.failure().unwrap();
        assert_eq!(c.stage, 0);
        assert_eq!(c.reason, FailureReason::NoCommonEigenvector { tuples_explored: 4 });
        assert_eq!(c.witness_quotient, anticommuting());
    }

    #[test]
    fn already_triangular() {
        let a = Matrix::from_i64(Q, &[&[1, 5], &[0, 2]]);
        let b = Matrix::from_i64(Q, &[&[3, 0], &[0, 3]]);
        let r = triangularize_matrices(Q, 2, &[a, b]).unwrap();
        assert_eq!(r.success().unwrap().transform, Matrix::identity(Q, 2));
    }

    #[test]
    fn strict_examples() {
        let r = strict_triangularize_matrices(Q, 3, &heisenberg()).unwrap();
        let r = r.success().unwrap();
        assert!(r.strict && r.layer_characters.iter().all(Character::is_zero));
        let c = strict_triangularize_matrices(Q, 2, &borel()).unwrap();
        assert_eq!(
            c.failure().unwrap().reason,
            FailureReason::NonzeroCharacterRequired { character: Character::new(vec![q(1), q(0)]) }
        );
        let z = strict_triangularize_matrices(Q, 2, &[Matrix::zeros(Q, 2, 2)]).unwrap();
        assert_eq!(z.success().unwrap().layer_characters.len(), 2);
    }

    #[test]
    fn loewy_examples() {
        let j = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(loewy_series(Q, 3, &[j]).unwrap(), LoewySeries { layers: vec![1, 1, 1], p_semiartinian: true });
        let d = Matrix::diagonal(Q, &[q(1), q(2), q(3)]);
        assert_eq!(loewy_series(Q, 3, &[d]).unwrap(), LoewySeries { layers: vec![3], p_semiartinian: true });
        assert_eq!(
            loewy_series(Q, 2, &anticommuting()).unwrap(),
            LoewySeries { layers: vec![], p_semiartinian: false }
        );
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_ladder(Q, 3, &heisenberg(), 3).unwrap(), Nilpotency::Nilpotent(3));
        let units = [Matrix::unit(Q, 2, 0, 1), Matrix::unit(Q, 2, 1, 0)];
        assert_eq!(nilpotency_ladder(Q, 2, &units, 2).unwrap(), Nilpotency::NotWithinBound);
        assert_eq!(nilpotency_ladder(Q, 2, &[Matrix::zeros(Q, 2, 2)], 2).unwrap(), Nilpotency::Nilpotent(1));
    }

    #[test]
    fn s3_regular_obstruction() {
        let s3 =
            parse_presentation("field Q\ngens r s\npower r 3 = 1\npower s 2 = 1\nswap s r : sigma = r*r\n").unwrap();
        let m = crate::rep::regular_module(&s3).unwrap();
        let c = triangularize(&m);
        let c = c.failure().unwrap();
        assert_eq!(c.stage, 2);
        assert!(c.witness_dim() >= 2);
        assert!(matches!(c.reason, FailureReason::NoEigenvalueInField { generator: 0, .. }));
    }

    #[test]
    fn ladder_examples() {
        let borel = parse_presentation("field Q\ngens h e\nswap e h : sigma = h - 2\n").unwrap();
        let borel = left_datum_from_right(&borel, &affine_sigma_inverse(&borel).unwrap()).unwrap();
        let c = q(5);
        let m = weight_ladder_matrix(&borel, 1, &[c], &borel.gen(0), 3).unwrap();
        assert_eq!(m, Matrix::diagonal(Q, &[q(5), q(7), q(9)]));
        let plane = parse_presentation("field Q\ngens x y\nswap y x : sigma = 2*x\n").unwrap();
        let plane = left_datum_from_right(&plane, &affine_sigma_inverse(&plane).unwrap()).unwrap();
        let m = weight_ladder_matrix(&plane, 1, &[q(1)], &plane.gen(0), 3).unwrap();
        let quarter = Q.fraction(1, 4).unwrap();
        assert_eq!(m, Matrix::diagonal(Q, &[q(1), Q.fraction(1, 2).unwrap(), quarter]));
        let id = parse_presentation("field Q\ngens a x\n").unwrap();
        let id = left_datum_from_right(&id, &affine_sigma_inverse(&id).unwrap()).unwrap();
        let m = weight_ladder_matrix(&id, 1, &[q(4)], &id.gen(0), 4).unwrap();
        assert_eq!(m, Matrix::identity(Q, 4).scale(&q(4)));
        assert_eq!(
            weight_ladder_matrix(&id.without_left_datum(), 1, &[q(4)], &id.gen(0), 2),
            Err(TriangularizeError::MissingLeftDatum)
        );
    }
}
