//! Finite-dimensional representations of a presentation.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{LinalgError, Matrix, Vector};
use crate::ore::{Monomial, NCPoly, OrePresentation};
use crate::scalar::{Field, Scalar};
use crate::subspace::{restrict_and_quotient, SpanBuilder, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("polynomial does not belong to the module's presentation")]
    PresentationMismatch,
    #[error("expected {expected} action matrices of size {dim}, got something else")]
    Shape { expected: usize, dim: usize },
    #[error("subspace is not invariant under generator {generator}")]
    NotInvariant { generator: String, vector: Vector },
    #[error("algebra is infinite-dimensional: no power relation for {}", .0.join(", "))]
    InfiniteDimensional(Vec<String>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite-dimensional module: one matrix per generator.
///
/// `verified` records whether every defining relation holds. Unverified
/// modules can be evaluated but theorem checkers refuse them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    presentation: Arc<OrePresentation>,
    dim: usize,
    action: Vec<Matrix>,
    verified: bool,
}

impl FDModule {
    /// Builds a module and checks its relations.
    pub fn new(presentation: Arc<OrePresentation>, dim: usize, action: Vec<Matrix>) -> Result<Self, ModuleError> {
        let mut m = Self::unverified(presentation, dim, action)?;
        m.verified = check_module(&m).passed();
        Ok(m)
    }

    /// Builds a module without checking relations.
    pub fn unverified(
        presentation: Arc<OrePresentation>,
        dim: usize,
        action: Vec<Matrix>,
    ) -> Result<Self, ModuleError> {
        let shape_ok = action.len() == presentation.ngens()
            && action.iter().all(|a| a.rows() == dim && a.cols() == dim && a.field() == presentation.field());
        if !shape_ok {
            return Err(ModuleError::Shape { expected: presentation.ngens(), dim });
        }
        Ok(FDModule { presentation, dim, action, verified: false })
    }

    pub fn presentation(&self) -> &OrePresentation {
        &self.presentation
    }

    pub fn presentation_arc(&self) -> &Arc<OrePresentation> {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.presentation.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// The same action viewed as a module over the first `level` generators.
    pub fn restrict_to_level(&self, level: usize) -> FDModule {
        let p = Arc::new(self.presentation.truncate(level));
        let mut m = FDModule { presentation: p, dim: self.dim, action: self.action[..level].to_vec(), verified: false };
        m.verified = self.verified || check_module(&m).passed();
        m
    }
}

/// The matrix of `p` acting on `m`.
pub fn evaluate(p: &NCPoly, m: &FDModule) -> Result<Matrix, ModuleError> {
    if p.field() != m.field() || p.nvars() > m.presentation.ngens() {
        return Err(ModuleError::PresentationMismatch);
    }
    Ok(evaluate_on(p, m.field(), m.dim, &m.action))
}

/// Evaluates on bare matrices; `mats` must cover every generator of `p`.
pub fn evaluate_on(p: &NCPoly, field: Field, dim: usize, mats: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    let mut powers: Vec<Vec<Matrix>> = vec![Vec::new(); mats.len()];
    for (mono, c) in p.terms() {
        let mut t = Matrix::identity(field, dim);
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[i];
            while cache.len() < e as usize {
                let next = match cache.last() {
                    None => mats[i].clone(),
                    Some(prev) => prev * &mats[i],
                };
                cache.push(next);
            }
            t = &t * &cache[e as usize - 1];
        }
        out = &out + &t.scale(c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    /// Human-readable relation, such as `y·x = 2*x·y`.
    pub relation: String,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every swap and power relation on the action matrices.
pub fn check_module(m: &FDModule) -> RelationReport {
    let p = &m.presentation;
    let names = p.names();
    let f = m.field();
    let eval = |q: &NCPoly| evaluate_on(q, f, m.dim, &m.action);
    let mut report = RelationReport::default();
    for j in 0..p.ngens() {
        for i in 0..j {
            let rule = p.right_rule(j, i);
            let lhs = &m.action[j] * &m.action[i];
            let rhs = &(&eval(&rule.sigma) * &m.action[j]) + &eval(&rule.theta);
            report.checked += 1;
            if lhs != rhs {
                report.failures.push(RelationFailure {
                    relation: format!(
                        "{}·{} = ({})·{} + {}",
                        names[j],
                        names[i],
                        rule.sigma.display_with(names),
                        names[j],
                        rule.theta.display_with(names)
                    ),
                    lhs,
                    rhs,
                });
            }
        }
    }
    for i in 0..p.ngens() {
        if let Some(rule) = p.power_rule(i) {
            let lhs = m.action[i].pow(rule.bound);
            let rhs = eval(&rule.reduction);
            report.checked += 1;
            if lhs != rhs {
                report.failures.push(RelationFailure {
                    relation: format!("{}^{} = {}", names[i], rule.bound, rule.reduction.display_with(names)),
                    lhs,
                    rhs,
                });
            }
        }
    }
    report
}

/// Smallest invariant subspace containing `seeds`, by breadth-first
/// saturation.
pub fn submodule_closure(m: &FDModule, seeds: &[Vector]) -> Subspace {
    closure_under(m.field(), m.dim, &m.action, seeds)
}

pub fn closure_under(field: Field, dim: usize, mats: &[Matrix], seeds: &[Vector]) -> Subspace {
    let mut span = SpanBuilder::new(field, dim);
    let mut queue: VecDeque<Vector> = VecDeque::new();
    for s in seeds {
        if span.insert(s) {
            queue.push_back(s.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for a in mats {
            let w = a.apply(&v);
            if span.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    span.into_subspace()
}

/// Induced module on `V / w`, written in the coordinates of the standard
/// basis vectors complementary to the pivots of `w`.
pub fn quotient_module(m: &FDModule, w: &Subspace) -> Result<FDModule, ModuleError> {
    let mut action = Vec::with_capacity(m.action.len());
    for (i, a) in m.action.iter().enumerate() {
        match restrict_and_quotient(a, w) {
            Ok(block) => action.push(block.induced_on_quotient),
            Err(LinalgError::NotInvariant { witness }) => {
                return Err(ModuleError::NotInvariant { generator: m.presentation.names()[i].clone(), vector: witness })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(FDModule { presentation: m.presentation.clone(), dim: m.dim - w.dim(), action, verified: m.verified })
}

/// Restriction to an invariant subspace, in its canonical basis.
pub fn submodule(m: &FDModule, w: &Subspace) -> Result<FDModule, ModuleError> {
    let mut action = Vec::with_capacity(m.action.len());
    for (i, a) in m.action.iter().enumerate() {
        match restrict_and_quotient(a, w) {
            Ok(block) => action.push(block.restricted),
            Err(LinalgError::NotInvariant { witness }) => {
                return Err(ModuleError::NotInvariant { generator: m.presentation.names()[i].clone(), vector: witness })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(FDModule { presentation: m.presentation.clone(), dim: w.dim(), action, verified: m.verified })
}

/// Normal monomials of a presentation in which every generator carries a
/// power relation, in increasing exponent order.
pub fn regular_basis(p: &OrePresentation) -> Result<Vec<Monomial>, ModuleError> {
    let unbounded: Vec<String> =
        (0..p.ngens()).filter(|&i| p.power_rule(i).is_none()).map(|i| p.names()[i].clone()).collect();
    if !unbounded.is_empty() {
        return Err(ModuleError::InfiniteDimensional(unbounded));
    }
    let bounds: Vec<u32> = (0..p.ngens()).map(|i| p.power_rule(i).expect("bounded").bound).collect();
    let mut out = vec![Monomial::one(p.ngens())];
    for (i, &b) in bounds.iter().enumerate() {
        out = out.into_iter().flat_map(|m| (0..b).map(move |e| m.with(i, e))).collect();
    }
    out.sort();
    Ok(out)
}

/// Coordinates of a normal-form polynomial in `basis`.
pub fn coordinates_in(basis: &[Monomial], p: &NCPoly) -> Vector {
    basis.iter().map(|m| p.coeff(m)).collect()
}

/// Left regular representation. The relations are checked rather than
/// assumed, so an inconsistent presentation yields an unverified module.
pub fn regular_module(p: &OrePresentation) -> Result<FDModule, ModuleError> {
    let basis = regular_basis(p)?;
    let f = p.field();
    let mut rw = p.rewriter();
    let action = (0..p.ngens())
        .map(|i| {
            let x = p.gen(i);
            let cols: Vec<Vector> = basis
                .iter()
                .map(|b| {
                    let bp = NCPoly::monomial(f, b.clone(), f.one());
                    coordinates_in(&basis, &rw.mul(&x, &bp))
                })
                .collect();
            Matrix::from_columns(f, basis.len(), &cols)
        })
        .collect();
    FDModule::new(Arc::new(p.clone()), basis.len(), action)
}

/// A linear basis of the unital algebra generated by `mats`, together with
/// the word (indices into `mats`) that produced each element. Words are
/// explored by length, then lexicographically.
pub fn generated_algebra_basis_with_words(
    field: Field,
    n: usize,
    mats: &[Matrix],
) -> Result<Vec<(Vec<usize>, Matrix)>, LinalgError> {
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(LinalgError::SizeMismatch);
    }
    let mut span = SpanBuilder::new(field, n * n);
    let id = Matrix::identity(field, n);
    let mut out = Vec::new();
    let mut frontier = Vec::new();
    if n > 0 && span.insert(id.entries()) {
        out.push((Vec::new(), id.clone()));
        frontier.push((Vec::new(), id));
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (word, m) in &frontier {
            for (g, a) in mats.iter().enumerate() {
                let prod = m * a;
                if span.insert(prod.entries()) {
                    let mut w: Vec<usize> = word.clone();
                    w.push(g);
                    out.push((w.clone(), prod.clone()));
                    next.push((w, prod));
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

pub fn generated_algebra_basis(field: Field, n: usize, mats: &[Matrix]) -> Result<Vec<Matrix>, LinalgError> {
    Ok(generated_algebra_basis_with_words(field, n, mats)?.into_iter().map(|(_, m)| m).collect())
}

/// Coordinates of a matrix in a basis of matrices, if it lies in the span.
pub fn matrix_coordinates(basis: &[Matrix], target: &Matrix) -> Option<Vector> {
    let field = target.field();
    let len = target.entries().len();
    let cols: Vec<Vector> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let a = Matrix::from_columns(field, len, &cols);
    solve(&a, target.entries())
}

/// One solution of `a·x = b`, or `None`.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vector> {
    let field = a.field();
    let mut aug = Matrix::zeros(field, a.rows(), a.cols() + 1);
    for (r, rhs) in b.iter().enumerate().take(a.rows()) {
        for c in 0..a.cols() {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols(), rhs.clone());
    }
    let red = crate::matrix::row_reduce(&aug);
    if red.pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![field.zero(); a.cols()];
    for (row, &p) in red.pivots.iter().enumerate() {
        x[p] = red.rref.get(row, a.cols()).clone();
    }
    Some(x)
}
