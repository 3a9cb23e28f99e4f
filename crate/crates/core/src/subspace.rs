//! Subspaces in canonical form and the invariant-subspace calculus built on
//! top of them.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{row_reduce, LinalgError, Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// A subspace of `K^n`, stored as the rows of its reduced echelon basis:
/// each basis vector has a leading 1 at its pivot and every other basis
/// vector vanishes there. Equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace { field, ambient, basis }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Self {
        let mut b = SpanBuilder::new(field, ambient);
        for v in vectors {
            b.insert(v);
        }
        b.into_subspace()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    fn pivot_of(v: &[Scalar]) -> usize {
        v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero")
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| Self::pivot_of(v)).collect()
    }

    /// Residue of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = Self::pivot_of(b);
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LinalgError::AmbientMismatch(self.ambient, other.ambient))
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span(self.field, self.ambient, &all))
    }

    /// Intersection through the kernel of `[U | -W]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let (a, b) = (self.dim(), other.dim());
        let mut stacked = Matrix::zeros(self.field, self.ambient, a + b);
        for i in 0..self.ambient {
            for (j, u) in self.basis.iter().enumerate() {
                stacked.set(i, j, u[i].clone());
            }
            for (j, w) in other.basis.iter().enumerate() {
                stacked.set(i, a + j, -&w[i]);
            }
        }
        let kernel = row_reduce(&stacked).kernel;
        let vectors: Vec<Vector> =
            kernel.basis().iter().map(|coeffs| combine(self.field, self.ambient, &self.basis, &coeffs[..a])).collect();
        Ok(Subspace::span(self.field, self.ambient, &vectors))
    }

    /// Standard basis vectors at the non-pivot positions; together with
    /// `basis()` they form a basis of the ambient space.
    pub fn extend_basis(&self) -> Vec<Vector> {
        let pivots = self.pivots();
        (0..self.ambient).filter(|i| !pivots.contains(i)).map(|i| unit_vector(self.field, self.ambient, i)).collect()
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&p| v[p].clone()).collect())
    }

    /// `true` when `op` maps the subspace into itself.
    pub fn is_invariant_under(&self, op: &Matrix) -> bool {
        self.basis.iter().all(|b| self.contains(&op.apply(b)))
    }

    /// Image of the subspace under `op` (which need not be square).
    pub fn image(&self, op: &Matrix) -> Subspace {
        let imgs: Vec<Vector> = self.basis.iter().map(|b| op.apply(b)).collect();
        Subspace::span(self.field, op.rows(), &imgs)
    }
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn combine(field: Field, n: usize, vectors: &[Vector], coeffs: &[Scalar]) -> Vector {
    let mut out = vec![field.zero(); n];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(c * x);
        }
    }
    out
}

/// Incrementally maintained reduced echelon basis. `insert` reports whether
/// the vector enlarged the span.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl SpanBuilder {
    pub fn new(field: Field, dim: usize) -> Self {
        SpanBuilder { field, dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if !r[*p].is_zero() {
                let c = r[*p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace { field: self.field, ambient: self.dim, basis: self.rows.into_iter().map(|(_, v)| v).collect() }
    }
}

/// Block form of an operator relative to an invariant subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Action on the subspace, in its canonical basis.
    pub restricted: Matrix,
    /// Induced action on the quotient, in the `extend_basis` complement.
    pub induced_on_quotient: Matrix,
    /// Upper-right block coupling the quotient back into the subspace.
    pub coupling: Matrix,
    /// Columns: canonical subspace basis followed by the complement.
    pub basis: Matrix,
}

pub fn restrict_and_quotient(op: &Matrix, w: &Subspace) -> Result<BlockDecomposition, LinalgError> {
    if !op.is_square() {
        return Err(LinalgError::NotSquare { rows: op.rows(), cols: op.cols() });
    }
    if op.rows() != w.ambient_dim() {
        return Err(LinalgError::AmbientMismatch(op.rows(), w.ambient_dim()));
    }
    if let Some(witness) = w.basis().iter().find(|b| !w.contains(&op.apply(b))) {
        return Err(LinalgError::NotInvariant { witness: witness.clone() });
    }
    let n = op.rows();
    let k = w.dim();
    let cols: Vec<Vector> = w.basis().iter().cloned().chain(w.extend_basis()).collect();
    let basis = Matrix::from_columns(op.field(), n, &cols);
    let conj = op.conjugate_by(&basis);
    Ok(BlockDecomposition {
        restricted: conj.block(0, k, 0, k),
        induced_on_quotient: conj.block(k, n, k, n),
        coupling: conj.block(0, k, k, n),
        basis,
    })
}
