//! Dense exact matrices, row reduction and characteristic polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not invariant: image of a basis vector leaves it")]
    NotInvariant { witness: Vec<Scalar> },
    #[error("matrix sizes differ")]
    SizeMismatch,
    #[error("ragged rows")]
    Ragged,
}

/// Row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

pub type Vector = Vec<Scalar>;

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(Matrix { rows: r, cols: c, field, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, data).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, n: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(field: Field, entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(field, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// The matrix unit `E_{ij}` (zero-based).
    pub fn unit(field: Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major flattening, used to treat matrices as vectors.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, field, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols.min(r)).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols.min(r + 1)).all(|c| self.get(r, c).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vector {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sub-block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m.set(r - r0, c - c0, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let rr = row_reduce(self);
        (rr.rank == self.rows).then_some(rr.transform)
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).rank
    }

    /// `basis⁻¹ · self · basis`, where the columns of `basis` form a basis.
    pub fn conjugate_by(&self, basis: &Matrix) -> Matrix {
        let inv = basis.inverse().expect("change of basis must be invertible");
        &(&inv * self) * basis
    }

    pub fn trace(&self) -> Scalar {
        self.diagonal_entries().iter().fold(self.field.zero(), |a, b| &a + b)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

/// Output of [`row_reduce`]: `transform · m = rref`.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rref: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel: Subspace,
    pub transform: Matrix,
}

/// Gauss-Jordan elimination; the pivot in each column is the first nonzero
/// entry at or below the current row.
pub fn row_reduce(m: &Matrix) -> RowReduction {
    let f = m.field;
    let mut a = m.clone();
    let mut t = Matrix::identity(f, m.rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            swap_rows(&mut a, p, row);
            swap_rows(&mut t, p, row);
        }
        let inv = a.get(row, col).inv().expect("pivot is nonzero");
        scale_row(&mut a, row, &inv);
        scale_row(&mut t, row, &inv);
        for r in 0..m.rows {
            if r != row && !a.get(r, col).is_zero() {
                let factor = a.get(r, col).clone();
                axpy_row(&mut a, r, row, &factor);
                axpy_row(&mut t, r, row, &factor);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    let mut kernel_vectors = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a.get(r, free);
        }
        kernel_vectors.push(v);
    }
    RowReduction { kernel: Subspace::span(f, m.cols, &kernel_vectors), rref: a, rank, pivots, transform: t }
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    for c in 0..m.cols {
        m.data.swap(a * m.cols + c, b * m.cols + c);
    }
}

fn scale_row(m: &mut Matrix, r: usize, s: &Scalar) {
    for c in 0..m.cols {
        let idx = r * m.cols + c;
        m.data[idx] = &m.data[idx] * s;
    }
}

/// row[target] -= factor * row[source]
fn axpy_row(m: &mut Matrix, target: usize, source: usize, factor: &Scalar) {
    for c in 0..m.cols {
        let s = m.get(source, c);
        if s.is_zero() {
            continue;
        }
        let delta = factor * s;
        let idx = target * m.cols + c;
        m.data[idx] = &m.data[idx] - &delta;
    }
}

/// Monic `det(tI - m)` by Berkowitz's division-free recurrence.
pub fn char_poly(m: &Matrix) -> Result<UniPoly, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let f = m.field;
    let n = m.rows;
    // `c` holds the coefficients of the characteristic polynomial of the
    // leading r×r block, highest degree first.
    let mut c: Vec<Scalar> = vec![f.one()];
    for r in 0..n {
        // Leading block is r×r; the new row/column is index r.
        let arr = m.get(r, r).clone();
        let row: Vec<Scalar> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut col: Vec<Scalar> = (0..r).map(|i| m.get(i, r).clone()).collect();
        // Toeplitz column: 1, -a_rr, -R S, -R A S, -R A^2 S, ...
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(f.one());
        toeplitz.push(-&arr);
        for _ in 0..r {
            let rs = row.iter().zip(&col).fold(f.zero(), |acc, (a, b)| &acc + &(a * b));
            toeplitz.push(-rs);
            col = (0..r).map(|i| (0..r).fold(f.zero(), |acc, k| &acc + &(m.get(i, k) * &col[k]))).collect();
        }
        // new_c = T · c, T lower triangular Toeplitz of size (r+2)×(r+1).
        let mut next = vec![f.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < toeplitz.len() {
                    *slot = &*slot + &(&toeplitz[i - j] * cj);
                }
            }
        }
        c = next;
    }
    c.reverse();
    Ok(UniPoly::new(f, c))
}

/// Evaluates a univariate polynomial at a square matrix (Horner).
pub fn eval_at_matrix(p: &UniPoly, m: &Matrix) -> Matrix {
    let f = m.field;
    let mut acc = Matrix::zeros(f, m.rows, m.cols);
    let id = Matrix::identity(f, m.rows);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * m) + &id.scale(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    const Q: Field = Field::Rationals;

    #[test]
    fn rank_and_kernel() {
        let id = Matrix::identity(Q, 3);
        let rr = row_reduce(&id);
        assert_eq!((rr.rank, rr.kernel.dim()), (3, 0));

        let z = Matrix::zeros(Q, 2, 3);
        let rr = row_reduce(&z);
        assert_eq!((rr.rank, rr.kernel.dim()), (0, 3));

        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let rr = row_reduce(&m);
        assert_eq!(rr.rank, 1);
        let expected = Subspace::span(Q, 2, &[vec![Q.from_i64(-2), Q.from_i64(1)]]);
        assert_eq!(rr.kernel, expected);
        assert_eq!(&rr.transform * &m, rr.rref);
    }

    #[test]
    fn char_polys() {
        let j = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        assert_eq!(char_poly(&j).unwrap().to_string(), "t^2");
        let d = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]);
        assert_eq!(char_poly(&d).unwrap().to_string(), "t^2 - 3*t + 2");
        let s = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(char_poly(&s).unwrap().to_string(), "t^2 - 1");
        assert!(matches!(char_poly(&Matrix::zeros(Q, 2, 3)), Err(LinalgError::NotSquare { .. })));
        assert_eq!(char_poly(&Matrix::zeros(Q, 0, 0)).unwrap().to_string(), "1");
    }

    #[test]
    fn char_poly_three_by_three() {
        // det(tI - A) for A = [[2,1,0],[0,2,1],[1,0,2]] is (t-2)^3 - 1
        let a = Matrix::from_i64(Q, &[&[2, 1, 0], &[0, 2, 1], &[1, 0, 2]]);
        assert_eq!(char_poly(&a).unwrap(), UniPoly::from_i64(Q, &[-9, 12, -6, 1]));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(Q, 2));
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
