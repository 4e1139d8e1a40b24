//! Dense matrices over an exact field, with deterministic row reduction.
//!
//! Pivoting rule: columns are scanned left to right and the first row (from
//! the current position down) with a nonzero entry becomes the pivot row.
//! Every basis this module returns is therefore reproducible bit for bit.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.data[i * self.cols + j] = x;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Row-major flattening, used to treat maps as vectors.
    pub fn to_vec(&self) -> Vec<F::Elem> {
        self.data.clone()
    }
    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), other.shape());
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: &F::Elem, other: &Self) {
        assert_eq!(self.shape(), other.shape());
        let f = self.field.clone();
        if f.is_zero(c) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !f.is_zero(b) {
                *a = f.add(a, &f.mul(c, b));
            }
        }
    }

    /// Linear combination `sum_i coeffs[i] * mats[i]`; `shape` is used when the list is empty.
    pub fn combination(field: &F, shape: (usize, usize), coeffs: &[F::Elem], mats: &[Self]) -> Self {
        assert_eq!(coeffs.len(), mats.len());
        let mut out = Self::zeros(field, shape.0, shape.1);
        for (c, m) in coeffs.iter().zip(mats) {
            out.add_scaled(c, m);
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j).clone())
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(field: &F, rows: usize, blocks: &[&Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut c = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, c, b);
            c += b.cols;
        }
        out
    }

    pub fn vstack(field: &F, cols: usize, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.set_block(r, 0, b);
            r += b.rows;
        }
        out
    }

    pub fn block_diag(field: &F, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(self.get(i / other.rows, j / other.cols), other.get(i % other.rows, j % other.cols))
        })
    }

    pub fn rref(&self) -> Echelon<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let t = f.mul(&factor, &m.data[r * m.cols + j]);
                    let idx = i * m.cols + j;
                    m.data[idx] = f.sub(&m.data[idx], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per
    /// free column, in reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![f.zero(); self.cols];
                v[j] = f.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(reduced.get(r, j));
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let bm = Self::from_columns(f, self.rows, &[b.to_vec()]);
        let aug = Self::hstack(f, self.rows, &[self, &bm]);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = b` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows);
        let f = &self.field;
        let aug = Self::hstack(f, self.rows, &[self, b]);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, reduced.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let id = Self::identity(&self.field, self.rows);
        if self.rank() != self.rows {
            return None;
        }
        self.solve_matrix(&id)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn determinant(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(&factor, &m.data[c * n + j]);
                    m.data[i * n + j] = f.sub(&m.data[i * n + j], &t);
                }
            }
        }
        det
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn column_space_basis(&self) -> Vec<Vec<F::Elem>> {
        self.rref().pivots.iter().map(|&j| self.column(j)).collect()
    }
}

/// Coordinates with respect to a fixed family of linearly independent
/// columns, prepared once: a set of rows on which the family is invertible.
#[derive(Debug, Clone)]
pub struct ColumnSolver<F: Field> {
    basis: Matrix<F>,
    rows: Vec<usize>,
    inverse: Matrix<F>,
}

impl<F: Field> ColumnSolver<F> {
    /// `None` if the columns are dependent.
    pub fn new(basis: Matrix<F>) -> Option<Self> {
        let f = basis.field().clone();
        let rows = basis.transpose().rref().pivots;
        if rows.len() != basis.cols() {
            return None;
        }
        let square = Matrix::from_fn(&f, rows.len(), basis.cols(), |i, j| basis.get(rows[i], j).clone());
        let inverse = square.inverse()?;
        Some(ColumnSolver { basis, rows, inverse })
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    /// The unique `z` with `basis * z = v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(v.len(), self.basis.rows(), "vector length");
        let picked: Vec<F::Elem> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let z = self.inverse.mul_vec(&picked);
        (self.basis.mul_vec(&z) == v).then_some(z)
    }
}

/// Rank of a family of vectors of length `ambient`.
pub fn span_rank<F: Field>(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, ambient, vectors).rank()
}

/// Echelonized basis of the span of `vectors` (reduced rows).
pub fn span_basis<F: Field>(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows = Matrix::from_columns(field, ambient, vectors).transpose();
    let e = rows.rref();
    (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect()
}

pub fn in_span<F: Field>(field: &F, ambient: usize, vectors: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    if v.iter().all(|x| field.is_zero(x)) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    Matrix::from_columns(field, ambient, vectors).solve(v).expect("length checked").is_some()
}

/// Projection onto and section of the quotient of an ambient space by a subspace.
#[derive(Debug, Clone)]
pub struct Quotient<F: Field> {
    /// `dim_quotient x ambient`; its kernel is the subspace.
    pub projection: Matrix<F>,
    /// `ambient x dim_quotient`; `projection * lift = id`.
    pub lift: Matrix<F>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
    pub fn ambient(&self) -> usize {
        self.projection.cols()
    }
}

/// Complement basis of `span(sub)` given by the non-pivot coordinate vectors.
pub fn quotient_basis<F: Field>(field: &F, sub: &[Vec<F::Elem>], ambient: usize) -> Quotient<F> {
    for v in sub {
        assert_eq!(v.len(), ambient, "subspace vector outside the ambient space");
    }
    let rows = if sub.is_empty() {
        Matrix::zeros(field, 0, ambient)
    } else {
        Matrix::from_columns(field, ambient, sub).transpose()
    };
    let Echelon { reduced, pivots } = rows.rref();
    let mut is_pivot = vec![false; ambient];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ambient).filter(|&j| !is_pivot[j]).collect();
    let q = free.len();
    let mut position = vec![usize::MAX; ambient];
    for (k, &j) in free.iter().enumerate() {
        position[j] = k;
    }
    let mut projection = Matrix::zeros(field, q, ambient);
    let mut lift = Matrix::zeros(field, ambient, q);
    for (k, &j) in free.iter().enumerate() {
        projection.set(k, j, field.one());
        lift.set(j, k, field.one());
    }
    // e_p for a pivot column p reduces to -(row r restricted to the free columns).
    for (r, &p) in pivots.iter().enumerate() {
        for &j in &free {
            let x = reduced.get(r, j);
            if !field.is_zero(x) {
                projection.set(position[j], p, field.neg(x));
            }
        }
    }
    Quotient { projection, lift }
}
