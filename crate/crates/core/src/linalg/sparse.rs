//! Kernels of large sparse systems, such as the intertwining equations
//! `F a = b F` whose unknowns are the entries of `F`.

use super::Field;

/// A row as `(column, coefficient)` pairs, coefficients nonzero.
pub type SparseRow<F> = Vec<(usize, <F as Field>::Elem)>;

/// Row echelon form built one row at a time; each stored row has a leading
/// 1 in its pivot column and no entries to the left of it.
pub struct SparseEchelon<F: Field> {
    field: F,
    cols: usize,
    pivot_row: Vec<Option<SparseRow<F>>>,
    work: Vec<F::Elem>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: &F, cols: usize) -> Self {
        SparseEchelon { field: field.clone(), cols, pivot_row: vec![None; cols], work: vec![field.zero(); cols] }
    }

    pub fn rank(&self) -> usize {
        self.pivot_row.iter().filter(|r| r.is_some()).count()
    }

    /// Reduces `row` against the stored pivots; stores it if it is independent.
    pub fn insert(&mut self, row: &[(usize, F::Elem)]) -> bool {
        let f = &self.field;
        let mut lo = usize::MAX;
        for (c, x) in row {
            assert!(*c < self.cols, "column {c} out of range");
            self.work[*c] = f.add(&self.work[*c], x);
            lo = lo.min(*c);
        }
        if lo == usize::MAX {
            return false;
        }
        let mut lead = None;
        for c in lo..self.cols {
            if f.is_zero(&self.work[c]) {
                continue;
            }
            match &self.pivot_row[c] {
                Some(p) => {
                    let factor = self.work[c].clone();
                    for (j, y) in p {
                        self.work[*j] = f.sub(&self.work[*j], &f.mul(&factor, y));
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        let Some(c) = lead else {
            return false;
        };
        let inv = f.inv(&self.work[c]).expect("leading entry is nonzero");
        let mut stored = Vec::new();
        for j in c..self.cols {
            let x = std::mem::replace(&mut self.work[j], f.zero());
            if !f.is_zero(&x) {
                stored.push((j, f.mul(&inv, &x)));
            }
        }
        self.pivot_row[c] = Some(stored);
        true
    }

    /// One kernel vector per free column `j`, equal to 1 at `j` and 0 at the
    /// other free columns: the same basis a dense reduced echelon form gives.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|&j| self.pivot_row[j].is_none()).collect();
        free.iter()
            .map(|&j| {
                let mut v = vec![f.zero(); self.cols];
                v[j] = f.one();
                for p in (0..self.cols).rev() {
                    if let Some(row) = &self.pivot_row[p] {
                        let mut s = f.zero();
                        for (c, y) in &row[1..] {
                            if !f.is_zero(&v[*c]) {
                                s = f.add(&s, &f.mul(y, &v[*c]));
                            }
                        }
                        v[p] = f.neg(&s);
                    }
                }
                v
            })
            .collect()
    }
}

/// Kernel of the system with the given rows over `cols` unknowns.
pub fn sparse_kernel<F: Field>(field: &F, cols: usize, rows: impl IntoIterator<Item = SparseRow<F>>) -> Vec<Vec<F::Elem>> {
    let mut ech = SparseEchelon::new(field, cols);
    for r in rows {
        if ech.rank() == cols {
            break;
        }
        ech.insert(&r);
    }
    ech.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, PrimeField};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_dense_kernel(p in prop::sample::select(vec![2u64, 3, 7]), rows in 0usize..7, cols in 1usize..7, seed in prop::collection::vec(-3i64..4, 49)) {
            let f = PrimeField::new(p).unwrap();
            let m = Matrix::from_fn(&f, rows, cols, |i, j| f.from_i64(seed[i * 7 + j]));
            let sparse_rows = (0..rows).map(|i| {
                (0..cols).filter(|&j| !f.is_zero(m.get(i, j))).map(|j| (j, *m.get(i, j))).collect::<Vec<_>>()
            });
            prop_assert_eq!(sparse_kernel(&f, cols, sparse_rows), m.kernel_basis());
        }
    }
}
