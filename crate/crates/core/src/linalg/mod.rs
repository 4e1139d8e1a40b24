//! Exact linear algebra over prime fields and the rationals.

pub mod field;
pub mod matrix;
pub mod sparse;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{in_span, quotient_basis, span_basis, span_rank, ColumnSolver, Echelon, Matrix, Quotient};

/// Vector helpers over a field; vectors are plain `Vec<F::Elem>`.
pub mod vector {
    use super::Field;

    pub fn zero<F: Field>(f: &F, n: usize) -> Vec<F::Elem> {
        vec![f.zero(); n]
    }

    pub fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
        let mut v = zero(f, n);
        v[i] = f.one();
        v
    }

    pub fn is_zero<F: Field>(f: &F, v: &[F::Elem]) -> bool {
        v.iter().all(|x| f.is_zero(x))
    }

    pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }

    pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|x| f.mul(c, x)).collect()
    }

    /// `acc += c * a`
    pub fn axpy<F: Field>(f: &F, acc: &mut [F::Elem], c: &F::Elem, a: &[F::Elem]) {
        if f.is_zero(c) {
            return;
        }
        for (x, y) in acc.iter_mut().zip(a) {
            if !f.is_zero(y) {
                *x = f.add(x, &f.mul(c, y));
            }
        }
    }

    /// Digits of `index` in base `q`, least significant first, as field elements.
    pub fn from_counter<F: Field>(f: &F, mut index: u64, len: usize) -> Vec<F::Elem> {
        let q = f.order().expect("finite field");
        (0..len)
            .map(|_| {
                let d = index % q;
                index /= q;
                f.element(d)
            })
            .collect()
    }
}
