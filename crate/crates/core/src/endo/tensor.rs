//! Tensor products over a finite-dimensional algebra, as explicit quotients
//! of the tensor product over the field.

use crate::algebra::FdModule;
use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, span_basis, Field, Matrix, Quotient};

/// `X ⊗_E Y` for a right `E`-module `X` and a left `E`-module `Y` given as a
/// right `E^op`-module. Coordinates of `X ⊗_k Y` are indexed `x * dim Y + y`.
#[derive(Clone, Debug)]
pub struct Tensor<F: Field> {
    pub left_dim: usize,
    pub right_dim: usize,
    quotient: Quotient<F>,
}

impl<F: Field> Tensor<F> {
    pub fn new(x: &FdModule<F>, y: &FdModule<F>) -> Result<Self> {
        let (ax, ay) = (x.algebra(), y.algebra());
        if ax.dim() != ay.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self::with_relations(x, y, &[]))
    }

    /// Like `new`, additionally dividing out the given vectors of `X ⊗_k Y`.
    pub fn with_relations(x: &FdModule<F>, y: &FdModule<F>, extra: &[Vec<F::Elem>]) -> Self {
        let f = x.field();
        let (dx, dy) = (x.dim(), y.dim());
        let (ix, iy) = (Matrix::identity(f, dx), Matrix::identity(f, dy));
        let mut rel: Vec<Vec<F::Elem>> = extra.to_vec();
        for (a, b) in x.action().iter().zip(y.action()) {
            rel.extend(a.kron(&iy).sub(&ix.kron(b)).columns());
        }
        let sub = span_basis(f, dx * dy, &rel);
        Tensor { left_dim: dx, right_dim: dy, quotient: quotient_basis(f, &sub, dx * dy) }
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// `X ⊗_k Y -> X ⊗_E Y`
    pub fn projection(&self) -> &Matrix<F> {
        &self.quotient.projection
    }

    /// A section of `projection`.
    pub fn lift(&self) -> &Matrix<F> {
        &self.quotient.lift
    }

    /// `f ⊗ g: source -> self` for `f: X' -> X`, `g: Y' -> Y`.
    pub fn map(&self, source: &Tensor<F>, f: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
        self.projection().mul(&f.kron(g)).mul(source.lift())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::linalg::PrimeField;
    use std::sync::Arc;

    #[test]
    fn tensor_with_the_regular_module() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = Arc::new(path_algebra(&q, &[], &PrimeField::new(3).unwrap()).unwrap());
        let op = Arc::new(a.opposite());
        let free_left = FdModule::regular(op.clone());
        for v in 0..2 {
            let pv = FdModule::projective(a.clone(), v).unwrap();
            // e_v A ⊗_A A ≅ e_v A
            assert_eq!(Tensor::new(&pv, &free_left).unwrap().dim(), pv.dim());
        }
        let s1 = FdModule::from_representation(a.clone(), &[1, 0], &[Matrix::zeros(a.field(), 0, 1)]).unwrap();
        let e2 = FdModule::projective(op, 1).unwrap();
        // S1 ⊗ A e2 = S1 e2 = 0
        assert_eq!(Tensor::new(&s1, &e2).unwrap().dim(), 0);
    }
}
