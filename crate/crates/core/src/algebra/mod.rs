//! Finite-dimensional algebras, their right modules, and brute-force
//! enumeration of small modules.
//!
//! Conventions used throughout the crate:
//! * paths compose left to right, so right modules are covariant quiver
//!   representations and `Hom(e_v A, M) = M e_v`;
//! * a module stores, for each basis element `b`, the matrix of `x -> x b`
//!   acting on column vectors, hence `act(b1 b2) = act(b2) act(b1)`;
//! * a module map `f: M -> N` is a `dim N x dim M` matrix with
//!   `f act_M(b) = act_N(b) f`.

mod enumerate;
mod homological;
mod iso;
pub(crate) mod module;
mod quiver;

use std::sync::Arc;

pub use enumerate::{
    enumerate_modules, enumerate_submodules, primitive_idempotents, EnumConfig, Submodule,
};
pub use homological::{ext1_dim, free_cover};
pub use iso::{algebra_isomorphism, is_isomorphic, IsoConfig};
pub use module::{hom_space, map_calculus, trace_of, FdModule, MapCalculus, ModuleMap};
pub use quiver::{path_algebra, Arrow, LinComb, Path, PathBasis, Quiver};

use crate::error::{invariant, Error, Result};
use crate::linalg::{in_span, vector, Field, Matrix};

/// Algebra given by a basis, structure constants, a unit and a complete set
/// of orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    /// `mult[i][j]` holds the coordinates of `b_i * b_j`.
    mult: Vec<Vec<Vec<F::Elem>>>,
    unit: Vec<F::Elem>,
    idempotents: Vec<Vec<F::Elem>>,
    /// Basis indices generating the algebra together with the unit.
    generators: Vec<usize>,
    paths: Option<Arc<PathBasis<F>>>,
}

impl<F: Field> PartialEq for FiniteDimAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.labels == other.labels
            && self.mult == other.mult
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }
}

impl<F: Field> FiniteDimAlgebra<F> {
    /// Validates associativity, unit laws and the idempotent decomposition.
    pub fn new(
        field: F,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
        idempotents: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let n = labels.len();
        let shape_ok = mult.len() == n
            && mult.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && unit.len() == n
            && idempotents.iter().all(|e| e.len() == n);
        if !shape_ok {
            return Err(Error::Dimension("structure constants do not match the basis size".into()));
        }
        let mut alg = FiniteDimAlgebra {
            field,
            labels,
            mult,
            unit,
            idempotents,
            generators: Vec::new(),
            paths: None,
        };
        alg.check_axioms()?;
        alg.generators = alg.compute_generators();
        Ok(alg)
    }

    pub(crate) fn with_paths(mut self, paths: PathBasis<F>) -> Self {
        self.paths = Some(Arc::new(paths));
        self
    }

    fn check_axioms(&self) -> Result<()> {
        let f = &self.field;
        let n = self.dim();
        for i in 0..n {
            let b = vector::unit(f, n, i);
            invariant(self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b, || {
                format!("unit law fails on basis element {}", self.labels[i])
            })?;
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coords(&self.mult[i][j], &vector::unit(f, n, k));
                    let right = self.mul_coords(&vector::unit(f, n, i), &self.mult[j][k]);
                    invariant(left == right, || {
                        format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )
                    })?;
                }
            }
        }
        let mut sum = vector::zero(f, n);
        for (a, e) in self.idempotents.iter().enumerate() {
            sum = vector::add(f, &sum, e);
            for (b, e2) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, e2);
                let expected = if a == b { e.clone() } else { vector::zero(f, n) };
                invariant(p == expected, || format!("idempotents {a} and {b} are not orthogonal idempotents"))?;
            }
            invariant(!vector::is_zero(f, e), || format!("idempotent {a} is zero"))?;
        }
        invariant(n == 0 || sum == self.unit, || "idempotents do not sum to the unit".into())
    }

    /// Greedy choice of basis elements generating the algebra with the unit.
    fn compute_generators(&self) -> Vec<usize> {
        let n = self.dim();
        let mut gens: Vec<usize> = Vec::new();
        let mut span: Vec<Vec<F::Elem>> = if n == 0 { Vec::new() } else { vec![self.unit.clone()] };
        for i in 0..n {
            let b = vector::unit(&self.field, n, i);
            if in_span(&self.field, n, &span, &b) {
                continue;
            }
            gens.push(i);
            span = self.closure(&span, &gens);
            if span.len() == n {
                break;
            }
        }
        gens
    }

    /// Basis of the span of `start` closed under right multiplication by the generators.
    fn closure(&self, start: &[Vec<F::Elem>], gens: &[usize]) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let n = self.dim();
        let mut basis: Vec<Vec<F::Elem>> = Vec::new();
        let mut queue: Vec<Vec<F::Elem>> = start.to_vec();
        for g in gens {
            queue.push(vector::unit(f, n, *g));
        }
        while let Some(v) = queue.pop() {
            if in_span(f, n, &basis, &v) {
                continue;
            }
            basis.push(v.clone());
            for &g in gens {
                queue.push(self.mul(&v, &vector::unit(f, n, g)));
                queue.push(self.mul(&vector::unit(f, n, g), &v));
            }
        }
        basis
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn idempotents(&self) -> &[Vec<F::Elem>] {
        &self.idempotents
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn paths(&self) -> Option<&PathBasis<F>> {
        self.paths.as_deref()
    }
    pub fn structure_constants(&self) -> &Vec<Vec<Vec<F::Elem>>> {
        &self.mult
    }
    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        vector::unit(&self.field, self.dim(), i)
    }

    /// Product of two elements given in coordinates.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.mul_coords(x, y)
    }

    fn mul_coords(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vector::zero(f, n);
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                vector::axpy(f, &mut out, &f.mul(xi, yj), &self.mult[i][j]);
            }
        }
        out
    }

    /// Matrix of left multiplication `y -> x y`.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<_> = (0..self.dim()).map(|j| self.mul(x, &self.basis_element(j))).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Matrix of right multiplication `y -> y x`.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<_> = (0..self.dim()).map(|j| self.mul(&self.basis_element(j), x)).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// The opposite algebra, same basis, `b_i *op b_j = b_j b_i`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mult = (0..n).map(|i| (0..n).map(|j| self.mult[j][i].clone()).collect()).collect();
        let labels = self.labels.iter().map(|l| format!("{l}^op")).collect();
        let mut alg = FiniteDimAlgebra {
            field: self.field.clone(),
            labels,
            mult,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            generators: Vec::new(),
            paths: None,
        };
        alg.generators = alg.compute_generators();
        alg
    }

    /// Copy of this algebra with a different complete set of orthogonal idempotents.
    pub fn with_idempotents(&self, idempotents: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut alg = self.clone();
        alg.idempotents = idempotents;
        alg.check_axioms()?;
        Ok(alg)
    }

    /// Index of the vertex idempotent for a path algebra vertex label.
    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        let paths = self.paths().ok_or_else(|| Error::Precondition("not a path algebra".into()))?;
        paths
            .quiver
            .vertex_index(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Basis of the two-sided Peirce component `e_i A e_j`.
    pub fn peirce_component(&self, i: usize, j: usize) -> Vec<Vec<F::Elem>> {
        let ei = &self.idempotents[i];
        let ej = &self.idempotents[j];
        let images: Vec<_> = (0..self.dim())
            .map(|k| self.mul(&self.mul(ei, &self.basis_element(k)), ej))
            .collect();
        crate::linalg::span_basis(&self.field, self.dim(), &images)
    }

    /// Every element of a finite algebra, in counter order.
    pub(crate) fn elements_of_span(&self, span: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>> {
        let f = &self.field;
        let q = f.order().ok_or(Error::InfiniteField)?;
        let count = (q as u128).checked_pow(span.len() as u32).unwrap_or(u128::MAX);
        if count > 1 << 20 {
            return Err(Error::CapExceeded(format!("{count} elements to enumerate")));
        }
        Ok((0..count as u64)
            .map(|c| {
                let coeffs = vector::from_counter(f, c, span.len());
                let mut v = vector::zero(f, self.dim());
                for (a, s) in coeffs.iter().zip(span) {
                    vector::axpy(f, &mut v, a, s);
                }
                v
            })
            .collect())
    }
}
