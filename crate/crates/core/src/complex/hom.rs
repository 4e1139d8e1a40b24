//! Chain maps between two-term complexes modulo homotopy.

use crate::algebra::module::{coordinates, hom_matrices};
use crate::algebra::FdModule;
use crate::complex::TwoTermComplex;
use crate::error::{invariant, Error, Result};
use crate::linalg::{quotient_basis, span_basis, vector, ColumnSolver, Field, Matrix, Quotient};

/// A chain map `X -> Y[shift]`: `m1: X^-1 -> Y^(shift-1)` and
/// `m0: X^0 -> Y^shift`, where entries of `Y` outside degrees -1, 0 are zero
/// (and the corresponding matrices have zero rows).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F: Field> {
    pub shift: i32,
    pub m1: Matrix<F>,
    pub m0: Matrix<F>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(shift: i32, m1: Matrix<F>, m0: Matrix<F>) -> Self {
        ChainMap { shift, m1, m0 }
    }

    pub fn component(&self, k: i32) -> Option<&Matrix<F>> {
        match k {
            -1 => Some(&self.m1),
            0 => Some(&self.m0),
            _ => None,
        }
    }

    /// `self` followed by `g[shift]`, for `g: Y -> Z[m]`.
    pub fn then(&self, g: &ChainMap<F>, source: &TwoTermComplex<F>, target: &TwoTermComplex<F>) -> ChainMap<F> {
        let f = source.field();
        let m = self.shift + g.shift;
        let comp = |k: i32, fk: &Matrix<F>| -> Matrix<F> {
            match g.component(k + self.shift) {
                Some(gk) if fk.rows() == gk.cols() => gk.mul(fk),
                _ => Matrix::zeros(f, target.entry_dim(k + m), source.entry_dim(k)),
            }
        };
        ChainMap { shift: m, m1: comp(-1, &self.m1), m0: comp(0, &self.m0) }
    }

    pub fn flatten(&self) -> Vec<F::Elem> {
        let mut v = self.m1.to_vec();
        v.extend(self.m0.to_vec());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.m1.is_zero() && self.m0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ChainMap { shift: self.shift, m1: self.m1.add(&other.m1), m0: self.m0.add(&other.m0) }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        ChainMap { shift: self.shift, m1: self.m1.scale(c), m0: self.m0.scale(c) }
    }

    /// Checks the chain-map condition for `X -> Y[shift]`; the differential of
    /// `Y[n]` is `(-1)^n d_Y`, and the sign does not affect the condition.
    pub fn is_chain_map(&self, x: &TwoTermComplex<F>, y: &TwoTermComplex<F>) -> bool {
        let n = self.shift;
        let shapes = self.m1.shape() == (y.entry_dim(n - 1), x.m1.dim()) && self.m0.shape() == (y.entry_dim(n), x.m0.dim());
        if !shapes {
            return false;
        }
        // d_{Y[n]} f^-1 = f^0 d_X, with d_{Y[n]}: Y^(n-1) -> Y^n nonzero only for n = 0.
        let lhs = if n == 0 { y.d.mul(&self.m1) } else { Matrix::zeros(x.field(), y.entry_dim(n), x.m1.dim()) };
        let rhs = self.m0.mul(&x.d);
        // f^0 followed by d_{Y[n]}: Y^n -> Y^(n+1), nonzero only for n = -1.
        let tail_ok = n != -1 || y.d.mul(&self.m0).is_zero();
        lhs == rhs && tail_ok
    }
}

/// `Hom_K(X, Y[n])` with a basis of classes of chain maps.
#[derive(Clone, Debug)]
pub struct HomK<F: Field> {
    pub source: TwoTermComplex<F>,
    pub target: TwoTermComplex<F>,
    pub shift: i32,
    /// Columns: a basis of all chain maps, flattened.
    cycles: ColumnSolver<F>,
    /// Quotient of cycle coordinates by null-homotopic maps.
    quotient: Quotient<F>,
    pub basis: Vec<ChainMap<F>>,
}

impl<F: Field> HomK<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Class coordinates of a chain map; errors if it is not a chain map.
    pub fn coords(&self, c: &ChainMap<F>) -> Result<Vec<F::Elem>> {
        let flat = c.flatten();
        if flat.len() != self.cycles.basis().rows() {
            return Err(Error::Dimension("chain map has the wrong shape".into()));
        }
        let z = self.cycles.coords(&flat)
            .ok_or_else(|| Error::InvariantViolation("map is not a chain map".into()))?;
        if self.quotient.ambient() == 0 {
            return Ok(Vec::new());
        }
        Ok(self.quotient.projection.mul_vec(&z))
    }

    pub fn is_null_homotopic(&self, c: &ChainMap<F>) -> Result<bool> {
        Ok(vector::is_zero(self.source.field(), &self.coords(c)?))
    }

    /// Representative of the class with the given coordinates.
    pub fn element(&self, coords: &[F::Elem]) -> ChainMap<F> {
        let f = self.source.field();
        let mut out = ChainMap::new(
            self.shift,
            Matrix::zeros(f, self.target.entry_dim(self.shift - 1), self.source.m1.dim()),
            Matrix::zeros(f, self.target.entry_dim(self.shift), self.source.m0.dim()),
        );
        for (c, b) in coords.iter().zip(&self.basis) {
            if !f.is_zero(c) {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    /// All chain maps (not classes), as a basis of the cycle space.
    pub fn cycle_maps(&self) -> Vec<ChainMap<F>> {
        let f = self.source.field();
        self.cycles.basis().columns().iter().map(|c| unflatten(f, c, self.shift, &self.source, &self.target)).collect()
    }

    /// Matrix (columns = class coordinates) of a linear map given on basis classes.
    pub fn matrix_of(&self, images: &[ChainMap<F>]) -> Result<Matrix<F>> {
        let cols: Result<Vec<_>> = images.iter().map(|c| self.coords(c)).collect();
        Ok(Matrix::from_columns(self.source.field(), self.dim(), &cols?))
    }
}

fn unflatten<F: Field>(f: &F, v: &[F::Elem], shift: i32, x: &TwoTermComplex<F>, y: &TwoTermComplex<F>) -> ChainMap<F> {
    let (r1, c1) = (y.entry_dim(shift - 1), x.m1.dim());
    let (r0, c0) = (y.entry_dim(shift), x.m0.dim());
    ChainMap::new(
        shift,
        Matrix::from_vec(f, r1, c1, v[..r1 * c1].to_vec()),
        Matrix::from_vec(f, r0, c0, v[r1 * c1..r1 * c1 + r0 * c0].to_vec()),
    )
}

/// `Hom_K(X, Y[n])`: chain maps modulo null-homotopic ones, each computed as
/// the kernel (resp. image) of an explicit linear system over module Hom spaces.
pub fn hom_k<F: Field>(x: &TwoTermComplex<F>, y: &TwoTermComplex<F>, n: i32) -> Result<HomK<F>> {
    if !x.m0.same_algebra(&y.m0) {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field().clone();
    let flat_len = y.entry_dim(n - 1) * x.m1.dim() + y.entry_dim(n) * x.m0.dim();
    let zero1 = Matrix::zeros(&f, y.entry_dim(n - 1), x.m1.dim());
    let zero0 = Matrix::zeros(&f, y.entry_dim(n), x.m0.dim());
    let mut cycles: Vec<Vec<F::Elem>> = Vec::new();
    let mut boundaries: Vec<Vec<F::Elem>> = Vec::new();
    match n {
        0 => {
            let u = hom_matrices(&x.m1, &y.m1);
            let v = hom_matrices(&x.m0, &y.m0);
            // d_Y u - v d_X = 0 on coefficient vectors (a, b)
            let rows = y.m0.dim() * x.m1.dim();
            let mut cols: Vec<Vec<F::Elem>> = u.iter().map(|m| y.d.mul(m).to_vec()).collect();
            cols.extend(v.iter().map(|m| m.mul(&x.d).neg().to_vec()));
            let sys = Matrix::from_columns(&f, rows, &cols);
            for k in sys.kernel_basis() {
                let m1 = Matrix::combination(&f, zero1.shape(), &k[..u.len()], &u);
                let m0 = Matrix::combination(&f, zero0.shape(), &k[u.len()..], &v);
                cycles.push(ChainMap::new(0, m1, m0).flatten());
            }
            for h in hom_matrices(&x.m0, &y.m1) {
                boundaries.push(ChainMap::new(0, h.mul(&x.d), y.d.mul(&h)).flatten());
            }
        }
        1 => {
            for u in hom_matrices(&x.m1, &y.m0) {
                cycles.push(ChainMap::new(1, u, zero0.clone()).flatten());
            }
            for h in hom_matrices(&x.m0, &y.m0) {
                boundaries.push(ChainMap::new(1, h.mul(&x.d), zero0.clone()).flatten());
            }
            for h in hom_matrices(&x.m1, &y.m1) {
                boundaries.push(ChainMap::new(1, y.d.mul(&h), zero0.clone()).flatten());
            }
        }
        -1 => {
            let u = hom_matrices(&x.m0, &y.m1);
            let rows = y.m0.dim() * x.m0.dim() + y.m1.dim() * x.m1.dim();
            let cols: Vec<Vec<F::Elem>> = u
                .iter()
                .map(|m| {
                    let mut c = y.d.mul(m).to_vec();
                    c.extend(m.mul(&x.d).to_vec());
                    c
                })
                .collect();
            let sys = Matrix::from_columns(&f, rows, &cols);
            for k in sys.kernel_basis() {
                let m0 = Matrix::combination(&f, zero0.shape(), &k, &u);
                cycles.push(ChainMap::new(-1, zero1.clone(), m0).flatten());
            }
        }
        _ => {}
    }
    let cycles_m = ColumnSolver::new(Matrix::from_columns(&f, flat_len, &cycles))
        .ok_or_else(|| Error::InvariantViolation("chain map basis is dependent".into()))?;
    let mut bz = Vec::new();
    for b in &boundaries {
        let z = cycles_m
            .coords(b)
            .ok_or_else(|| Error::InvariantViolation("null-homotopic map is not a cycle".into()))?;
        bz.push(z);
    }
    let bz = span_basis(&f, cycles.len(), &bz);
    let quotient = quotient_basis(&f, &bz, cycles.len());
    let basis = (0..quotient.dim())
        .map(|k| {
            let z = quotient.lift.column(k);
            unflatten(&f, &cycles_m.basis().mul_vec(&z), n, x, y)
        })
        .collect();
    let h = HomK { source: x.clone(), target: y.clone(), shift: n, cycles: cycles_m, quotient, basis };
    for b in &h.basis {
        invariant(b.is_chain_map(x, y), || "basis representative is not a chain map".into())?;
    }
    Ok(h)
}

/// A subquotient of a space of module maps: `ambient / span(sub)`.
#[derive(Clone, Debug)]
pub struct LinearSpace<F: Field> {
    pub ambient: Vec<Matrix<F>>,
    pub quotient: Quotient<F>,
}

impl<F: Field> LinearSpace<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// `Hom_D(P, M[n])` for a complex of projectives and a module, computed
/// from modules only: `Hom(H^0 P, M)` for n = 0 and the cokernel of
/// `Hom(sigma, M)` for n = 1. Cross-checked against the chain-level Hom space.
pub fn hom_d_module<F: Field>(p: &TwoTermComplex<F>, m: &FdModule<F>, n: i32) -> Result<LinearSpace<F>> {
    let f = p.field();
    let space = match n {
        0 => {
            let (t, _) = p.h0();
            let ambient = hom_matrices(&t, m);
            let q = quotient_basis(f, &[], ambient.len());
            LinearSpace { ambient, quotient: q }
        }
        1 => defect_space(p, m),
        _ => return Err(Error::Precondition("n must be 0 or 1".into())),
    };
    let chain = hom_k(p, &TwoTermComplex::stalk(m, 0), n)?;
    invariant(chain.dim() == space.dim(), || {
        format!("Hom_D(P, M[{n}]) has dim {} via modules but {} via chain maps", space.dim(), chain.dim())
    })?;
    Ok(space)
}

/// `Coker(Hom(sigma, M))`: maps `P^-1 -> M` modulo those factoring through sigma.
pub(crate) fn defect_space<F: Field>(p: &TwoTermComplex<F>, m: &FdModule<F>) -> LinearSpace<F> {
    let f = p.field();
    let ambient = hom_matrices(&p.m1, m);
    let basis = Matrix::from_columns(f, m.dim() * p.m1.dim(), &ambient.iter().map(|h| h.to_vec()).collect::<Vec<_>>());
    let sub: Vec<Vec<F::Elem>> = hom_matrices(&p.m0, m)
        .iter()
        .map(|g| coordinates(&basis, &g.mul(&p.d).to_vec()).expect("g sigma is a module map"))
        .collect();
    let sub = span_basis(f, ambient.len(), &sub);
    let quotient = quotient_basis(f, &sub, ambient.len());
    LinearSpace { ambient, quotient }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, FiniteDimAlgebra, Quiver};
    use crate::linalg::PrimeField;
    use std::sync::Arc;

    fn setup() -> (Arc<FiniteDimAlgebra<PrimeField>>, TwoTermComplex<PrimeField>) {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let f = PrimeField::new(2).unwrap();
        let a = Arc::new(path_algebra(&q, &[], &f).unwrap());
        let z = vec![0, 0, 0];
        let p = TwoTermComplex::from_projectives(&a, &[1, 1], &[0], &[vec![a.basis_element(2), z]]).unwrap();
        (a, p)
    }

    #[test]
    fn endomorphisms_of_the_regular_stalk() {
        let (a, _) = setup();
        let r = TwoTermComplex::regular_stalk(&a);
        assert_eq!(hom_k(&r, &r, 0).unwrap().dim(), 3);
        assert_eq!(hom_k(&r, &r, 1).unwrap().dim(), 0);
        assert_eq!(hom_k(&r, &r, -1).unwrap().dim(), 0);
    }

    #[test]
    fn reference_complex_hom_dimensions() {
        let (a, p) = setup();
        assert_eq!(hom_k(&p, &p, 0).unwrap().dim(), 3);
        assert_eq!(hom_k(&p, &p, 1).unwrap().dim(), 0);
        let r1 = TwoTermComplex::regular_shifted(&a);
        assert_eq!(hom_k(&p, &r1, 0).unwrap().dim(), 3);
    }

    #[test]
    fn contractible_complex_is_zero_in_k() {
        let (a, _) = setup();
        let c = TwoTermComplex::from_projectives(&a, &[0], &[0], &[vec![a.basis_element(0)]]).unwrap();
        assert_eq!(hom_k(&c, &c, 0).unwrap().dim(), 0);
    }

    #[test]
    fn module_and_chain_routes_agree() {
        let (a, p) = setup();
        let f = *a.field();
        let s2 = FdModule::from_representation(a.clone(), &[0, 1], &[Matrix::zeros(&f, 1, 0)]).unwrap();
        let s1 = FdModule::from_representation(a.clone(), &[1, 0], &[Matrix::zeros(&f, 0, 1)]).unwrap();
        assert_eq!(hom_d_module(&p, &s2, 1).unwrap().dim(), 2);
        assert_eq!(hom_d_module(&p, &s1, 0).unwrap().dim(), 1);
        let r = TwoTermComplex::regular_stalk(&a);
        assert_eq!(hom_d_module(&r, &s2, 1).unwrap().dim(), 0);
    }

    #[test]
    fn composition_is_independent_of_representatives() {
        let (_, p) = setup();
        let e = hom_k(&p, &p, 0).unwrap();
        for x in &e.basis {
            for y in &e.basis {
                let direct = e.coords(&x.then(y, &p, &p)).unwrap();
                // perturb x by a null-homotopic map built from every homotopy
                for h in hom_matrices(&p.m0, &p.m1) {
                    let null = ChainMap::new(0, h.mul(&p.d), p.d.mul(&h));
                    let shifted = x.add(&null);
                    assert_eq!(e.coords(&shifted.then(y, &p, &p)).unwrap(), direct);
                }
            }
        }
    }
}
