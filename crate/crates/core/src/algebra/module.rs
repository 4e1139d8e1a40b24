//! Finite-dimensional right modules and their morphisms.

use std::sync::Arc;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{invariant, Error, Result};
use crate::linalg::sparse::{sparse_kernel, SparseRow};
use crate::linalg::{quotient_basis, span_basis, vector, Field, Matrix};

#[derive(Clone, Debug)]
pub struct FdModule<F: Field> {
    algebra: Arc<FiniteDimAlgebra<F>>,
    dim: usize,
    /// `action[b]` is the matrix of `x -> x * b_b`.
    action: Vec<Matrix<F>>,
}

#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    pub source: FdModule<F>,
    pub target: FdModule<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> FdModule<F> {
    /// Checks `act(b_i b_j) = act(b_j) act(b_i)` on all basis pairs and `act(1) = id`.
    pub fn new(algebra: Arc<FiniteDimAlgebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = FdModule { algebra, dim, action };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<FiniteDimAlgebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Self {
        debug_assert!(FdModule { algebra: algebra.clone(), dim, action: action.clone() }.validate().is_ok());
        FdModule { algebra, dim, action }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        if self.action.len() != a.dim() || self.action.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            return Err(Error::Dimension(format!(
                "module of dim {} needs {} action matrices of size {}x{}",
                self.dim,
                a.dim(),
                self.dim,
                self.dim
            )));
        }
        invariant(self.act(a.unit()).is_identity(), || "the unit does not act as the identity".into())?;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.act(&a.structure_constants()[i][j]);
                let rhs = self.action[j].mul(&self.action[i]);
                if lhs != rhs {
                    let _ = f;
                    return Err(Error::InvariantViolation(format!(
                        "action is not compatible with the product {} * {}",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a module from the action of arbitrary algebra elements that
    /// generate the algebra together with the unit. Fails if the data is not
    /// a module.
    pub fn from_element_actions(
        algebra: Arc<FiniteDimAlgebra<F>>,
        dim: usize,
        gens: &[(Vec<F::Elem>, Matrix<F>)],
    ) -> Result<Self> {
        let f = algebra.field().clone();
        let n = algebra.dim();
        let mut vecs: Vec<Vec<F::Elem>> = Vec::new();
        let mut mats: Vec<Matrix<F>> = Vec::new();
        let mut echelon: Vec<Vec<F::Elem>> = Vec::new();
        let mut queue = vec![(algebra.unit().to_vec(), Matrix::identity(&f, dim))];
        let mut head = 0;
        while head < queue.len() && vecs.len() < n {
            let (v, m) = queue[head].clone();
            head += 1;
            if crate::linalg::in_span(&f, n, &echelon, &v) {
                continue;
            }
            vecs.push(v.clone());
            mats.push(m.clone());
            echelon = span_basis(&f, n, &vecs);
            for (g, gm) in gens {
                queue.push((algebra.mul(&v, g), gm.mul(&m)));
            }
        }
        if vecs.len() < n {
            return Err(Error::Precondition("elements do not generate the algebra".into()));
        }
        let words = Matrix::from_columns(&f, n, &vecs);
        let inv = words.inverse().expect("independent words");
        let action: Vec<Matrix<F>> = (0..n)
            .map(|b| {
                let c = inv.column(b);
                Matrix::combination(&f, (dim, dim), &c, &mats)
            })
            .collect();
        let m = FdModule::new(algebra, dim, action)?;
        for (g, gm) in gens {
            invariant(m.act(g) == *gm, || "generator action is not determined by the products".into())?;
        }
        Ok(m)
    }

    pub fn zero(algebra: Arc<FiniteDimAlgebra<F>>) -> Self {
        let f = algebra.field().clone();
        let action = vec![Matrix::zeros(&f, 0, 0); algebra.dim()];
        FdModule { algebra, dim: 0, action }
    }

    /// The regular right module `A_A`.
    pub fn regular(algebra: Arc<FiniteDimAlgebra<F>>) -> Self {
        let action = (0..algebra.dim()).map(|b| algebra.right_mult_matrix(&algebra.basis_element(b))).collect();
        let dim = algebra.dim();
        FdModule { algebra, dim, action }
    }

    /// `eA` for an idempotent `e`, with its inclusion into `A_A`.
    pub fn projective_from_idempotent(algebra: Arc<FiniteDimAlgebra<F>>, e: &[F::Elem]) -> (Self, Matrix<F>) {
        let reg = FdModule::regular(algebra.clone());
        let images: Vec<_> = (0..algebra.dim()).map(|k| algebra.mul(e, &algebra.basis_element(k))).collect();
        let basis = span_basis(algebra.field(), algebra.dim(), &images);
        let (m, inc) = reg.submodule(&basis).expect("eA is a right ideal");
        (m, inc)
    }

    /// The indecomposable projective `e_v A` of the `v`-th idempotent.
    pub fn projective(algebra: Arc<FiniteDimAlgebra<F>>, v: usize) -> Result<Self> {
        let e = algebra
            .idempotents()
            .get(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?
            .clone();
        Ok(Self::projective_from_idempotent(algebra, &e).0)
    }

    /// Module from a quiver representation: `dims[v]` and, for every arrow
    /// `a: u -> v`, a `dims[v] x dims[u]` matrix.
    pub fn from_representation(
        algebra: Arc<FiniteDimAlgebra<F>>,
        dims: &[usize],
        arrow_maps: &[Matrix<F>],
    ) -> Result<Self> {
        let paths = algebra.paths().ok_or_else(|| Error::Precondition("not a path algebra".into()))?;
        let q = &paths.quiver;
        let f = algebra.field().clone();
        if dims.len() != q.vertices.len() || arrow_maps.len() != q.arrows.len() {
            return Err(Error::Dimension("representation does not match the quiver".into()));
        }
        let offsets: Vec<usize> = dims.iter().scan(0, |acc, d| {
            let o = *acc;
            *acc += d;
            Some(o)
        }).collect();
        let dim: usize = dims.iter().sum();
        let mut arrow_act = Vec::new();
        for (ai, a) in q.arrows.iter().enumerate() {
            let m = &arrow_maps[ai];
            if m.shape() != (dims[a.to], dims[a.from]) {
                return Err(Error::Dimension(format!(
                    "arrow `{}` needs a {}x{} matrix",
                    a.name, dims[a.to], dims[a.from]
                )));
            }
            let mut big = Matrix::zeros(&f, dim, dim);
            big.set_block(offsets[a.to], offsets[a.from], m);
            arrow_act.push(big);
        }
        let path_act = |p: &super::Path| -> Matrix<F> {
            let mut m = Matrix::zeros(&f, dim, dim);
            for i in 0..dims[p.start] {
                m.set(offsets[p.start] + i, offsets[p.start] + i, f.one());
            }
            for &a in &p.arrows {
                m = arrow_act[a].mul(&m);
            }
            m
        };
        // Relations hold iff every path combination in the ideal acts by zero;
        // the action on the basis is well defined iff each path acts as its residue.
        for p in &paths.all {
            let coords = paths.path_coords(&f, p);
            let via_basis = Matrix::combination(&f, (dim, dim), &coords, &paths.basis.iter().map(&path_act).collect::<Vec<_>>());
            if via_basis != path_act(p) {
                return Err(Error::InvariantViolation(format!(
                    "representation does not satisfy the relations (path {})",
                    p.label(q)
                )));
            }
        }
        let long = super::quiver::paths_of_length(q, paths.bound);
        for p in long {
            if !path_act(&p).is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "representation does not satisfy the relations (path {} must act by zero)",
                    p.label(q)
                )));
            }
        }
        let action = paths.basis.iter().map(path_act).collect();
        FdModule::new(algebra, dim, action)
    }

    pub fn algebra(&self) -> &Arc<FiniteDimAlgebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self) -> &[Matrix<F>] {
        &self.action
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Matrix of `x -> x a` for an arbitrary algebra element `a`.
    pub fn act(&self, a: &[F::Elem]) -> Matrix<F> {
        Matrix::combination(self.field(), (self.dim, self.dim), a, &self.action)
    }

    /// Dimensions of `M e_i` for the algebra's idempotents.
    pub fn dim_vector(&self) -> Vec<usize> {
        self.algebra.idempotents().iter().map(|e| self.act(e).rank()).collect()
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub fn identity(&self) -> ModuleMap<F> {
        ModuleMap { source: self.clone(), target: self.clone(), matrix: Matrix::identity(self.field(), self.dim) }
    }

    /// Whether the subspace spanned by `basis` is invariant.
    pub fn is_invariant(&self, basis: &[Vec<F::Elem>]) -> bool {
        let f = self.field();
        self.algebra.generators().iter().all(|&g| {
            basis.iter().all(|v| crate::linalg::in_span(f, self.dim, basis, &self.action[g].mul_vec(v)))
        })
    }

    /// Submodule on an invariant subspace with the given (independent) basis.
    pub fn submodule(&self, basis: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let f = self.field().clone();
        let inc = Matrix::from_columns(&f, self.dim, basis);
        let k = basis.len();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let x = inc
                .solve_matrix(&a.mul(&inc))
                .ok_or_else(|| Error::InvariantViolation("subspace is not a submodule".into()))?;
            action.push(x);
        }
        Ok((FdModule::new_unchecked(self.algebra.clone(), k, action), inc))
    }

    /// Quotient by an invariant subspace, with the projection.
    pub fn quotient(&self, sub: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        if !self.is_invariant(sub) {
            return Err(Error::InvariantViolation("subspace is not a submodule".into()));
        }
        let q = quotient_basis(self.field(), sub, self.dim);
        let action = self.action.iter().map(|a| q.projection.mul(a).mul(&q.lift)).collect();
        Ok((FdModule::new_unchecked(self.algebra.clone(), q.dim(), action), q.projection))
    }

    /// Direct sum with inclusions and projections.
    pub fn direct_sum(algebra: Arc<FiniteDimAlgebra<F>>, parts: &[&Self]) -> (Self, Vec<Matrix<F>>, Vec<Matrix<F>>) {
        let f = algebra.field().clone();
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let action = (0..algebra.dim())
            .map(|b| Matrix::block_diag(&f, &parts.iter().map(|m| &m.action[b]).collect::<Vec<_>>()))
            .collect();
        let mut incs = Vec::new();
        let mut projs = Vec::new();
        let mut off = 0;
        for m in parts {
            let mut inc = Matrix::zeros(&f, dim, m.dim);
            inc.set_block(off, 0, &Matrix::identity(&f, m.dim));
            projs.push(inc.transpose());
            incs.push(inc);
            off += m.dim;
        }
        (FdModule::new_unchecked(algebra, dim, action), incs, projs)
    }

    /// `M^n`.
    pub fn power(&self, n: usize) -> Self {
        let parts = vec![self; n];
        Self::direct_sum(self.algebra.clone(), &parts).0
    }

    /// Transport of structure along an invertible change of basis `p`
    /// (new coordinates = `p` * old coordinates).
    pub fn conjugate(&self, p: &Matrix<F>) -> Self {
        let inv = p.inverse().expect("invertible change of basis");
        let action = self.action.iter().map(|a| p.mul(a).mul(&inv)).collect();
        FdModule::new_unchecked(self.algebra.clone(), self.dim, action)
    }
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: FdModule<F>, target: FdModule<F>, matrix: Matrix<F>) -> Result<Self> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let map = ModuleMap { source, target, matrix };
        invariant(map.is_homomorphism(), || "matrix does not intertwine the actions".into())?;
        Ok(map)
    }

    pub fn is_homomorphism(&self) -> bool {
        self.source
            .action()
            .iter()
            .zip(self.target.action())
            .all(|(a, b)| self.matrix.mul(a) == b.mul(&self.matrix))
    }

    pub fn compose(&self, after: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix: after.matrix.mul(&self.matrix),
        }
    }
}

/// Basis of `Hom_A(M, N)` as matrices, from the kernel of the intertwining
/// equations for the algebra generators.
pub fn hom_space<F: Field>(m: &FdModule<F>, n: &FdModule<F>) -> Result<Vec<Matrix<F>>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(hom_matrices(m, n))
}

pub(crate) fn hom_matrices<F: Field>(m: &FdModule<F>, n: &FdModule<F>) -> Vec<Matrix<F>> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let gens = m.algebra().generators();
    // (F a)[i][k] - (b F)[i][k] = 0, unknown F[i][j] at index i * dm + j
    let rows = gens.iter().flat_map(|&g| {
        let (a, b) = (&m.action()[g], &n.action()[g]);
        (0..dn).flat_map(move |i| {
            (0..dm).filter_map(move |k| {
                let mut row: SparseRow<F> = Vec::new();
                for j in 0..dm {
                    let c = a.get(j, k);
                    if !f.is_zero(c) {
                        row.push((i * dm + j, c.clone()));
                    }
                }
                for l in 0..dn {
                    let c = b.get(i, l);
                    if !f.is_zero(c) {
                        row.push((l * dm + k, f.neg(c)));
                    }
                }
                (!row.is_empty()).then_some(row)
            })
        })
    });
    sparse_kernel(f, dn * dm, rows).into_iter().map(|v| Matrix::from_vec(f, dn, dm, v)).collect()
}

/// Kernel, image and cokernel of a module map.
#[derive(Clone, Debug)]
pub struct MapCalculus<F: Field> {
    pub kernel: FdModule<F>,
    pub kernel_inclusion: Matrix<F>,
    pub image: FdModule<F>,
    pub image_inclusion: Matrix<F>,
    pub cokernel: FdModule<F>,
    pub cokernel_projection: Matrix<F>,
}

pub fn map_calculus<F: Field>(map: &ModuleMap<F>) -> MapCalculus<F> {
    let f = map.source.field();
    let kb = map.matrix.kernel_basis();
    let (kernel, kernel_inclusion) = map.source.submodule(&kb).expect("kernel is a submodule");
    let ib = span_basis(f, map.target.dim(), &map.matrix.columns());
    let (image, image_inclusion) = map.target.submodule(&ib).expect("image is a submodule");
    let (cokernel, cokernel_projection) = map.target.quotient(&ib).expect("image is a submodule");
    MapCalculus { kernel, kernel_inclusion, image, image_inclusion, cokernel, cokernel_projection }
}

/// Sum of the images of all maps `T -> M`, with its inclusion.
pub fn trace_of<F: Field>(t: &FdModule<F>, m: &FdModule<F>) -> Result<(FdModule<F>, Matrix<F>)> {
    let maps = hom_space(t, m)?;
    let mut cols = Vec::new();
    for h in &maps {
        cols.extend(h.columns());
    }
    let basis = span_basis(m.field(), m.dim(), &cols);
    m.submodule(&basis)
}

/// Coordinates of `v` in the span of the columns of `basis` (which must be independent).
pub(crate) fn coordinates<F: Field>(basis: &Matrix<F>, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    if basis.cols() == 0 {
        return vector::is_zero(basis.field(), v).then(Vec::new);
    }
    basis.solve(v).expect("length matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::linalg::PrimeField;

    fn a2() -> Arc<FiniteDimAlgebra<PrimeField>> {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Arc::new(path_algebra(&q, &[], &PrimeField::new(2).unwrap()).unwrap())
    }

    fn simple(a: &Arc<FiniteDimAlgebra<PrimeField>>, v: usize) -> FdModule<PrimeField> {
        let f = *a.field();
        let mut dims = vec![0, 0];
        dims[v] = 1;
        let m = Matrix::zeros(&f, dims[1], dims[0]);
        FdModule::from_representation(a.clone(), &dims, &[m]).unwrap()
    }

    #[test]
    fn projectives_of_a2() {
        let a = a2();
        let p1 = FdModule::projective(a.clone(), 0).unwrap();
        let p2 = FdModule::projective(a.clone(), 1).unwrap();
        assert_eq!(p1.dim(), 2);
        assert_eq!(p1.dim_vector(), vec![1, 1]);
        assert_eq!(p2.dim_vector(), vec![0, 1]);
    }

    #[test]
    fn hom_examples() {
        let a = a2();
        let p1 = FdModule::projective(a.clone(), 0).unwrap();
        let p2 = FdModule::projective(a.clone(), 1).unwrap();
        let s1 = simple(&a, 0);
        assert_eq!(hom_space(&s1, &s1).unwrap().len(), 1);
        assert_eq!(hom_space(&p2, &p1).unwrap().len(), 1);
        assert_eq!(hom_space(&s1, &p1).unwrap().len(), 0);
        assert_eq!(trace_of(&s1, &p1).unwrap().0.dim(), 0);
    }

    #[test]
    fn cokernel_of_the_arrow_map() {
        let a = a2();
        let p1 = FdModule::projective(a.clone(), 0).unwrap();
        let p2 = FdModule::projective(a.clone(), 1).unwrap();
        let h = hom_space(&p2, &p1).unwrap().remove(0);
        let map = ModuleMap::new(p2, p1, h).unwrap();
        let c = map_calculus(&map);
        assert_eq!(c.kernel.dim(), 0);
        assert_eq!(c.cokernel.dim_vector(), vec![1, 0]);
    }

    #[test]
    fn representation_must_satisfy_relations() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let f = PrimeField::new(2).unwrap();
        let xx = crate::algebra::Path { start: 0, arrows: vec![0, 0] };
        let a = Arc::new(path_algebra(&q, &[vec![(1, xx)]], &f).unwrap());
        let jordan = Matrix::from_i64(&f, &[&[0, 0], &[1, 0]]);
        assert!(FdModule::from_representation(a.clone(), &[2], &[jordan]).is_ok());
        let id = Matrix::identity(&f, 2);
        assert!(FdModule::from_representation(a, &[2], &[id]).is_err());
    }
}
