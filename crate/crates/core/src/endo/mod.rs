//! The endomorphism algebra `E = End_K(P)`, the `E`-`R` bimodule
//! `T = H^0(P)`, and the adjoint pair `Hom_K(P, -)`, `- ⊗_E T`.

mod defect;
mod tensor;

use std::sync::Arc;

pub use defect::{BetaStar, Kt, SixTerm, Tor1, Zeta};
pub use tensor::Tensor;
pub(crate) use defect::{solve_mat, solve_vec};

use crate::algebra::{hom_space, primitive_idempotents, FdModule, FiniteDimAlgebra, ModuleMap};
use crate::complex::{hom_k, silting_certificate, ChainMap, HomK, SiltingCertificate, TwoTermComplex};
use crate::error::{invariant, Error, Result};
use crate::linalg::{span_rank, vector, Field, Matrix};

/// Largest corner ring searched when refining idempotents of `E`.
const IDEMPOTENT_CAP: u64 = 1 << 16;

/// `End_K(P)` with multiplication `f g = f ∘ g`, so that `Hom_K(P, X)` is a
/// right module by precomposition and `T` a left module.
#[derive(Clone, Debug)]
pub struct EndoAlgebra<F: Field> {
    pub p: TwoTermComplex<F>,
    pub space: HomK<F>,
    pub algebra: Arc<FiniteDimAlgebra<F>>,
    /// Left `E`-modules are right modules over this algebra.
    pub opposite: Arc<FiniteDimAlgebra<F>>,
}

pub fn endo_algebra<F: Field>(p: &TwoTermComplex<F>) -> Result<EndoAlgebra<F>> {
    let f = p.field().clone();
    let space = hom_k(p, p, 0)?;
    let n = space.dim();
    let mut mult = Vec::with_capacity(n);
    for bi in &space.basis {
        let mut row = Vec::with_capacity(n);
        for bj in &space.basis {
            row.push(space.coords(&bj.then(bi, p, p))?);
        }
        mult.push(row);
    }
    let unit = space.coords(&p.identity())?;
    let labels = (0..n).map(|i| format!("f{i}")).collect();
    let idempotents = summand_idempotents(p, &space)?;
    let alg = FiniteDimAlgebra::new(f, labels, mult, unit, idempotents)?;
    let refined = primitive_idempotents(&alg, IDEMPOTENT_CAP);
    let alg = alg.with_idempotents(refined)?;
    let opposite = Arc::new(alg.opposite());
    Ok(EndoAlgebra { p: p.clone(), space, algebra: Arc::new(alg), opposite })
}

/// Identities of the summands of `P` cut out by the connected components of
/// the differential's support, dropping contractible ones.
fn summand_idempotents<F: Field>(p: &TwoTermComplex<F>, space: &HomK<F>) -> Result<Vec<Vec<F::Elem>>> {
    let f = p.field();
    if space.dim() == 0 {
        return Ok(Vec::new());
    }
    let Some((t1, t0)) = &p.tags else {
        return Ok(vec![space.coords(&p.identity())?]);
    };
    let alg = p.algebra();
    let size = |v: usize| span_rank(f, alg.dim(), &alg.left_mult_matrix(&alg.idempotents()[v]).columns());
    let blocks = |tags: &[usize]| -> Vec<(usize, usize)> {
        let mut off = 0;
        tags.iter()
            .map(|&v| {
                let b = (off, size(v));
                off += b.1;
                b
            })
            .collect()
    };
    let (b1, b0) = (blocks(t1), blocks(t0));
    // nodes: degree -1 summands first, then degree 0
    let mut parent: Vec<usize> = (0..b1.len() + b0.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (j, &(c, w)) in b1.iter().enumerate() {
        for (i, &(r, h)) in b0.iter().enumerate() {
            if !p.d.submatrix(r..r + h, c..c + w).is_zero() {
                let (a, b) = (root(&mut parent, j), root(&mut parent, b1.len() + i));
                parent[a] = b;
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..parent.len() {
        let r = root(&mut parent, i);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let mut out = Vec::new();
    for r in roots {
        let mut e1 = Matrix::zeros(f, p.m1.dim(), p.m1.dim());
        let mut e0 = Matrix::zeros(f, p.m0.dim(), p.m0.dim());
        for (j, &(c, w)) in b1.iter().enumerate() {
            if root(&mut parent, j) == r {
                e1.set_block(c, c, &Matrix::identity(f, w));
            }
        }
        for (i, &(c, w)) in b0.iter().enumerate() {
            if root(&mut parent, b1.len() + i) == r {
                e0.set_block(c, c, &Matrix::identity(f, w));
            }
        }
        // Entries not laid out as coordinate blocks (such as the regular
        // module) fall back to the identity and rely on the refinement.
        let blockwise = ModuleMap::new(p.m1.clone(), p.m1.clone(), e1.clone()).is_ok()
            && ModuleMap::new(p.m0.clone(), p.m0.clone(), e0.clone()).is_ok();
        if !blockwise {
            return Ok(vec![space.coords(&p.identity())?]);
        }
        let e = space.coords(&ChainMap::new(0, e1, e0))?;
        if !vector::is_zero(f, &e) {
            out.push(e);
        }
    }
    Ok(out)
}

/// `Hom_K(P, X)` as a right `E`-module.
#[derive(Clone, Debug)]
pub struct HomModule<F: Field> {
    pub module: FdModule<F>,
    pub space: HomK<F>,
}

/// `T = H^0(P)` as an `R`-module together with its left `E`-action.
#[derive(Clone, Debug)]
pub struct BimoduleT<F: Field> {
    pub module: FdModule<F>,
    /// Right module over `E^op` on the same space.
    pub left: FdModule<F>,
    /// `P^0 -> T`
    pub projection: Matrix<F>,
    /// A right inverse of `projection`.
    pub section: Matrix<F>,
}

/// The algebra map `E -> End_R(T)`, `f -> H^0(f)`.
#[derive(Clone, Debug)]
pub struct Epsilon<F: Field> {
    /// One `T -> T` matrix per basis element of `E`.
    pub images: Vec<Matrix<F>>,
    pub rank: usize,
    pub end_t_dim: usize,
}

impl<F: Field> Epsilon<F> {
    pub fn kernel_dim(&self) -> usize {
        self.images.len() - self.rank
    }
}

/// Everything derived from one complex `P`: `E`, `T`, and, when `P` is
/// silting, the certificate triangle and the lifted `R`-action on `K_T`.
#[derive(Clone, Debug)]
pub struct Functors<F: Field> {
    pub endo: EndoAlgebra<F>,
    pub t: BimoduleT<F>,
    pub cert: Option<SiltingCertificate<F>>,
    pub beta: Option<BetaStar<F>>,
}

impl<F: Field> Functors<F> {
    /// Builds the functor data; the certificate part is filled in when `P`
    /// is presilting and silting.
    pub fn new(p: &TwoTermComplex<F>) -> Result<Self> {
        let cert = if p.is_projective() && crate::complex::is_presilting(p)? { silting_certificate(p)? } else { None };
        Self::with_certificate(p, cert)
    }

    pub fn with_certificate(p: &TwoTermComplex<F>, cert: Option<SiltingCertificate<F>>) -> Result<Self> {
        let endo = endo_algebra(p)?;
        let t = bimodule_t(&endo)?;
        let mut out = Functors { endo, t, cert, beta: None };
        if out.cert.is_some() {
            out.beta = Some(defect::beta_star(&out)?);
        }
        Ok(out)
    }

    pub fn p(&self) -> &TwoTermComplex<F> {
        &self.endo.p
    }

    pub fn field(&self) -> &F {
        self.endo.p.field()
    }

    /// `Hom_K(P, X)` with `E` acting by precomposition.
    pub fn hom(&self, x: &TwoTermComplex<F>) -> Result<HomModule<F>> {
        let p = self.p();
        let space = hom_k(p, x, 0)?;
        let action = self
            .endo
            .space
            .basis
            .iter()
            .map(|e| space.matrix_of(&space.basis.iter().map(|h| e.then(h, p, x)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let module = FdModule::new(self.endo.algebra.clone(), space.dim(), action)?;
        Ok(HomModule { module, space })
    }

    /// `H_P(M, n) = Hom_D(P, M[n])` for `n` in {0, 1}.
    pub fn h_p(&self, m: &FdModule<F>, n: i32) -> Result<HomModule<F>> {
        if !(0..=1).contains(&n) {
            return Err(Error::Precondition("n must be 0 or 1".into()));
        }
        self.hom(&TwoTermComplex::stalk(m, -n))
    }

    /// `Hom_K(Q, P)` as a left `E`-module (right module over `E^op`).
    pub fn hom_into_p(&self, q: &TwoTermComplex<F>) -> Result<HomModule<F>> {
        let p = self.p();
        let space = hom_k(q, p, 0)?;
        let action = self
            .endo
            .space
            .basis
            .iter()
            .map(|e| space.matrix_of(&space.basis.iter().map(|h| h.then(e, q, p)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let module = FdModule::new(self.endo.opposite.clone(), space.dim(), action)?;
        Ok(HomModule { module, space })
    }

    pub fn epsilon(&self) -> Result<Epsilon<F>> {
        let f = self.field();
        let images = self.t.left.action().to_vec();
        let dt = self.t.module.dim();
        let rank = span_rank(f, dt * dt, &images.iter().map(|m| m.to_vec()).collect::<Vec<_>>());
        let end_t_dim = hom_space(&self.t.module, &self.t.module)?.len();
        let alg = &self.endo.algebra;
        for i in 0..alg.dim() {
            invariant(
                ModuleMap::new(self.t.module.clone(), self.t.module.clone(), images[i].clone()).is_ok(),
                || "H^0 of an endomorphism is not R-linear".into(),
            )?;
            for j in 0..alg.dim() {
                let prod = self.t.left.act(&alg.mul(&alg.basis_element(i), &alg.basis_element(j)));
                invariant(prod == images[i].mul(&images[j]), || "H^0 is not multiplicative".into())?;
            }
        }
        invariant(rank == end_t_dim, || format!("H^0 has rank {rank} onto End(T) of dim {end_t_dim}"))?;
        Ok(Epsilon { images, rank, end_t_dim })
    }

    /// `X ⊗_E T` with its right `R`-action, for a right `E`-module `X`.
    pub fn t_p(&self, x: &FdModule<F>) -> Result<(FdModule<F>, Tensor<F>)> {
        let t = Tensor::new(x, &self.t.left)?;
        let id = Matrix::identity(self.field(), x.dim());
        let action = self.t.module.action().iter().map(|a| t.map(&t, &id, a)).collect();
        let m = FdModule::new(self.p().algebra().clone(), t.dim(), action)?;
        Ok((m, t))
    }

    /// Evaluation `T_P(H_P(M)) -> M`, `h ⊗ t -> h(t)`; always a monomorphism.
    pub fn phi(&self, m: &FdModule<F>) -> Result<ModuleMap<F>> {
        let f = self.field();
        let h = self.h_p(m, 0)?;
        let (source, t) = self.t_p(&h.module)?;
        let blocks: Vec<Matrix<F>> = h.space.basis.iter().map(|c| c.m0.mul(&self.t.section)).collect();
        let eval = Matrix::hstack(f, m.dim(), &blocks.iter().collect::<Vec<_>>());
        invariant(eval.mul(t.lift()).mul(t.projection()) == eval, || "evaluation does not respect ⊗_E".into())?;
        let phi = ModuleMap::new(source, m.clone(), eval.mul(t.lift()))?;
        invariant(phi.matrix.rank() == phi.source.dim(), || "evaluation map is not monic".into())?;
        Ok(phi)
    }

    /// Unit `X -> H_P(T_P(X))`, `x -> (p -> x ⊗ [p])`, checked against the
    /// triangular identity `phi_{T_P X} ∘ T_P(psi_X) = 1`.
    pub fn psi(&self, x: &FdModule<F>) -> Result<ModuleMap<F>> {
        let f = self.field();
        let (tx, t) = self.t_p(x)?;
        let target = self.h_p(&tx, 0)?;
        let mut cols = Vec::with_capacity(x.dim());
        for i in 0..x.dim() {
            let ei = Matrix::from_columns(f, x.dim(), &[vector::unit(f, x.dim(), i)]);
            let m0 = t.projection().mul(&ei.kron(&self.t.projection));
            let c = ChainMap::new(0, Matrix::zeros(f, 0, self.p().m1.dim()), m0);
            cols.push(target.space.coords(&c)?);
        }
        let psi = ModuleMap::new(x.clone(), target.module.clone(), Matrix::from_columns(f, target.module.dim(), &cols))?;
        let phi = self.phi(&tx)?;
        let (_, th) = self.t_p(&target.module)?;
        let tpsi = th.map(&t, &psi.matrix, &Matrix::identity(f, self.t.module.dim()));
        invariant(phi.matrix.mul(&tpsi).is_identity(), || "triangular identity fails".into())?;
        Ok(psi)
    }
}

fn bimodule_t<F: Field>(endo: &EndoAlgebra<F>) -> Result<BimoduleT<F>> {
    let p = &endo.p;
    let f = p.field();
    let (module, projection) = p.h0();
    let section = projection
        .solve_matrix(&Matrix::identity(f, module.dim()))
        .ok_or_else(|| Error::InvariantViolation("projection onto H^0 is not onto".into()))?;
    let action: Vec<Matrix<F>> = endo.space.basis.iter().map(|e| projection.mul(&e.m0).mul(&section)).collect();
    let left = FdModule::new(endo.opposite.clone(), module.dim(), action)?;
    for (l, e) in left.action().iter().zip(&endo.space.basis) {
        invariant(l.mul(&projection) == projection.mul(&e.m0), || "H^0 action is ill-defined".into())?;
        for r in module.action() {
            invariant(l.mul(r) == r.mul(l), || "left and right actions on T do not commute".into())?;
        }
    }
    Ok(BimoduleT { module, left, projection, section })
}

#[cfg(test)]
mod tests;
