//! The presentation `β*` of `T` over `E`, the tensor defect `K_T`, `Tor_1`,
//! the six-term sequence and the comparison map `ζ`.

use crate::algebra::{enumerate_submodules, free_cover, map_calculus, EnumConfig, FdModule, ModuleMap};
use crate::complex::{hom_k, ChainMap, TwoTermComplex};
use crate::endo::{Functors, HomModule, Tensor};
use crate::error::{invariant, Error, Result};
use crate::linalg::{quotient_basis, span_basis, vector, Field, Matrix, Quotient};

/// `β* : Hom_K(Q2, P) -> Hom_K(Q1, P)`, precomposition with `β`.
#[derive(Clone, Debug)]
pub struct BetaStar<F: Field> {
    pub source: HomModule<F>,
    pub target: HomModule<F>,
    pub matrix: Matrix<F>,
    /// `Hom_K(Q1, P) -> T`, `f -> [f(α(1))]`; its kernel is the image of `β*`.
    pub to_t: Matrix<F>,
    /// For each basis element `r` of `R`, the map `g -> g ∘ f_r` on
    /// `Hom_K(Q2, P)`, where `f_r` lifts left multiplication by `r` through
    /// the triangle.
    pub lifted: Vec<Matrix<F>>,
}

impl<F: Field> BetaStar<F> {
    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.matrix.cols()
    }
}

/// Solves `m c = v`, treating empty matrices uniformly.
pub(crate) fn solve_vec<F: Field>(m: &Matrix<F>, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let f = m.field();
    if m.cols() == 0 {
        return vector::is_zero(f, v).then(Vec::new);
    }
    if m.rows() == 0 {
        return Some(vector::zero(f, m.cols()));
    }
    m.solve(v).ok().flatten()
}

pub(crate) fn solve_mat<F: Field>(m: &Matrix<F>, b: &Matrix<F>) -> Option<Matrix<F>> {
    let cols: Option<Vec<_>> = b.columns().iter().map(|c| solve_vec(m, c)).collect();
    Some(Matrix::from_columns(m.field(), m.cols(), &cols?))
}

pub(crate) fn beta_star<F: Field>(fun: &Functors<F>) -> Result<BetaStar<F>> {
    let cert = fun.cert.as_ref().ok_or_else(|| Error::Precondition("no silting certificate".into()))?;
    let p = fun.p();
    let f = fun.field();
    let alg = p.algebra();
    let source = fun.hom_into_p(&cert.q2)?;
    let target = fun.hom_into_p(&cert.q1)?;
    let images: Vec<_> = source.space.basis.iter().map(|g| cert.beta.then(g, &cert.q1, p)).collect();
    let matrix = target.space.matrix_of(&images)?;
    ModuleMap::new(source.module.clone(), target.module.clone(), matrix.clone())?;
    let cols: Vec<Vec<F::Elem>> = target
        .space
        .basis
        .iter()
        .map(|h| fun.t.projection.mul_vec(&cert.alpha.then(h, &cert.r, p).m0.mul_vec(alg.unit())))
        .collect();
    let to_t = Matrix::from_columns(f, fun.t.module.dim(), &cols);
    let dt = fun.t.module.dim();
    invariant(to_t.mul(&matrix).is_zero(), || "α* β* is not zero".into())?;
    invariant(to_t.rank() == dt, || "Hom_K(Q1, P) does not map onto T".into())?;
    invariant(matrix.rank() + dt == target.space.dim(), || "Hom_K(Q2,P) -> Hom_K(Q1,P) -> T -> 0 is not exact".into())?;
    for (a, l) in target.module.action().iter().zip(fun.t.left.action()) {
        invariant(to_t.mul(a) == l.mul(&to_t), || "Hom_K(Q1, P) -> T is not E-linear".into())?;
    }
    // Both terms are summands of free E-modules: Hom(Q, P) -> Hom(P^m, P) -> Hom(Q, P)
    // given by precomposition with e and s composes to the identity.
    for (q, w) in [(&cert.q1, &cert.w1), (&cert.q2, &cert.w2)] {
        let space = hom_k(q, p, 0)?;
        for (i, h) in space.basis.iter().enumerate() {
            let back = w.s.then(&w.e.then(h, &w.power, p), q, p);
            invariant(space.coords(&back)? == vector::unit(f, space.dim(), i), || "add witness does not split Hom(-, P)".into())?;
        }
    }
    let lifted = lift_left_multiplications(fun, &source)?;
    Ok(BetaStar { source, target, matrix, to_t, lifted })
}

/// Lifts `t_r: R -> R`, `x -> r x`, to a morphism of triangles: first
/// `f1: Q1 -> Q1` with `f1 α = α t_r`, then `f2: Q2 -> Q2` with `f2 β = β f1`
/// and `γ f2 = t_r[1] γ`. The second condition is what makes the induced map
/// on `K_T` independent of the choices.
fn lift_left_multiplications<F: Field>(fun: &Functors<F>, source: &HomModule<F>) -> Result<Vec<Matrix<F>>> {
    let cert = fun.cert.as_ref().expect("checked by caller");
    let (r, q1, q2) = (&cert.r, &cert.q1, &cert.q2);
    let f = fun.field();
    let alg = r.algebra();
    let e11 = hom_k(q1, q1, 0)?;
    let e22 = hom_k(q2, q2, 0)?;
    let h_r1 = hom_k(r, q1, 0)?;
    let h_12 = hom_k(q1, q2, 0)?;
    let along_alpha = h_r1.matrix_of(&e11.basis.iter().map(|c| cert.alpha.then(c, r, q1)).collect::<Vec<_>>())?;
    let h_2r = hom_k(q2, &cert.r1, 0)?;
    let along_beta = h_12.matrix_of(&e22.basis.iter().map(|c| cert.beta.then(c, q1, q2)).collect::<Vec<_>>())?;
    let along_gamma = h_2r.matrix_of(&e22.basis.iter().map(|c| c.then(&cert.gamma, q2, &cert.r1)).collect::<Vec<_>>())?;
    let system = Matrix::vstack(f, e22.dim(), &[&along_beta, &along_gamma]);
    let mut out = Vec::with_capacity(alg.dim());
    for b in 0..alg.dim() {
        let t_r = ChainMap::new(0, Matrix::zeros(f, 0, 0), alg.left_mult_matrix(&alg.basis_element(b)));
        let c1 = solve_vec(&along_alpha, &h_r1.coords(&t_r.then(&cert.alpha, r, q1))?)
            .ok_or_else(|| Error::InvariantViolation("left multiplication does not lift to Q1".into()))?;
        let f1 = e11.element(&c1);
        let t_r1 = ChainMap::new(0, t_r.m0.clone(), Matrix::zeros(f, 0, 0));
        let mut rhs = h_12.coords(&f1.then(&cert.beta, q1, q2))?;
        rhs.extend(h_2r.coords(&cert.gamma.then(&t_r1, q2, &cert.r1))?);
        let c2 = solve_vec(&system, &rhs)
            .ok_or_else(|| Error::InvariantViolation("lift to Q1 does not extend to Q2".into()))?;
        let f2 = e22.element(&c2);
        let images: Vec<_> = source.space.basis.iter().map(|g| f2.then(g, q2, fun.p())).collect();
        out.push(source.space.matrix_of(&images)?);
    }
    Ok(out)
}

/// `K_T(X) = Ker(X ⊗ β*)` inside `X ⊗_E Hom_K(Q2, P)`.
#[derive(Clone, Debug)]
pub struct Kt<F: Field> {
    pub source: Tensor<F>,
    pub target: Tensor<F>,
    /// `X ⊗ β*`
    pub map: Matrix<F>,
    /// Columns: a basis of the kernel, in coordinates of `source`.
    pub kernel: Matrix<F>,
}

impl<F: Field> Kt<F> {
    pub fn dim(&self) -> usize {
        self.kernel.cols()
    }

    pub fn cokernel(&self) -> Quotient<F> {
        let f = self.map.field();
        quotient_basis(f, &span_basis(f, self.target.dim(), &self.map.columns()), self.target.dim())
    }
}

/// `Tor_1^E(X, T)` and the natural map from `K_T(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tor1 {
    pub kt_dim: usize,
    pub tor_dim: usize,
    /// Rank of `K_T(X) -> Tor_1(X, T)`.
    pub epi_rank: usize,
    /// `Tor_1` recomputed from a free cover of `T`.
    pub free_route_dim: usize,
    pub beta_injective: bool,
}

/// Snake-lemma sequence
/// `0 -> K_T L -> K_T M -> K_T N -> T_P L -> T_P M -> T_P N -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTerm {
    pub dims: [usize; 6],
    pub ranks: [usize; 5],
    pub exact: bool,
}

/// `ζ: K_T(H_P(F, 1)) -> F`.
#[derive(Clone, Debug)]
pub struct Zeta<F: Field> {
    pub y: HomModule<F>,
    pub kt: Kt<F>,
    pub kt_module: FdModule<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> Zeta<F> {
    pub fn is_isomorphism(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.rank() == self.matrix.cols()
    }
}

impl<F: Field> Functors<F> {
    pub fn beta_star(&self) -> Result<&BetaStar<F>> {
        self.beta.as_ref().ok_or_else(|| Error::Precondition("complex has no silting certificate".into()))
    }

    pub fn kt_linear(&self, x: &FdModule<F>) -> Result<Kt<F>> {
        let b = self.beta_star()?;
        let source = Tensor::new(x, &b.source.module)?;
        let target = Tensor::new(x, &b.target.module)?;
        let map = target.map(&source, &Matrix::identity(self.field(), x.dim()), &b.matrix);
        let kernel = Matrix::from_columns(self.field(), source.dim(), &map.kernel_basis());
        Ok(Kt { source, target, map, kernel })
    }

    /// `K_T(X)` with the `R`-action induced by lifting left multiplications
    /// through the triangle.
    pub fn kt_module(&self, x: &FdModule<F>, kt: &Kt<F>) -> Result<FdModule<F>> {
        let b = self.beta_star()?;
        let id = Matrix::identity(self.field(), x.dim());
        let mut action = Vec::with_capacity(b.lifted.len());
        for m in &b.lifted {
            let a = kt.source.map(&kt.source, &id, m).mul(&kt.kernel);
            action.push(
                solve_mat(&kt.kernel, &a)
                    .ok_or_else(|| Error::InvariantViolation("lifted action does not preserve K_T".into()))?,
            );
        }
        FdModule::new(self.p().algebra().clone(), kt.dim(), action)
    }

    pub fn tor1(&self, x: &FdModule<F>) -> Result<Tor1> {
        let f = self.field();
        let b = self.beta_star()?;
        let kt = self.kt_linear(x)?;
        let id = Matrix::identity(f, x.dim());
        // Route through I = Im β*: 0 -> I -> Hom(Q1, P) -> T -> 0 with a projective middle term.
        let ib = span_basis(f, b.target.module.dim(), &b.matrix.columns());
        let (image, inc) = b.target.module.submodule(&ib)?;
        let onto = solve_mat(&inc, &b.matrix).ok_or_else(|| Error::InvariantViolation("β* misses its image".into()))?;
        let ti = Tensor::new(x, &image)?;
        let inc_map = kt.target.map(&ti, &id, &inc);
        let tor_dim = ti.dim() - inc_map.rank();
        let epi = ti.map(&kt.source, &id, &onto).mul(&kt.kernel);
        invariant(inc_map.mul(&epi).is_zero(), || "K_T(X) does not land in Tor_1".into())?;
        let epi_rank = epi.rank();
        // Route through a free cover F0 -> T with kernel K0.
        let cover = free_cover(&self.t.left);
        let calc = map_calculus(&cover);
        let tk = Tensor::new(x, &calc.kernel)?;
        let tf = Tensor::new(x, &cover.source)?;
        let free_route_dim = tk.dim() - tf.map(&tk, &id, &calc.kernel_inclusion).rank();
        let out = Tor1 { kt_dim: kt.dim(), tor_dim, epi_rank, free_route_dim, beta_injective: b.is_injective() };
        invariant(out.tor_dim == out.free_route_dim, || format!("Tor_1 computed two ways: {out:?}"))?;
        Ok(out)
    }

    /// Six-term sequence for `0 -> L -f-> M -g-> N -> 0`.
    pub fn six_term(&self, fm: &ModuleMap<F>, gm: &ModuleMap<F>) -> Result<SixTerm> {
        let f = self.field();
        let (l, m, n) = (&fm.source, &fm.target, &gm.target);
        let exact = gm.source.dim() == m.dim()
            && gm.matrix.mul(&fm.matrix).is_zero()
            && fm.matrix.rank() == l.dim()
            && gm.matrix.rank() == n.dim()
            && l.dim() + n.dim() == m.dim();
        if !exact {
            return Err(Error::NotExact("input is not a short exact sequence".into()));
        }
        let b = self.beta_star()?;
        let (ids, idt) = (Matrix::identity(f, b.source.module.dim()), Matrix::identity(f, b.target.module.dim()));
        let (kl, km, kn) = (self.kt_linear(l)?, self.kt_linear(m)?, self.kt_linear(n)?);
        let fs = km.source.map(&kl.source, &fm.matrix, &ids);
        let gs = kn.source.map(&km.source, &gm.matrix, &ids);
        let ft = km.target.map(&kl.target, &fm.matrix, &idt);
        let gt = kn.target.map(&km.target, &gm.matrix, &idt);
        let broken = || Error::InvariantViolation("tensored sequence is not exact".into());
        let a = solve_mat(&km.kernel, &fs.mul(&kl.kernel)).ok_or_else(broken)?;
        let bb = solve_mat(&kn.kernel, &gs.mul(&km.kernel)).ok_or_else(broken)?;
        let (cl, cm, cn) = (kl.cokernel(), km.cokernel(), kn.cokernel());
        let mut delta_cols = Vec::with_capacity(kn.dim());
        for z in kn.kernel.columns() {
            let y = solve_vec(&gs, &z).ok_or_else(broken)?;
            let u = solve_vec(&ft, &km.map.mul_vec(&y)).ok_or_else(broken)?;
            delta_cols.push(cl.projection.mul_vec(&u));
        }
        let delta = Matrix::from_columns(f, cl.dim(), &delta_cols);
        let c = cm.projection.mul(&ft).mul(&cl.lift);
        let e = cn.projection.mul(&gt).mul(&cm.lift);
        let dims = [kl.dim(), km.dim(), kn.dim(), cl.dim(), cm.dim(), cn.dim()];
        let ranks = [a.rank(), bb.rank(), delta.rank(), c.rank(), e.rank()];
        let exact = ranks[0] == dims[0]
            && bb.mul(&a).is_zero()
            && ranks[0] + ranks[1] == dims[1]
            && delta.mul(&bb).is_zero()
            && ranks[1] + ranks[2] == dims[2]
            && c.mul(&delta).is_zero()
            && ranks[2] + ranks[3] == dims[3]
            && e.mul(&c).is_zero()
            && ranks[3] + ranks[4] == dims[4]
            && ranks[4] == dims[5];
        Ok(SixTerm { dims, ranks, exact })
    }

    /// `X ⊗_E T = 0`.
    pub fn in_u(&self, x: &FdModule<F>) -> Result<bool> {
        Ok(self.t_p(x)?.1.dim() == 0)
    }

    /// `X ⊗_E T = 0` and `K_T(X) = 0`.
    pub fn in_script_e(&self, x: &FdModule<F>) -> Result<bool> {
        Ok(self.in_u(x)? && self.kt_linear(x)?.dim() == 0)
    }

    /// No nonzero submodule of `X` is killed by `- ⊗_E T`.
    pub fn in_v(&self, x: &FdModule<F>, cfg: &EnumConfig) -> Result<bool> {
        for s in enumerate_submodules(x, cfg)? {
            if s.module.dim() > 0 && self.in_u(&s.module)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `Hom_K(P, X) ⊗_E Hom_K(Q, P) -> Hom_K(Q, X)`, `f ⊗ g -> f g`,
    /// is bijective.
    pub fn tensor_hom_bijective(&self, x: &TwoTermComplex<F>, q: &TwoTermComplex<F>) -> Result<bool> {
        let f = self.field();
        let hx = self.hom(x)?;
        let g = self.hom_into_p(q)?;
        let ten = Tensor::new(&hx.module, &g.module)?;
        let target = hom_k(q, x, 0)?;
        let mut cols = Vec::new();
        for h in &hx.space.basis {
            for gj in &g.space.basis {
                cols.push(target.coords(&gj.then(h, q, x))?);
            }
        }
        let theta = Matrix::from_columns(f, target.dim(), &cols);
        invariant(theta.mul(ten.lift()).mul(ten.projection()) == theta, || "composition pairing is not balanced".into())?;
        let m = theta.mul(ten.lift());
        Ok(m.rows() == m.cols() && m.rank() == m.cols())
    }

    /// `ζ_F`: an element of `K_T(H_P(F,1)) ⊂ H_P(F,1) ⊗ Hom_K(Q2, P)` becomes a
    /// map `Q2 -> F[1]`, which factors as `φ γ` for a unique `φ: R[1] -> F[1]`;
    /// its value is `φ(1)`.
    pub fn zeta(&self, fmod: &FdModule<F>) -> Result<Zeta<F>> {
        let f = self.field();
        let cert = self.cert.as_ref().ok_or_else(|| Error::Precondition("complex has no silting certificate".into()))?;
        let b = self.beta_star()?;
        let p = self.p();
        let y = self.h_p(fmod, 1)?;
        let kt = self.kt_linear(&y.module)?;
        let kt_module = self.kt_module(&y.module, &kt)?;
        let shifted = TwoTermComplex::stalk(fmod, -1);
        let h2 = hom_k(&cert.q2, &shifted, 0)?;
        let mut cols = Vec::new();
        for h in &y.space.basis {
            for g in &b.source.space.basis {
                cols.push(h2.coords(&g.then(h, &cert.q2, &shifted))?);
            }
        }
        let theta = Matrix::from_columns(f, h2.dim(), &cols);
        let hr = hom_k(&cert.r1, &shifted, 0)?;
        let gamma = h2.matrix_of(&hr.basis.iter().map(|phi| cert.gamma.then(phi, &cert.q2, &shifted)).collect::<Vec<_>>())?;
        let unit = p.algebra().unit();
        let mut values = Vec::with_capacity(kt.dim());
        for k in kt.kernel.columns() {
            let v = theta.mul(kt.source.lift()).mul_vec(&k);
            let c = solve_vec(&gamma, &v)
                .ok_or_else(|| Error::InvariantViolation("element of K_T does not factor through γ".into()))?;
            values.push(hr.element(&c).m1.mul_vec(unit));
        }
        let matrix = Matrix::from_columns(f, fmod.dim(), &values);
        Ok(Zeta { y, kt, kt_module, matrix })
    }

    /// `ζ_{F'} ∘ K_T(H_P(g, 1)) = g ∘ ζ_F` for `g: F -> F'`.
    pub fn zeta_is_natural(&self, g: &ModuleMap<F>, zf: &Zeta<F>, zg: &Zeta<F>) -> Result<bool> {
        let f = self.field();
        let p = self.p();
        let b = self.beta_star()?;
        let target = TwoTermComplex::stalk(&g.target, -1);
        let shifted_g = ChainMap::new(0, g.matrix.clone(), Matrix::zeros(f, 0, 0));
        let images: Vec<_> = zf.y.space.basis.iter().map(|h| h.then(&shifted_g, p, &target)).collect();
        let hg = zg.y.space.matrix_of(&images)?;
        let ids = Matrix::identity(f, b.source.module.dim());
        let on_kt = zg.kt.source.map(&zf.kt.source, &hg, &ids).mul(&zf.kt.kernel);
        let k = solve_mat(&zg.kt.kernel, &on_kt)
            .ok_or_else(|| Error::InvariantViolation("K_T(H_P(g,1)) leaves K_T".into()))?;
        Ok(zg.matrix.mul(&k) == g.matrix.mul(&zf.matrix))
    }
}
