//! The dg endomorphism algebra of `P`, truncated to degrees -1 and 0, and
//! the two-term model of `Y ⊗^L_B P` for an `E`-module `Y`.

use crate::algebra::{is_isomorphic, FdModule, IsoConfig};
use crate::complex::{ChainMap, TwoTermComplex};
use crate::endo::Functors;
use crate::error::{invariant, Result};
use crate::linalg::{quotient_basis, span_basis, Field, Matrix, Quotient};

/// `B^-1 = Hom(P^0, P^-1)`, `B^0` = chain maps `P -> P`, and
/// `d(h) = (h σ, σ h)`. `H^0(B) = E`.
#[derive(Clone, Debug)]
pub struct TruncatedDg<F: Field> {
    pub bm1: Vec<Matrix<F>>,
    pub b0: Vec<ChainMap<F>>,
    /// `dim B^0 x dim B^-1`
    pub d: Matrix<F>,
    /// `dim E x dim B^0`
    pub proj: Matrix<F>,
}

impl<F: Field> TruncatedDg<F> {
    pub fn build(fun: &Functors<F>) -> Result<Self> {
        let p = fun.p();
        let f = p.field();
        let space = &fun.endo.space;
        let b0 = space.cycle_maps();
        let bm1 = crate::algebra::module::hom_matrices(&p.m0, &p.m1);
        let flat_b0 = Matrix::from_columns(f, p.m1.dim().pow(2) + p.m0.dim().pow(2), &b0.iter().map(|c| c.flatten()).collect::<Vec<_>>());
        let mut d_cols = Vec::with_capacity(bm1.len());
        for h in &bm1 {
            let dh = ChainMap::new(0, h.mul(&p.d), p.d.mul(h));
            invariant(dh.is_chain_map(p, p), || "d(h) does not commute with σ".into())?;
            d_cols.push(crate::endo::solve_vec(&flat_b0, &dh.flatten()).expect("d(h) is a chain map"));
        }
        let d = Matrix::from_columns(f, b0.len(), &d_cols);
        let proj = space.matrix_of(&b0)?;
        invariant(b0.len() - d.rank() == space.dim() && proj.rank() == space.dim(), || {
            format!("H^0(B) has dim {} but E has dim {}", b0.len() - d.rank(), space.dim())
        })?;
        invariant(proj.mul(&d).is_zero(), || "boundaries do not vanish in E".into())?;
        let alg = &fun.endo.algebra;
        for (i, x) in b0.iter().enumerate() {
            for (j, y) in b0.iter().enumerate() {
                // b0[i] b0[j] = b0[i] ∘ b0[j]
                let prod = space.coords(&y.then(x, p, p))?;
                invariant(prod == alg.mul(&proj.column(i), &proj.column(j)), || "projection to E is not multiplicative".into())?;
            }
        }
        // Leibniz rule for B^0 x B^-1 -> B^-1 and B^-1 x B^0 -> B^-1.
        for h in &bm1 {
            let dh = ChainMap::new(0, h.mul(&p.d), p.d.mul(h));
            for b in &b0 {
                let left = b.m1.mul(h);
                let dl = ChainMap::new(0, left.mul(&p.d), p.d.mul(&left));
                invariant(dl == dh.then(b, p, p), || "Leibniz rule fails for b h".into())?;
                let right = h.mul(&b.m0);
                let dr = ChainMap::new(0, right.mul(&p.d), p.d.mul(&right));
                invariant(dr == b.then(&dh, p, p), || "Leibniz rule fails for h b".into())?;
            }
        }
        if fun.cert.is_some() {
            invariant(crate::complex::hom_k(p, p, 1)?.dim() == 0, || "B has cohomology in degree 1".into())?;
        }
        Ok(TruncatedDg { bm1, b0, d, proj })
    }

    pub fn dim_bm1(&self) -> usize {
        self.bm1.len()
    }

    pub fn dim_b0(&self) -> usize {
        self.b0.len()
    }

    /// The explicit complex `Y ⊗_{B^0} P^-1 / U -> Y ⊗_{B^0} P^0`, `U`
    /// spanned by `y ⊗ h(p)` for `h ∈ B^-1`. It has the right `H^0`, but
    /// computes the derived tensor product only when the terms of `P` are
    /// flat enough over `B^0`; `tensor` is the derived version.
    pub fn naive_tensor(&self, fun: &Functors<F>, y: &FdModule<F>) -> Result<TwoTermComplex<F>> {
        let p = fun.p();
        let f = p.field();
        let dy = y.dim();
        let iy = Matrix::identity(f, dy);
        let act_y = self.actions_on(y);
        let relations = |entry: &dyn Fn(&ChainMap<F>) -> Matrix<F>, n: usize| -> Vec<Vec<F::Elem>> {
            let inp = Matrix::identity(f, n);
            let mut rel = Vec::new();
            for (b, a) in self.b0.iter().zip(&act_y) {
                rel.extend(a.kron(&inp).sub(&iy.kron(&entry(b))).columns());
            }
            rel
        };
        let mut rel1 = relations(&|b| b.m1.clone(), p.m1.dim());
        for h in &self.bm1 {
            rel1.extend(iy.kron(h).columns());
        }
        let rel0 = relations(&|b| b.m0.clone(), p.m0.dim());
        let q1 = quotient_basis(f, &span_basis(f, dy * p.m1.dim(), &rel1), dy * p.m1.dim());
        let q0 = quotient_basis(f, &span_basis(f, dy * p.m0.dim(), &rel0), dy * p.m0.dim());
        let sigma = iy.kron(&p.d);
        let d = q0.projection.mul(&sigma).mul(&q1.lift);
        invariant(d.mul(&q1.projection) == q0.projection.mul(&sigma), || "1 ⊗ σ does not descend".into())?;
        let induced = |q: &Quotient<F>, m: &FdModule<F>| -> Result<FdModule<F>> {
            let action = m.action().iter().map(|a| q.projection.mul(&iy.kron(a)).mul(&q.lift)).collect();
            FdModule::new(p.algebra().clone(), q.dim(), action)
        };
        TwoTermComplex::new(induced(&q1, &p.m1)?, induced(&q0, &p.m0)?, d)
    }

    /// `y -> y b` for each basis element `b` of `B^0`, through `B^0 -> E`.
    fn actions_on(&self, y: &FdModule<F>) -> Vec<Matrix<F>> {
        (0..self.b0.len()).map(|k| y.act(&self.proj.column(k))).collect()
    }

    /// `Y ⊗^L_B P` from the two-sided bar construction, in degrees -2..0:
    ///
    /// `C^0 = Y⊗P^0`, `C^-1 = Y⊗P^-1 ⊕ Y⊗[B^0]⊗P^0`,
    /// `C^-2 = Y⊗[B^0]⊗P^-1 ⊕ Y⊗[B^-1]⊗P^0 ⊕ Y⊗[B^0|B^0]⊗P^0`,
    ///
    /// with `d(y⊗p) = y⊗σp`, `d(y[b]p) = yb⊗p - y⊗bp - y[b]σp`,
    /// `d(y[h]p) = -y[dh]p - y⊗hp` and `d(y[a|b]p) = ya[b]p - y[ab]p + y[a]bp`.
    #[allow(clippy::needless_range_loop)]
    pub fn tensor(&self, fun: &Functors<F>, y: &FdModule<F>) -> Result<DgTensor<F>> {
        let p = fun.p();
        let f = p.field().clone();
        let f = &f;
        let (dy, n0, nm1) = (y.dim(), self.b0.len(), self.bm1.len());
        let (d1, d0) = (p.m1.dim(), p.m0.dim());
        let act_y = self.actions_on(y);
        let iy = Matrix::identity(f, dy);
        let b0_flat = Matrix::from_columns(f, d1 * d1 + d0 * d0, &self.b0.iter().map(|c| c.flatten()).collect::<Vec<_>>());
        let b0_coords = |c: &ChainMap<F>| crate::endo::solve_vec(&b0_flat, &c.flatten()).expect("product of chain maps");
        // B^0 structure constants: a b = a ∘ b
        let mut prod: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(n0);
        for a in &self.b0 {
            prod.push(self.b0.iter().map(|b| b0_coords(&b.then(a, p, p))).collect());
        }
        // offsets inside C^-1 and C^-2
        let (c0, c1a, c1b) = (dy * d0, dy * d1, dy * n0 * d0);
        let (c2a, c2b, c2c) = (dy * n0 * d1, dy * nm1 * d0, dy * n0 * n0 * d0);
        let i1b = |yy: usize, b: usize, q: usize| c1a + (yy * n0 + b) * d0 + q;
        let mut dm1 = Matrix::zeros(f, c0, c1a + c1b);
        dm1.set_block(0, 0, &iy.kron(&p.d));
        for b in 0..n0 {
            let blk = act_y[b].kron(&Matrix::identity(f, d0)).sub(&iy.kron(&self.b0[b].m0));
            for yy in 0..dy {
                for q in 0..d0 {
                    for r in 0..c0 {
                        let v = blk.get(r, yy * d0 + q).clone();
                        dm1.set(r, i1b(yy, b, q), v);
                    }
                }
            }
        }
        let mut dm2 = Matrix::zeros(f, c1a + c1b, c2a + c2b + c2c);
        let add = |m: &mut Matrix<F>, r: usize, c: usize, v: &F::Elem| {
            if !f.is_zero(v) {
                let cur = f.add(m.get(r, c), v);
                m.set(r, c, cur);
            }
        };
        // y[b]p, p in P^-1
        for yy in 0..dy {
            for b in 0..n0 {
                for q in 0..d1 {
                    let col = (yy * n0 + b) * d1 + q;
                    for y2 in 0..dy {
                        add(&mut dm2, y2 * d1 + q, col, act_y[b].get(y2, yy));
                    }
                    for q2 in 0..d1 {
                        add(&mut dm2, yy * d1 + q2, col, &f.neg(self.b0[b].m1.get(q2, q)));
                    }
                    for q0 in 0..d0 {
                        add(&mut dm2, i1b(yy, b, q0), col, &f.neg(p.d.get(q0, q)));
                    }
                }
            }
        }
        // y[h]p, p in P^0
        for yy in 0..dy {
            for (hi, h) in self.bm1.iter().enumerate() {
                for q in 0..d0 {
                    let col = c2a + (yy * nm1 + hi) * d0 + q;
                    for b in 0..n0 {
                        add(&mut dm2, i1b(yy, b, q), col, &f.neg(self.d.get(b, hi)));
                    }
                    for q1 in 0..d1 {
                        add(&mut dm2, yy * d1 + q1, col, &f.neg(h.get(q1, q)));
                    }
                }
            }
        }
        // y[a|b]p, p in P^0
        for yy in 0..dy {
            for a in 0..n0 {
                for b in 0..n0 {
                    for q in 0..d0 {
                        let col = c2a + c2b + ((yy * n0 + a) * n0 + b) * d0 + q;
                        for y2 in 0..dy {
                            add(&mut dm2, i1b(y2, b, q), col, act_y[a].get(y2, yy));
                        }
                        for (c, v) in prod[a][b].iter().enumerate() {
                            add(&mut dm2, i1b(yy, c, q), col, &f.neg(v));
                        }
                        for q2 in 0..d0 {
                            add(&mut dm2, i1b(yy, a, q2), col, self.b0[b].m0.get(q2, q));
                        }
                    }
                }
            }
        }
        invariant(dm1.mul(&dm2).is_zero(), || "bar differential does not square to zero".into())?;
        // R acts on the P factor of every summand.
        let alg = p.algebra();
        let c_m1 = FdModule::new(
            alg.clone(),
            c1a + c1b,
            (0..alg.dim())
                .map(|r| {
                    let on_p = iy.kron(&p.m1.action()[r]);
                    let on_bp = iy.kron(&Matrix::identity(f, n0)).kron(&p.m0.action()[r]);
                    Matrix::block_diag(f, &[&on_p, &on_bp])
                })
                .collect(),
        )?;
        let c_0 = FdModule::new(alg.clone(), c0, p.m0.action().iter().map(|a| iy.kron(a)).collect())?;
        let (cycles, inc) = c_m1.submodule(&dm1.kernel_basis())?;
        let bounds = crate::endo::solve_mat(&inc, &dm2)
            .ok_or_else(|| crate::error::Error::InvariantViolation("boundaries are not cycles".into()))?;
        let (h_minus1, _) = cycles.quotient(&span_basis(f, cycles.dim(), &bounds.columns()))?;
        let (h0, _) = c_0.quotient(&span_basis(f, c0, &dm1.columns()))?;
        Ok(DgTensor { h_minus1, h0 })
    }
}

/// Cohomology of `Y ⊗^L_B P` as right `R`-modules.
#[derive(Clone, Debug)]
pub struct DgTensor<F: Field> {
    pub h_minus1: FdModule<F>,
    pub h0: FdModule<F>,
}

impl<F: Field> DgTensor<F> {
    pub fn is_acyclic(&self) -> bool {
        self.h_minus1.dim() == 0 && self.h0.dim() == 0
    }
}

/// Agreement of the dg model with the module-level functors for one `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgComparison {
    pub h0_matches_tp: bool,
    pub h_minus1_dim: usize,
    pub kt_linear_dim: usize,
    pub acyclic: bool,
    pub in_script_e: bool,
    /// `H^-1` against `K_T` with the lifted action; `None` without a certificate.
    pub lifted_action_matches: Option<bool>,
}

impl DgComparison {
    pub fn holds(&self) -> bool {
        self.h0_matches_tp
            && self.h_minus1_dim == self.kt_linear_dim
            && self.acyclic == self.in_script_e
            && self.lifted_action_matches != Some(false)
    }
}

pub fn compare<F: Field>(fun: &Functors<F>, b: &TruncatedDg<F>, y: &FdModule<F>, iso: &IsoConfig) -> Result<DgComparison> {
    let t = b.tensor(fun, y)?;
    let (tp, _) = fun.t_p(y)?;
    let h0_matches_tp = is_isomorphic(&t.h0, &tp, iso)?.is_some();
    let h = &t.h_minus1;
    let kt = fun.kt_linear(y)?;
    let lifted_action_matches = if h.dim() == kt.dim() {
        let lifted = fun.kt_module(y, &kt)?;
        Some(is_isomorphic(h, &lifted, iso)?.is_some())
    } else {
        Some(false)
    };
    Ok(DgComparison {
        h0_matches_tp,
        h_minus1_dim: h.dim(),
        kt_linear_dim: kt.dim(),
        acyclic: t.is_acyclic(),
        in_script_e: fun.in_script_e(y)?,
        lifted_action_matches,
    })
}
