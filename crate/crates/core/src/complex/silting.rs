//! Presilting test, `add`-membership and the triangle `R -> Q1 -> Q2 -> R[1]`
//! certifying that a presilting complex is silting.

use crate::complex::hom::{hom_k, ChainMap};
use crate::complex::TwoTermComplex;
use crate::error::{invariant, Error, Result};
use crate::linalg::{vector, Field, Matrix};

/// Split-epi data exhibiting `Q` as a summand of `P^m`: `e: P^m -> Q`,
/// `s: Q -> P^m` with `e s` homotopic to the identity.
#[derive(Clone, Debug)]
pub struct AddWitness<F: Field> {
    pub m: usize,
    pub power: TwoTermComplex<F>,
    pub e: ChainMap<F>,
    pub s: ChainMap<F>,
}

/// Decides `Q ∈ add P` and returns witnesses when it holds. A section of
/// the evaluation map `P^m -> Q` exists exactly when `id_Q` is a combination
/// of composites `g h` with `h: Q -> P` and `g: P -> Q`, which keeps every
/// linear system the size of `Hom_K(Q, P)` rather than `Hom_K(Q, P^m)`.
pub fn add_membership<F: Field>(q: &TwoTermComplex<F>, p: &TwoTermComplex<F>) -> Result<Option<AddWitness<F>>> {
    let f = q.field();
    let to_q = hom_k(p, q, 0)?;
    let m = to_q.dim();
    let power = p.power(m);
    // e = (g_1 .. g_m): P^m -> Q
    let e1: Vec<&Matrix<F>> = to_q.basis.iter().map(|g| &g.m1).collect();
    let e0: Vec<&Matrix<F>> = to_q.basis.iter().map(|g| &g.m0).collect();
    let e = ChainMap::new(0, Matrix::hstack(f, q.m1.dim(), &e1), Matrix::hstack(f, q.m0.dim(), &e0));
    let end_q = hom_k(q, q, 0)?;
    let from_q = hom_k(q, p, 0)?;
    let k = from_q.dim();
    let mut images = Vec::with_capacity(m * k);
    for g in &to_q.basis {
        for h in &from_q.basis {
            images.push(h.then(g, q, q));
        }
    }
    let pairing = end_q.matrix_of(&images)?;
    let id = end_q.coords(&q.identity())?;
    let solution = if end_q.dim() == 0 { Some(vector::zero(f, m * k)) } else { pairing.solve(&id)? };
    let Some(c) = solution else {
        return Ok(None);
    };
    // s = (s_1; ..; s_m): Q -> P^m with s_i = sum_j c_ij h_j
    let component = |i: usize| from_q.element(&c[i * k..(i + 1) * k]);
    let parts: Vec<ChainMap<F>> = (0..m).map(component).collect();
    let s = ChainMap::new(
        0,
        Matrix::vstack(f, q.m1.dim(), &parts.iter().map(|c| &c.m1).collect::<Vec<_>>()),
        Matrix::vstack(f, q.m0.dim(), &parts.iter().map(|c| &c.m0).collect::<Vec<_>>()),
    );
    invariant(s.is_chain_map(q, &power), || "section is not a chain map".into())?;
    invariant(end_q.coords(&s.then(&e, q, q))? == id, || "section does not split the evaluation map".into())?;
    Ok(Some(AddWitness { m, power, e, s }))
}

/// `P^n` as a summand of itself.
fn power_witness<F: Field>(p: &TwoTermComplex<F>, n: usize) -> AddWitness<F> {
    let power = p.power(n);
    let id = power.identity();
    AddWitness { m: n, power, e: id.clone(), s: id }
}

/// `Hom_K(P, P[1]) = 0`. For a bounded complex of finitely generated
/// projectives this single check covers all coproducts of copies of `P`.
pub fn is_presilting<F: Field>(p: &TwoTermComplex<F>) -> Result<bool> {
    Ok(hom_k(p, p, 1)?.dim() == 0)
}

/// The triangle `R -> Q1 -> Q2 -> R[1]` with `Q2 = P^d` built from a basis
/// `g_1..g_d` of `Hom_K(P, R[1])` and `Q1` the cocone of `g: P^d -> R[1]`.
#[derive(Clone, Debug)]
pub struct SiltingCertificate<F: Field> {
    pub p: TwoTermComplex<F>,
    pub d: usize,
    /// `A` in degree 0.
    pub r: TwoTermComplex<F>,
    /// `A` in degree -1.
    pub r1: TwoTermComplex<F>,
    pub q1: TwoTermComplex<F>,
    pub q2: TwoTermComplex<F>,
    pub alpha: ChainMap<F>,
    pub beta: ChainMap<F>,
    pub gamma: ChainMap<F>,
    pub w1: AddWitness<F>,
    pub w2: AddWitness<F>,
}

/// Largest total dimension of `Q1` for which a certificate is attempted;
/// the linear systems on `End_K(Q1)` grow like the square of it.
pub const CERTIFICATE_CAP: usize = 40;

/// Certificate when `P` is silting, `None` when `P` is presilting but `Q1 ∉ add P`.
pub fn silting_certificate<F: Field>(p: &TwoTermComplex<F>) -> Result<Option<SiltingCertificate<F>>> {
    if !p.is_projective() {
        return Err(Error::Precondition("complex entries must be projective".into()));
    }
    if !is_presilting(p)? {
        return Err(Error::Precondition("complex is not presilting".into()));
    }
    let f = p.field().clone();
    let alg = p.algebra().clone();
    let n = alg.dim();
    let r = TwoTermComplex::regular_stalk(&alg);
    let r1 = TwoTermComplex::regular_shifted(&alg);
    let gs = hom_k(p, &r1, 0)?;
    let d = gs.dim();
    let q1_dim = d * p.m1.dim() + d * p.m0.dim() + n;
    if q1_dim > CERTIFICATE_CAP {
        return Err(Error::CapExceeded(format!(
            "the certificate complex Q1 would have dimension {q1_dim}, above {CERTIFICATE_CAP}; \
             remove repeated summands from P"
        )));
    }
    let q2 = p.power(d);
    let g = Matrix::hstack(&f, n, &gs.basis.iter().map(|c| &c.m1).collect::<Vec<_>>());
    // Q1: P^-1^d --(sigma^d ; -g)--> P^0^d ⊕ A
    let q2_m0 = q2.m0.clone();
    let (q1_m0, _, _) = crate::algebra::FdModule::direct_sum(alg.clone(), &[&q2_m0, &r.m0]);
    let delta = Matrix::vstack(&f, q2.m1.dim(), &[&q2.d, &g.neg()]);
    let mut q1 = TwoTermComplex::new(q2.m1.clone(), q1_m0, delta)?;
    if let Some((t1, t0)) = &q2.tags {
        let mut t0 = t0.clone();
        t0.extend(0..alg.idempotents().len());
        q1.tags = Some((t1.clone(), t0));
    }
    let pd0 = q2.m0.dim();
    let mut alpha0 = Matrix::zeros(&f, pd0 + n, n);
    alpha0.set_block(pd0, 0, &Matrix::identity(&f, n));
    let alpha = ChainMap::new(0, Matrix::zeros(&f, q1.m1.dim(), 0), alpha0);
    let mut beta0 = Matrix::zeros(&f, pd0, pd0 + n);
    beta0.set_block(0, 0, &Matrix::identity(&f, pd0));
    let beta = ChainMap::new(0, Matrix::identity(&f, q1.m1.dim()), beta0);
    let gamma = ChainMap::new(0, g, Matrix::zeros(&f, 0, pd0));
    for (name, map, src, tgt) in [("alpha", &alpha, &r, &q1), ("beta", &beta, &q1, &q2), ("gamma", &gamma, &q2, &r1)] {
        invariant(map.is_chain_map(src, tgt), || format!("{name} is not a chain map"))?;
    }
    invariant(hom_k(&r, &q2, 0)?.is_null_homotopic(&alpha.then(&beta, &r, &q2))?, || "beta alpha is not null-homotopic".into())?;
    invariant(hom_k(&q1, &r1, 0)?.is_null_homotopic(&beta.then(&gamma, &q1, &r1))?, || "gamma beta is not null-homotopic".into())?;
    // alpha[1] gamma: Q2 -> Q1[1]
    let alpha_shifted = ChainMap::new(1, alpha.m0.clone(), Matrix::zeros(&f, 0, 0));
    let third = gamma.then(&alpha_shifted, &q2, &q1);
    invariant(hom_k(&q2, &q1, 1)?.is_null_homotopic(&third)?, || "alpha[1] gamma is not null-homotopic".into())?;
    let Some(w1) = add_membership(&q1, p)? else {
        return Ok(None);
    };
    let w2 = power_witness(p, d);
    Ok(Some(SiltingCertificate { p: p.clone(), d, r, r1, q1, q2, alpha, beta, gamma, w1, w2 }))
}
