//! Two-term complexes `X^-1 -> X^0` of arbitrary modules, the heart of the
//! t-structure of `P`, and `Hom_K(P, -)` restricted to it.

use crate::algebra::{hom_space, is_isomorphic, FdModule, IsoConfig};
use crate::algebra::module::hom_matrices;
use crate::complex::TwoTermComplex;
use crate::dg::TruncatedDg;
use crate::endo::{Functors, HomModule};
use crate::error::{invariant, Error, Result};
use crate::linalg::{Field, Matrix};
use crate::torsion::TorsionPair;

/// The complex `Hom(P^0, X^-1) -> Hom(P^-1, X^-1) × Hom(P^0, X^0) -> Hom(P^-1, X^0)`
/// with `h -> (hσ, αh)` and `(u, v) -> αu - vσ`, by dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomComplexCohomology {
    pub h_minus1: usize,
    pub h0: usize,
    pub h1: usize,
}

pub fn hom_complex_cohomology<F: Field>(p: &TwoTermComplex<F>, x: &TwoTermComplex<F>) -> HomComplexCohomology {
    let f = p.field();
    let alpha = &x.d;
    let left = hom_matrices(&p.m0, &x.m1);
    let mid_u = hom_matrices(&p.m1, &x.m1);
    let mid_v = hom_matrices(&p.m0, &x.m0);
    let right = hom_matrices(&p.m1, &x.m0);
    let flat = |ms: &[Matrix<F>]| ms.iter().map(|m| m.to_vec()).collect::<Vec<_>>();
    let (ru, rv, rr) = (x.m1.dim() * p.m1.dim(), x.m0.dim() * p.m0.dim(), x.m0.dim() * p.m1.dim());
    let mid_basis = Matrix::block_diag(
        f,
        &[&Matrix::from_columns(f, ru, &flat(&mid_u)), &Matrix::from_columns(f, rv, &flat(&mid_v))],
    );
    let right_basis = Matrix::from_columns(f, rr, &flat(&right));
    let coords = |basis: &Matrix<F>, v: Vec<F::Elem>| {
        crate::algebra::module::coordinates(basis, &v).expect("image of a module map is a module map")
    };
    let d0_cols: Vec<_> = left
        .iter()
        .map(|h| {
            let mut v = h.mul(&p.d).to_vec();
            v.extend(alpha.mul(h).to_vec());
            coords(&mid_basis, v)
        })
        .collect();
    let d0 = Matrix::from_columns(f, mid_u.len() + mid_v.len(), &d0_cols);
    let mut d1_cols: Vec<_> = mid_u.iter().map(|u| coords(&right_basis, alpha.mul(u).to_vec())).collect();
    d1_cols.extend(mid_v.iter().map(|v| coords(&right_basis, v.mul(&p.d).neg().to_vec())));
    let d1 = Matrix::from_columns(f, right.len(), &d1_cols);
    let (r0, r1) = (d0.rank(), d1.rank());
    HomComplexCohomology {
        h_minus1: left.len() - r0,
        h0: mid_u.len() + mid_v.len() - r1 - r0,
        h1: right.len() - r1,
    }
}

/// `Ker α ∈ F` and `Coker α ∈ T`, compared with the Hom complex having
/// cohomology only in degree 0.
pub fn in_heart<F: Field>(tp: &TorsionPair<F>, x: &TwoTermComplex<F>) -> Result<bool> {
    let (ker, _) = x.h_minus1();
    let (coker, _) = x.h0();
    let by_cohomology = tp.in_f(&ker)? && tp.in_t(&coker)?;
    let c = hom_complex_cohomology(&tp.p, x);
    let by_hom = c.h_minus1 == 0 && c.h1 == 0;
    if by_cohomology != by_hom {
        return Err(Error::InvariantViolation(format!(
            "ker/coker criterion says {by_cohomology} but the Hom complex has cohomology {c:?}"
        )));
    }
    Ok(by_hom)
}

/// `Hom_K(P, X)` as a right `E`-module, cross-checked against the middle
/// cohomology of the explicit Hom complex.
pub fn hom_heart<F: Field>(fun: &Functors<F>, x: &TwoTermComplex<F>) -> Result<HomModule<F>> {
    let h = fun.hom(x)?;
    let c = hom_complex_cohomology(fun.p(), x);
    invariant(c.h0 == h.module.dim(), || {
        format!("Hom complex has H^0 of dim {} but Hom_K(P, X) has dim {}", c.h0, h.module.dim())
    })?;
    Ok(h)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Roundtrip {
    pub hom_dim: usize,
    pub kernel_dims: Vec<usize>,
    pub cokernel_dims: Vec<usize>,
    pub h_minus1_recovered: bool,
    pub h0_recovered: bool,
}

impl Roundtrip {
    pub fn holds(&self) -> bool {
        self.h_minus1_recovered && self.h0_recovered
    }
}

/// `Y = Hom_K(P, X)`, then `Y ⊗^L_B P`; its cohomology should be `Ker α`
/// in degree -1 and `Coker α` in degree 0.
pub fn roundtrip_heart<F: Field>(
    tp: &TorsionPair<F>,
    fun: &Functors<F>,
    b: &TruncatedDg<F>,
    x: &TwoTermComplex<F>,
    iso: &IsoConfig,
) -> Result<Roundtrip> {
    if !in_heart(tp, x)? {
        return Err(Error::Precondition("complex is not in the heart".into()));
    }
    let y = hom_heart(fun, x)?;
    let c = b.tensor(fun, &y.module)?;
    let (ker, _) = x.h_minus1();
    let (coker, _) = x.h0();
    Ok(Roundtrip {
        hom_dim: y.module.dim(),
        kernel_dims: ker.dim_vector(),
        cokernel_dims: coker.dim_vector(),
        h_minus1_recovered: is_isomorphic(&c.h_minus1, &ker, iso)?.is_some(),
        h0_recovered: is_isomorphic(&c.h0, &coker, iso)?.is_some(),
    })
}

/// Complexes `M -> N` for ordered pairs from the inventory, with `α` zero,
/// each basis element of `Hom(M, N)`, and their sum. Stops after `limit`.
pub fn generate_complexes<F: Field>(inventory: &[FdModule<F>], limit: usize) -> Result<Vec<TwoTermComplex<F>>> {
    let mut out = Vec::new();
    for m in inventory {
        for n in inventory {
            let f = m.field();
            let basis = hom_space(m, n)?;
            let mut alphas = vec![Matrix::zeros(f, n.dim(), m.dim())];
            alphas.extend(basis.iter().cloned());
            if basis.len() > 1 {
                alphas.push(basis.iter().skip(1).fold(basis[0].clone(), |acc, b| acc.add(b)));
            }
            for a in alphas {
                if out.len() == limit {
                    return Ok(out);
                }
                out.push(TwoTermComplex::new(m.clone(), n.clone(), a)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{enumerate_modules, path_algebra, EnumConfig, FiniteDimAlgebra, Quiver};
    use crate::linalg::PrimeField;
    use std::sync::Arc;

    type Fp = PrimeField;

    fn setup() -> (Arc<FiniteDimAlgebra<Fp>>, TwoTermComplex<Fp>) {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = Arc::new(path_algebra(&q, &[], &PrimeField::new(2).unwrap()).unwrap());
        let p = TwoTermComplex::from_projectives(&a, &[1, 1], &[0], &[vec![a.basis_element(2), vec![0; 3]]]).unwrap();
        (a, p)
    }

    fn simple(a: &Arc<FiniteDimAlgebra<Fp>>, v: usize) -> FdModule<Fp> {
        let dims = if v == 0 { [1, 0] } else { [0, 1] };
        FdModule::from_representation(a.clone(), &dims, &[Matrix::zeros(a.field(), dims[1], dims[0])]).unwrap()
    }

    #[test]
    fn stalks_in_and_out_of_the_heart() {
        let (a, p) = setup();
        let tp = TorsionPair::new(&p).unwrap();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        assert!(in_heart(&tp, &TwoTermComplex::stalk(&s1, 0)).unwrap());
        assert!(in_heart(&tp, &TwoTermComplex::stalk(&s2, -1)).unwrap());
        assert!(!in_heart(&tp, &TwoTermComplex::stalk(&s2, 0)).unwrap());
        let fun = Functors::new(&p).unwrap();
        assert_eq!(hom_heart(&fun, &TwoTermComplex::stalk(&s2, -1)).unwrap().module.dim(), 2);
    }

    #[test]
    fn criteria_agree_and_heart_objects_round_trip() {
        let (a, p) = setup();
        let tp = TorsionPair::new(&p).unwrap();
        let fun = Functors::new(&p).unwrap();
        let b = TruncatedDg::build(&fun).unwrap();
        let inv = enumerate_modules(&a, &EnumConfig::with_max_dim(2)).unwrap();
        let cx = generate_complexes(&inv, 200).unwrap();
        assert!(cx.len() >= 50);
        let mut in_h = 0;
        for x in &cx {
            if in_heart(&tp, x).unwrap() {
                in_h += 1;
                let r = roundtrip_heart(&tp, &fun, &b, x, &IsoConfig::default()).unwrap();
                assert!(r.holds(), "{r:?}");
            }
        }
        assert!(in_h > 5 && in_h < cx.len());
        // S(2)[1] ⊕ S(1): α = 0
        let x = TwoTermComplex::new(simple(&a, 1), simple(&a, 0), Matrix::zeros(a.field(), 1, 1)).unwrap();
        assert!(roundtrip_heart(&tp, &fun, &b, &x, &IsoConfig::default()).unwrap().holds());
    }
}
