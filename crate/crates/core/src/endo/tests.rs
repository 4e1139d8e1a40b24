use super::*;
use crate::algebra::{algebra_isomorphism, enumerate_modules, is_isomorphic, path_algebra, EnumConfig, IsoConfig, Quiver};
use crate::linalg::PrimeField;

type Fp = PrimeField;

fn a2() -> Arc<FiniteDimAlgebra<Fp>> {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
    Arc::new(path_algebra(&q, &[], &PrimeField::new(2).unwrap()).unwrap())
}

fn reference(a: &Arc<FiniteDimAlgebra<Fp>>) -> TwoTermComplex<Fp> {
    TwoTermComplex::from_projectives(a, &[1, 1], &[0], &[vec![a.basis_element(2), vec![0; 3]]]).unwrap()
}

fn simple(a: &Arc<FiniteDimAlgebra<Fp>>, v: usize) -> FdModule<Fp> {
    let dims = if v == 0 { [1, 0] } else { [0, 1] };
    FdModule::from_representation(a.clone(), &dims, &[Matrix::zeros(a.field(), dims[1], dims[0])]).unwrap()
}

#[test]
fn endomorphisms_of_the_reference_complex() {
    let a = a2();
    let fun = Functors::new(&reference(&a)).unwrap();
    let e = &fun.endo.algebra;
    assert_eq!(e.dim(), 3);
    assert_eq!(e.idempotents().len(), 2);
    assert!(algebra_isomorphism(e, &a, 1 << 16).unwrap().is_some());
    let eps = fun.epsilon().unwrap();
    assert_eq!((eps.end_t_dim, eps.kernel_dim()), (1, 2));
    assert_eq!(fun.t.module.dim_vector(), vec![1, 0]);
}

#[test]
fn regular_stalk_has_the_algebra_as_endomorphisms() {
    let a = a2();
    let fun = Functors::new(&TwoTermComplex::regular_stalk(&a)).unwrap();
    assert!(algebra_isomorphism(&fun.endo.algebra, &a, 1 << 16).unwrap().is_some());
    let eps = fun.epsilon().unwrap();
    assert_eq!(eps.kernel_dim(), 0);
    let b = fun.beta_star().unwrap();
    assert_eq!(b.source.module.dim(), 0);
    assert_eq!(b.target.module.dim(), 3);
}

#[test]
fn functor_values_on_simples() {
    let a = a2();
    let fun = Functors::new(&reference(&a)).unwrap();
    let (s1, s2) = (simple(&a, 0), simple(&a, 1));
    assert_eq!(fun.h_p(&s1, 0).unwrap().module.dim(), 1);
    let y = fun.h_p(&s2, 1).unwrap().module;
    assert_eq!(y.dim(), 2);
    assert_eq!(fun.t_p(&y).unwrap().0.dim(), 0);
    assert_eq!(fun.kt_linear(&y).unwrap().dim(), 1);
    let p1 = FdModule::projective(a.clone(), 0).unwrap();
    let y1 = fun.h_p(&p1, 1).unwrap().module;
    assert_eq!(y1.dim(), 1);
    assert_eq!(fun.kt_linear(&y1).unwrap().dim(), 2);
    let (ts1, _) = fun.t_p(&fun.h_p(&s1, 0).unwrap().module).unwrap();
    assert!(is_isomorphic(&ts1, &s1, &IsoConfig::default()).unwrap().is_some());
    assert!(fun.phi(&s1).unwrap().matrix.is_invertible());
    assert_eq!(fun.phi(&s2).unwrap().source.dim(), 0);
}

#[test]
fn zeta_recovers_torsion_free_modules() {
    let a = a2();
    let fun = Functors::new(&reference(&a)).unwrap();
    let s2 = simple(&a, 1);
    let p1 = FdModule::projective(a.clone(), 0).unwrap();
    let z2 = fun.zeta(&s2).unwrap();
    let z1 = fun.zeta(&p1).unwrap();
    assert!(z2.is_isomorphism() && z1.is_isomorphism());
    for z in [&z2, &z1] {
        for (k, act) in z.kt_module.action().iter().enumerate() {
            let target = if z.matrix.rows() == 1 { &s2 } else { &p1 };
            assert_eq!(z.matrix.mul(act), target.action()[k].mul(&z.matrix));
        }
    }
    let inc = crate::algebra::hom_space(&s2, &p1).unwrap();
    assert_eq!(inc.len(), 1);
    let g = ModuleMap::new(s2.clone(), p1.clone(), inc[0].clone()).unwrap();
    assert!(fun.zeta_is_natural(&g, &z2, &z1).unwrap());
}

#[test]
fn unit_and_tensor_laws_on_the_inventory() {
    let a = a2();
    let fun = Functors::new(&reference(&a)).unwrap();
    let cfg = EnumConfig::with_max_dim(2);
    for x in enumerate_modules(&fun.endo.algebra, &cfg).unwrap() {
        fun.psi(&x).unwrap();
        let tor = fun.tor1(&x).unwrap();
        assert_eq!(tor.epi_rank, tor.tor_dim);
        assert!(!fun.in_script_e(&x).unwrap() || x.dim() == 0);
    }
    for m in enumerate_modules(&a, &cfg).unwrap() {
        assert_eq!(fun.kt_linear(&fun.h_p(&m, 0).unwrap().module).unwrap().dim(), 0);
        assert_eq!(fun.t_p(&fun.h_p(&m, 1).unwrap().module).unwrap().0.dim(), 0);
        let cert = fun.cert.as_ref().unwrap();
        for q in [fun.p(), &cert.q1, &cert.q2] {
            assert!(fun.tensor_hom_bijective(&TwoTermComplex::stalk(&m, 0), q).unwrap());
        }
    }
}

#[test]
fn six_term_sequence_for_a_radical_filtration() {
    let a = a2();
    let fun = Functors::new(&reference(&a)).unwrap();
    let e = fun.endo.algebra.clone();
    let cfg = EnumConfig::with_max_dim(2);
    let mut seen = 0;
    for x in enumerate_modules(&e, &cfg).unwrap() {
        for s in crate::algebra::enumerate_submodules(&x, &cfg).unwrap() {
            let sub: Vec<_> = s.inclusion.columns();
            let (q, proj) = x.quotient(&sub).unwrap();
            let f = ModuleMap::new(s.module.clone(), x.clone(), s.inclusion.clone()).unwrap();
            let g = ModuleMap::new(x.clone(), q, proj).unwrap();
            assert!(fun.six_term(&f, &g).unwrap().exact);
            seen += 1;
        }
    }
    assert!(seen > 10);
}
