//! The torsion pair `(Gen T, Ker Hom(T, -))` of `T = H^0(P)` and the
//! comparison of `Gen T` with the modules on which `Hom(sigma, -)` is onto.

use serde::Serialize;

use crate::algebra::{hom_space, trace_of, FdModule};
use crate::complex::{silting_certificate, TwoTermComplex};
pub use crate::complex::LinearSpace;
use crate::error::{Error, Result};
use crate::linalg::{span_basis, Field, Matrix};

/// `Coker(Hom(P^0, M) -> Hom(P^-1, M))`, `f -> f sigma`.
pub fn defect<F: Field>(p: &TwoTermComplex<F>, m: &FdModule<F>) -> LinearSpace<F> {
    crate::complex::hom::defect_space(p, m)
}

#[derive(Clone, Debug)]
pub struct TorsionPair<F: Field> {
    pub p: TwoTermComplex<F>,
    pub t: FdModule<F>,
    /// `P^0 -> T`
    pub t_projection: Matrix<F>,
    /// Whether `P` carries a silting certificate; when set, `in_t` also
    /// checks that the defect vanishes exactly on `Gen T`.
    pub certified: bool,
}

impl<F: Field> TorsionPair<F> {
    pub fn new(p: &TwoTermComplex<F>) -> Result<Self> {
        let certified = p.is_projective() && crate::complex::is_presilting(p)? && silting_certificate(p)?.is_some();
        Ok(Self::with_certification(p, certified))
    }

    /// Skips the silting test; `certified` is taken on trust.
    pub fn with_certification(p: &TwoTermComplex<F>, certified: bool) -> Self {
        let (t, t_projection) = p.h0();
        TorsionPair { p: p.clone(), t, t_projection, certified }
    }

    /// `M ∈ Gen T`, i.e. the trace of `T` in `M` is all of `M`.
    pub fn in_t(&self, m: &FdModule<F>) -> Result<bool> {
        let (tm, _) = trace_of(&self.t, m)?;
        let generated = tm.dim() == m.dim();
        if self.certified {
            let d = defect(&self.p, m).dim();
            if generated != (d == 0) {
                return Err(Error::InvariantViolation(format!(
                    "trace criterion says {generated} but the defect has dimension {d}"
                )));
            }
        }
        Ok(generated)
    }

    /// `Hom(T, M) = 0`.
    pub fn in_f(&self, m: &FdModule<F>) -> Result<bool> {
        Ok(hom_space(&self.t, m)?.is_empty())
    }

    /// `0 -> tM -> M -> M/tM -> 0` with `tM` the trace of `T`.
    pub fn decompose(&self, m: &FdModule<F>) -> Result<TorsionDecomposition<F>> {
        let (tm, inclusion) = trace_of(&self.t, m)?;
        let basis = span_basis(m.field(), m.dim(), &inclusion.columns());
        let (free, projection) = m.quotient(&basis)?;
        Ok(TorsionDecomposition { torsion: tm, inclusion, free, projection })
    }

    /// Compares `M ∈ Gen T` with `Def(M) = 0` on every module of the inventory.
    pub fn verify_silting_equality(&self, inventory: &[FdModule<F>]) -> Result<EqualityReport> {
        let mut report = EqualityReport { checked: inventory.len(), counterexamples: Vec::new() };
        for (index, m) in inventory.iter().enumerate() {
            let (tm, _) = trace_of(&self.t, m)?;
            let in_gen = tm.dim() == m.dim();
            let defect_dim = defect(&self.p, m).dim();
            if in_gen != (defect_dim == 0) {
                report.counterexamples.push(Counterexample { index, dim_vector: m.dim_vector(), in_gen, defect_dim });
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug)]
pub struct TorsionDecomposition<F: Field> {
    pub torsion: FdModule<F>,
    pub inclusion: Matrix<F>,
    pub free: FdModule<F>,
    pub projection: Matrix<F>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub dim_vector: Vec<usize>,
    pub in_gen: bool,
    pub defect_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualityReport {
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl EqualityReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{enumerate_modules, path_algebra, EnumConfig, FiniteDimAlgebra, Quiver};
    use crate::linalg::PrimeField;
    use std::sync::Arc;

    fn a2() -> Arc<FiniteDimAlgebra<PrimeField>> {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Arc::new(path_algebra(&q, &[], &PrimeField::new(2).unwrap()).unwrap())
    }

    fn simple(a: &Arc<FiniteDimAlgebra<PrimeField>>, v: usize) -> FdModule<PrimeField> {
        let f = a.field();
        let dims = if v == 0 { [1, 0] } else { [0, 1] };
        FdModule::from_representation(a.clone(), &dims, &[Matrix::zeros(f, dims[1], dims[0])]).unwrap()
    }

    #[test]
    fn reference_pair_memberships() {
        let a = a2();
        let p = TwoTermComplex::from_projectives(&a, &[1, 1], &[0], &[vec![a.basis_element(2), vec![0; 3]]]).unwrap();
        let tp = TorsionPair::new(&p).unwrap();
        assert!(tp.certified);
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        let p1 = FdModule::projective(a.clone(), 0).unwrap();
        assert_eq!(defect(&p, &s2).dim(), 2);
        assert_eq!(defect(&p, &p1).dim(), 1);
        assert!(tp.in_t(&s1).unwrap());
        assert!(!tp.in_t(&s2).unwrap());
        assert!(!tp.in_t(&p1).unwrap());
        assert!(tp.in_f(&s2).unwrap() && tp.in_f(&p1).unwrap());
        assert!(!tp.in_f(&s1).unwrap());
        let sum = FdModule::direct_sum(a.clone(), &[&s1, &s2]).0;
        let dec = tp.decompose(&sum).unwrap();
        assert_eq!(dec.torsion.dim_vector(), vec![1, 0]);
        assert_eq!(dec.free.dim_vector(), vec![0, 1]);
        let inventory = enumerate_modules(&a, &EnumConfig::with_max_dim(3)).unwrap();
        assert!(tp.verify_silting_equality(&inventory).unwrap().holds());
    }

    #[test]
    fn single_summand_fails_the_equality() {
        let a = a2();
        let p = TwoTermComplex::from_projectives(&a, &[1], &[0], &[vec![a.basis_element(2)]]).unwrap();
        let tp = TorsionPair::new(&p).unwrap();
        assert!(!tp.certified);
        let inventory = enumerate_modules(&a, &EnumConfig::with_max_dim(2)).unwrap();
        let report = tp.verify_silting_equality(&inventory).unwrap();
        assert!(report.counterexamples.iter().any(|c| c.dim_vector == vec![1, 1] && c.defect_dim == 0));
    }
}
