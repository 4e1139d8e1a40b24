//! Two-term complexes `X^-1 -> X^0`, chain maps and Hom spaces in the
//! homotopy category.

pub(crate) mod hom;
mod silting;

use std::sync::Arc;

pub use hom::{hom_d_module, hom_k, ChainMap, HomK, LinearSpace};
pub use silting::{add_membership, is_presilting, silting_certificate, AddWitness, SiltingCertificate, CERTIFICATE_CAP};

use crate::algebra::{map_calculus, FdModule, FiniteDimAlgebra, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// Complex concentrated in degrees -1 and 0. When `tags` is set, the entries
/// are the direct sums of the indecomposable projectives `e_i A` listed there
/// (indices into the algebra's idempotents).
#[derive(Clone, Debug)]
pub struct TwoTermComplex<F: Field> {
    pub m1: FdModule<F>,
    pub m0: FdModule<F>,
    /// `dim m0 x dim m1`
    pub d: Matrix<F>,
    pub tags: Option<(Vec<usize>, Vec<usize>)>,
}

/// A two-term complex whose entries need not be projective.
pub type GeneralTwoTerm<F> = TwoTermComplex<F>;

impl<F: Field> TwoTermComplex<F> {
    pub fn new(m1: FdModule<F>, m0: FdModule<F>, d: Matrix<F>) -> Result<Self> {
        ModuleMap::new(m1.clone(), m0.clone(), d.clone())?;
        Ok(TwoTermComplex { m1, m0, d, tags: None })
    }

    /// Complex of projectives `⊕ e_s A -> ⊕ e_t A`; `entries[i][j]` is an
    /// element of `e_t A e_s` (t = `p0[i]`, s = `pm1[j]`) acting by left
    /// multiplication.
    pub fn from_projectives(
        algebra: &Arc<FiniteDimAlgebra<F>>,
        pm1: &[usize],
        p0: &[usize],
        entries: &[Vec<Vec<F::Elem>>],
    ) -> Result<Self> {
        let f = algebra.field();
        let idem = algebra.idempotents();
        for &v in pm1.iter().chain(p0) {
            if v >= idem.len() {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        if entries.len() != p0.len() || entries.iter().any(|r| r.len() != pm1.len()) {
            return Err(Error::Dimension(format!(
                "differential needs {} rows of {} entries",
                p0.len(),
                pm1.len()
            )));
        }
        let proj = |v: usize| FdModule::projective_from_idempotent(algebra.clone(), &idem[v]);
        let src: Vec<_> = pm1.iter().map(|&v| proj(v)).collect();
        let tgt: Vec<_> = p0.iter().map(|&v| proj(v)).collect();
        let m1 = FdModule::direct_sum(algebra.clone(), &src.iter().map(|p| &p.0).collect::<Vec<_>>()).0;
        let m0 = FdModule::direct_sum(algebra.clone(), &tgt.iter().map(|p| &p.0).collect::<Vec<_>>()).0;
        let mut d = Matrix::zeros(f, m0.dim(), m1.dim());
        let mut row = 0;
        for (i, &t) in p0.iter().enumerate() {
            let mut col = 0;
            for (j, &s) in pm1.iter().enumerate() {
                let x = &entries[i][j];
                let sandwiched = algebra.mul(&algebra.mul(&idem[t], x), &idem[s]);
                if sandwiched != *x {
                    return Err(Error::Precondition(format!(
                        "entry ({i}, {j}) of the differential is not in e_{t} A e_{s}"
                    )));
                }
                let (ps, inc_s) = &src[j];
                let inc_t = &tgt[i].1;
                let left = algebra.left_mult_matrix(x).mul(inc_s);
                let block = inc_t.solve_matrix(&left).expect("left multiplication lands in e_t A");
                d.set_block(row, col, &block);
                col += ps.dim();
            }
            row += tgt[i].0.dim();
        }
        let mut c = TwoTermComplex::new(m1, m0, d)?;
        c.tags = Some((pm1.to_vec(), p0.to_vec()));
        Ok(c)
    }

    /// `M` placed in degree 0 or -1.
    pub fn stalk(m: &FdModule<F>, degree: i32) -> Self {
        let z = FdModule::zero(m.algebra().clone());
        let f = m.field();
        match degree {
            0 => TwoTermComplex { m1: z, m0: m.clone(), d: Matrix::zeros(f, m.dim(), 0), tags: None },
            -1 => TwoTermComplex { m1: m.clone(), m0: z, d: Matrix::zeros(f, 0, m.dim()), tags: None },
            _ => panic!("two-term complexes live in degrees -1 and 0"),
        }
    }

    /// The regular module `A` in degree 0, with projective tags.
    pub fn regular_stalk(algebra: &Arc<FiniteDimAlgebra<F>>) -> Self {
        let mut c = Self::stalk(&FdModule::regular(algebra.clone()), 0);
        c.tags = Some((Vec::new(), (0..algebra.idempotents().len()).collect()));
        c
    }

    /// `A` in degree -1.
    pub fn regular_shifted(algebra: &Arc<FiniteDimAlgebra<F>>) -> Self {
        let mut c = Self::stalk(&FdModule::regular(algebra.clone()), -1);
        c.tags = Some(((0..algebra.idempotents().len()).collect(), Vec::new()));
        c
    }

    pub fn algebra(&self) -> &Arc<FiniteDimAlgebra<F>> {
        self.m0.algebra()
    }

    pub fn field(&self) -> &F {
        self.m0.field()
    }

    pub fn is_projective(&self) -> bool {
        self.tags.is_some()
    }

    /// Entry in degree `k`, `None` outside {-1, 0}.
    pub fn entry(&self, k: i32) -> Option<&FdModule<F>> {
        match k {
            -1 => Some(&self.m1),
            0 => Some(&self.m0),
            _ => None,
        }
    }

    pub fn entry_dim(&self, k: i32) -> usize {
        self.entry(k).map_or(0, |m| m.dim())
    }

    pub fn differential(&self) -> ModuleMap<F> {
        ModuleMap { source: self.m1.clone(), target: self.m0.clone(), matrix: self.d.clone() }
    }

    /// `H^0` (cokernel of the differential) with the projection from `X^0`.
    pub fn h0(&self) -> (FdModule<F>, Matrix<F>) {
        let c = map_calculus(&self.differential());
        (c.cokernel, c.cokernel_projection)
    }

    /// `H^-1` (kernel of the differential) with the inclusion into `X^-1`.
    pub fn h_minus1(&self) -> (FdModule<F>, Matrix<F>) {
        let c = map_calculus(&self.differential());
        (c.kernel, c.kernel_inclusion)
    }

    pub fn cohomology(&self, i: i32) -> FdModule<F> {
        match i {
            0 => self.h0().0,
            -1 => self.h_minus1().0,
            _ => FdModule::zero(self.algebra().clone()),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.d.rank() == self.m1.dim() && self.d.rank() == self.m0.dim()
    }

    /// Direct sum of complexes with the canonical inclusions and projections.
    pub fn direct_sum(algebra: &Arc<FiniteDimAlgebra<F>>, parts: &[&Self]) -> (Self, Vec<ChainMap<F>>, Vec<ChainMap<F>>) {
        let f = algebra.field();
        let (m1, inc1, pr1) = FdModule::direct_sum(algebra.clone(), &parts.iter().map(|c| &c.m1).collect::<Vec<_>>());
        let (m0, inc0, pr0) = FdModule::direct_sum(algebra.clone(), &parts.iter().map(|c| &c.m0).collect::<Vec<_>>());
        let d = Matrix::block_diag(f, &parts.iter().map(|c| &c.d).collect::<Vec<_>>());
        let tags = if parts.iter().all(|c| c.tags.is_some()) {
            let mut t1 = Vec::new();
            let mut t0 = Vec::new();
            for c in parts {
                let (a, b) = c.tags.as_ref().expect("checked");
                t1.extend(a);
                t0.extend(b);
            }
            Some((t1, t0))
        } else {
            None
        };
        let incs = inc1.into_iter().zip(inc0).map(|(a, b)| ChainMap::new(0, a, b)).collect();
        let projs = pr1.into_iter().zip(pr0).map(|(a, b)| ChainMap::new(0, a, b)).collect();
        (TwoTermComplex { m1, m0, d, tags }, incs, projs)
    }

    pub fn power(&self, n: usize) -> Self {
        let parts = vec![self; n];
        Self::direct_sum(self.algebra(), &parts).0
    }

    pub fn identity(&self) -> ChainMap<F> {
        let f = self.field();
        ChainMap::new(0, Matrix::identity(f, self.m1.dim()), Matrix::identity(f, self.m0.dim()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::linalg::PrimeField;

    #[test]
    fn cohomology_of_the_arrow_complex() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let f = PrimeField::new(2).unwrap();
        let a = Arc::new(path_algebra(&q, &[], &f).unwrap());
        let x = TwoTermComplex::from_projectives(&a, &[1], &[0], &[vec![a.basis_element(2)]]).unwrap();
        assert_eq!(x.cohomology(0).dim_vector(), vec![1, 0]);
        assert_eq!(x.cohomology(-1).dim(), 0);
        let y = TwoTermComplex::from_projectives(&a, &[1], &[], &[]).unwrap();
        assert_eq!(y.cohomology(-1).dim_vector(), vec![0, 1]);
        let id = TwoTermComplex::from_projectives(&a, &[0], &[0], &[vec![a.basis_element(0)]]).unwrap();
        assert!(id.is_acyclic());
    }

    #[test]
    fn entries_must_live_in_the_right_corner() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let f = PrimeField::new(2).unwrap();
        let a = Arc::new(path_algebra(&q, &[], &f).unwrap());
        // a lies in e1 A e2, not in e2 A e1
        assert!(TwoTermComplex::from_projectives(&a, &[0], &[1], &[vec![a.basis_element(2)]]).is_err());
    }
}
