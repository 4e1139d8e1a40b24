//! Free covers and `Ext^1` for finite-dimensional modules.

use crate::algebra::enumerate::submodule_closure;
use crate::algebra::module::hom_matrices;
use crate::algebra::{FdModule, ModuleMap};
use crate::error::Result;
use crate::linalg::{span_rank, vector, Field, Matrix};

/// Greedy generators `x_1..x_m` of `x` and the surjection `A^m -> X`,
/// `(a_1, .., a_m) -> sum x_i a_i`.
pub fn free_cover<F: Field>(x: &FdModule<F>) -> ModuleMap<F> {
    let f = x.field();
    let alg = x.algebra();
    let mut gens: Vec<Vec<F::Elem>> = Vec::new();
    let mut span: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..x.dim() {
        if span.len() == x.dim() {
            break;
        }
        let v = vector::unit(f, x.dim(), i);
        if crate::linalg::in_span(f, x.dim(), &span, &v) {
            continue;
        }
        gens.push(v);
        span = submodule_closure(x, &gens);
    }
    let free = FdModule::regular(alg.clone()).power(gens.len());
    let mut cols = Vec::new();
    for g in &gens {
        for b in 0..alg.dim() {
            cols.push(x.action()[b].mul_vec(g));
        }
    }
    let matrix = Matrix::from_columns(f, x.dim(), &cols);
    ModuleMap { source: free, target: x.clone(), matrix }
}

/// `dim Ext^1(Z, X)`, from `0 -> K -> F -> Z -> 0` with `F` free:
/// the cokernel of `Hom(F, X) -> Hom(K, X)`.
pub fn ext1_dim<F: Field>(z: &FdModule<F>, x: &FdModule<F>) -> Result<usize> {
    if !z.same_algebra(x) {
        return Err(crate::error::Error::AlgebraMismatch);
    }
    let f = z.field();
    let cover = free_cover(z);
    let kb = cover.matrix.kernel_basis();
    let (k, inc) = cover.source.submodule(&kb)?;
    let hom_kx = hom_matrices(&k, x);
    let restricted: Vec<Vec<F::Elem>> =
        hom_matrices(&cover.source, x).iter().map(|h| h.mul(&inc).to_vec()).collect();
    Ok(hom_kx.len() - span_rank(f, k.dim() * x.dim(), &restricted))
}
