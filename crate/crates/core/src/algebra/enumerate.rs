//! Brute-force enumeration of small modules and of submodules over finite fields.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::iso::is_isomorphic;
use crate::algebra::module::hom_matrices;
use crate::algebra::{FdModule, FiniteDimAlgebra, IsoConfig};
use crate::error::{Error, Result};
use crate::linalg::{in_span, span_basis, vector, Field, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_dim: usize,
    /// Hard cap on module dimension regardless of `max_dim`.
    pub dim_cap: usize,
    /// Largest number of candidate matrix tuples per dimension vector.
    pub candidate_cap: u64,
    /// Largest number of vectors scanned when enumerating submodules.
    pub vector_cap: u64,
    pub iso: IsoConfig,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { max_dim: 3, dim_cap: 4, candidate_cap: 1 << 20, vector_cap: 1 << 16, iso: IsoConfig::default() }
    }
}

impl EnumConfig {
    pub fn with_max_dim(max_dim: usize) -> Self {
        EnumConfig { max_dim, ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Submodule<F: Field> {
    pub module: FdModule<F>,
    pub inclusion: Matrix<F>,
}

/// Elements `x` in Peirce components `e_i A e_j` which, with the idempotents,
/// generate the algebra. Returned as `(i, j, x)`.
fn peirce_generators<F: Field>(alg: &FiniteDimAlgebra<F>) -> Vec<(usize, usize, Vec<F::Elem>)> {
    let f = alg.field();
    let n = alg.dim();
    let idem = alg.idempotents();
    let close = |gens: &[Vec<F::Elem>]| -> Vec<Vec<F::Elem>> {
        let mut basis: Vec<Vec<F::Elem>> = Vec::new();
        let mut queue = vec![alg.unit().to_vec()];
        queue.extend(gens.iter().cloned());
        while let Some(v) = queue.pop() {
            if in_span(f, n, &basis, &v) {
                continue;
            }
            basis.push(v.clone());
            for g in gens {
                queue.push(alg.mul(&v, g));
            }
        }
        basis
    };
    let mut chosen: Vec<(usize, usize, Vec<F::Elem>)> = Vec::new();
    let mut gens: Vec<Vec<F::Elem>> = idem.to_vec();
    let mut span = close(&gens);
    for i in 0..idem.len() {
        for j in 0..idem.len() {
            for x in alg.peirce_component(i, j) {
                if span.len() == n {
                    return chosen;
                }
                if in_span(f, n, &span, &x) {
                    continue;
                }
                gens.push(x.clone());
                chosen.push((i, j, x));
                span = close(&gens);
            }
        }
    }
    chosen
}

/// Dimension vectors with total at most `max_dim`, in graded lexicographic order.
fn dimension_vectors(parts: usize, max_dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 0..=max_dim {
        let mut cur = vec![0; parts];
        fill(&mut cur, 0, total, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<usize>, pos: usize, left: usize, out: &mut Vec<Vec<usize>>) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = left;
            out.push(cur.clone());
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(cur, pos + 1, left - k, out);
    }
}

/// Every module of dimension `<= max_dim`, one per isomorphism class
/// (including the zero module first).
///
/// Each module is realized with the idempotents acting as coordinate
/// projections onto consecutive blocks; the remaining generators run over
/// all block matrices compatible with their Peirce components.
pub fn enumerate_modules<F: Field>(alg: &Arc<FiniteDimAlgebra<F>>, cfg: &EnumConfig) -> Result<Vec<FdModule<F>>> {
    let f = alg.field();
    let q = f.order().ok_or(Error::InfiniteField)?;
    if cfg.max_dim > cfg.dim_cap {
        return Err(Error::CapExceeded(format!("max_dim {} above the cap {}", cfg.max_dim, cfg.dim_cap)));
    }
    let idem = alg.idempotents();
    let gens = peirce_generators(alg);
    let mut found: Vec<FdModule<F>> = Vec::new();
    for dims in dimension_vectors(idem.len(), cfg.max_dim) {
        let dim: usize = dims.iter().sum();
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let mut fixed = Vec::new();
        for (i, e) in idem.iter().enumerate() {
            let mut m = Matrix::zeros(f, dim, dim);
            for k in 0..dims[i] {
                m.set(offsets[i] + k, offsets[i] + k, f.one());
            }
            fixed.push((e.clone(), m));
        }
        let entries: usize = gens.iter().map(|(i, j, _)| dims[*i] * dims[*j]).sum();
        let total = (q as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
        if total > cfg.candidate_cap as u128 {
            return Err(Error::CapExceeded(format!("{total} candidates for dimension vector {dims:?}")));
        }
        let start = found.len();
        for c in 0..total as u64 {
            let flat = vector::from_counter(f, c, entries);
            let mut pos = 0;
            let mut all = fixed.clone();
            for (i, j, x) in &gens {
                let (r, s) = (dims[*j], dims[*i]);
                let block = Matrix::from_vec(f, r, s, flat[pos..pos + r * s].to_vec());
                pos += r * s;
                let mut m = Matrix::zeros(f, dim, dim);
                m.set_block(offsets[*j], offsets[*i], &block);
                all.push((x.clone(), m));
            }
            let Ok(module) = FdModule::from_element_actions(alg.clone(), dim, &all) else {
                continue;
            };
            let mut new = true;
            for other in &found[start..] {
                if quick_signature(other, &gens) != quick_signature(&module, &gens) {
                    continue;
                }
                if is_isomorphic(other, &module, &cfg.iso)?.is_some() {
                    new = false;
                    break;
                }
            }
            if new {
                found.push(module);
            }
        }
    }
    Ok(found)
}

/// Isomorphism invariants: ranks of generator actions and of their products, and `dim End`.
fn quick_signature<F: Field>(m: &FdModule<F>, gens: &[(usize, usize, Vec<F::Elem>)]) -> Vec<usize> {
    let mut sig: Vec<usize> = gens.iter().map(|(_, _, x)| m.act(x).rank()).collect();
    for (_, _, x) in gens {
        for (_, _, y) in gens {
            sig.push(m.act(y).mul(&m.act(x)).rank());
        }
    }
    sig.push(hom_matrices(m, m).len());
    sig
}

/// All submodules of `m`, smallest first, each with its inclusion.
pub fn enumerate_submodules<F: Field>(m: &FdModule<F>, cfg: &EnumConfig) -> Result<Vec<Submodule<F>>> {
    let f = m.field();
    let q = f.order().ok_or(Error::InfiniteField)?;
    let d = m.dim();
    let count = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if count > cfg.vector_cap as u128 {
        return Err(Error::CapExceeded(format!("{count} vectors in a module of dim {d}")));
    }
    let vectors: Vec<Vec<F::Elem>> = (0..count as u64).map(|i| vector::from_counter(f, i, d)).collect();
    let mut seen: HashSet<Vec<Vec<F::Elem>>> = HashSet::new();
    let mut order: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new()];
    seen.insert(Vec::new());
    let mut head = 0;
    while head < order.len() {
        let s = order[head].clone();
        head += 1;
        for v in &vectors {
            if in_span(f, d, &s, v) {
                continue;
            }
            let mut gens = s.clone();
            gens.push(v.clone());
            let closed = submodule_closure(m, &gens);
            if seen.insert(closed.clone()) {
                order.push(closed);
            }
        }
    }
    order.sort_by_key(|b| b.len());
    order
        .into_iter()
        .map(|b| {
            let (module, inclusion) = m.submodule(&b)?;
            Ok(Submodule { module, inclusion })
        })
        .collect()
}

/// Canonical echelon basis of the submodule generated by `gens`.
pub(crate) fn submodule_closure<F: Field>(m: &FdModule<F>, gens: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let d = m.dim();
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    let mut queue: Vec<Vec<F::Elem>> = gens.to_vec();
    while let Some(v) = queue.pop() {
        if in_span(f, d, &basis, &v) {
            continue;
        }
        basis.push(v.clone());
        for &g in m.algebra().generators() {
            queue.push(m.action()[g].mul_vec(&v));
        }
    }
    span_basis(f, d, &basis)
}

/// Refines the algebra's idempotents into primitive ones by exhaustive
/// search in each corner ring `eAe` (finite fields only; infinite fields and
/// corners above `cap` elements are left as they are).
pub fn primitive_idempotents<F: Field>(alg: &FiniteDimAlgebra<F>, cap: u64) -> Vec<Vec<F::Elem>> {
    let f = alg.field();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<F::Elem>> = alg.idempotents().iter().rev().cloned().collect();
    while let Some(e) = stack.pop() {
        let corner: Vec<Vec<F::Elem>> = (0..alg.dim())
            .map(|k| alg.mul(&alg.mul(&e, &alg.basis_element(k)), &e))
            .collect();
        let corner = span_basis(f, alg.dim(), &corner);
        let size = f.order().map(|q| (q as u128).checked_pow(corner.len() as u32).unwrap_or(u128::MAX));
        let split = match size {
            Some(s) if s <= cap as u128 => alg.elements_of_span(&corner).ok().and_then(|elems| {
                elems.into_iter().find(|x| {
                    !vector::is_zero(f, x) && *x != e && alg.mul(x, x) == *x
                })
            }),
            _ => None,
        };
        match split {
            Some(x) => {
                let rest = vector::sub(f, &e, &x);
                stack.push(rest);
                stack.push(x);
            }
            None => out.push(e),
        }
    }
    out
}
