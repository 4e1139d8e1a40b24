//! Isomorphism testing for modules and (small) algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::module::hom_matrices;
use crate::algebra::{FdModule, FiniteDimAlgebra, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoConfig {
    /// Largest number of Hom-space points searched exhaustively.
    pub exhaustive_cap: u64,
    /// Random points tried before exhaustive search.
    pub samples: usize,
    /// Seed for the sample order; answers never depend on it.
    pub seed: u64,
    /// Allow the exhaustive fallback after sampling.
    pub fallback: bool,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { exhaustive_cap: 1 << 20, samples: 64, seed: 0, fallback: true }
    }
}

/// An isomorphism `M -> N` if one exists.
///
/// Over `F_p` the answer is exact whenever the Hom space has at most
/// `exhaustive_cap` points. Over `Q` a non-vanishing determinant at an
/// integer point certifies an isomorphism, and vanishing on the grid
/// `{0..dim}^h` certifies that none exists.
pub fn is_isomorphic<F: Field>(m: &FdModule<F>, n: &FdModule<F>, cfg: &IsoConfig) -> Result<Option<ModuleMap<F>>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() || m.dim_vector() != n.dim_vector() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMap { source: m.clone(), target: n.clone(), matrix: Matrix::zeros(m.field(), 0, 0) }));
    }
    let basis = hom_matrices(m, n);
    let Some(matrix) = find_invertible(m.field(), m.dim(), &basis, cfg)? else {
        return Ok(None);
    };
    Ok(Some(ModuleMap { source: m.clone(), target: n.clone(), matrix }))
}

/// Searches the span of `basis` (square `d x d` matrices) for an invertible one.
pub(crate) fn find_invertible<F: Field>(
    f: &F,
    d: usize,
    basis: &[Matrix<F>],
    cfg: &IsoConfig,
) -> Result<Option<Matrix<F>>> {
    let h = basis.len();
    if h == 0 {
        return Ok(None);
    }
    // The sum of the basis is a cheap first guess (often the identity).
    let ones = vec![f.one(); h];
    let guess = Matrix::combination(f, (d, d), &ones, basis);
    if guess.is_invertible() {
        return Ok(Some(guess));
    }
    for b in basis {
        if b.is_invertible() {
            return Ok(Some(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match f.order() {
        Some(q) => {
            let total = (q as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
            for _ in 0..cfg.samples {
                let c: Vec<F::Elem> = (0..h).map(|_| f.element(rng.gen_range(0..q))).collect();
                let x = Matrix::combination(f, (d, d), &c, basis);
                if x.is_invertible() {
                    return Ok(Some(x));
                }
            }
            if total > cfg.exhaustive_cap as u128 || !cfg.fallback {
                return Err(Error::Undecided(format!("Hom space has {total} points, above the search cap")));
            }
            for i in 0..total as u64 {
                let c = vector::from_counter(f, i, h);
                let x = Matrix::combination(f, (d, d), &c, basis);
                if x.is_invertible() {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
        None => {
            for _ in 0..cfg.samples {
                let c: Vec<F::Elem> = (0..h).map(|_| f.from_i64(rng.gen_range(-9..=9))).collect();
                let x = Matrix::combination(f, (d, d), &c, basis);
                if x.is_invertible() {
                    return Ok(Some(x));
                }
            }
            // det(sum c_i B_i) has degree <= d, so it vanishes on {0..d}^h only if it is zero.
            let side = d as u128 + 1;
            let total = side.checked_pow(h as u32).unwrap_or(u128::MAX);
            if total > cfg.exhaustive_cap as u128 || !cfg.fallback {
                return Err(Error::Undecided(format!("certifying grid has {total} points, above the search cap")));
            }
            for i in 0..total as u64 {
                let mut k = i;
                let c: Vec<F::Elem> = (0..h)
                    .map(|_| {
                        let digit = k % side as u64;
                        k /= side as u64;
                        f.from_i64(digit as i64)
                    })
                    .collect();
                let x = Matrix::combination(f, (d, d), &c, basis);
                if x.is_invertible() {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
    }
}

/// A linear bijection `phi: A -> B` (matrix, columns = images of basis
/// elements) respecting products and units, found by exhaustive search over
/// a finite field.
pub fn algebra_isomorphism<F: Field>(
    a: &FiniteDimAlgebra<F>,
    b: &FiniteDimAlgebra<F>,
    cap: u64,
) -> Result<Option<Matrix<F>>> {
    let f = a.field();
    let n = a.dim();
    if n != b.dim() {
        return Ok(None);
    }
    let q = f.order().ok_or(Error::InfiniteField)?;
    // Images of the unit and of the generators determine phi; search over those.
    let gens = a.generators().to_vec();
    let total = (q as u128).checked_pow((gens.len() * n) as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::CapExceeded(format!("{total} candidate algebra maps")));
    }
    // Express every basis element of A as a combination of words in the generators.
    let mut words: Vec<(Vec<usize>, Vec<F::Elem>)> = vec![(Vec::new(), a.unit().to_vec())];
    let mut vecs = vec![a.unit().to_vec()];
    let mut head = 0;
    while head < words.len() && vecs.len() < n {
        let (w, v) = words[head].clone();
        head += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let nv = a.mul(&v, &a.basis_element(g));
            if !crate::linalg::in_span(f, n, &vecs, &nv) {
                vecs.push(nv.clone());
                let mut nw = w.clone();
                nw.push(gi);
                words.push((nw, nv));
            }
        }
    }
    if vecs.len() < n {
        return Ok(None);
    }
    let word_matrix = Matrix::from_columns(f, n, &vecs);
    let inv = word_matrix.inverse().expect("independent words");
    for i in 0..total as u64 {
        let flat = vector::from_counter(f, i, gens.len() * n);
        let images: Vec<Vec<F::Elem>> = flat.chunks(n).map(|c| c.to_vec()).collect();
        let word_images: Vec<Vec<F::Elem>> = words
            .iter()
            .map(|(w, _)| w.iter().fold(b.unit().to_vec(), |acc, &gi| b.mul(&acc, &images[gi])))
            .collect();
        let wm = Matrix::from_columns(f, n, &word_images);
        let phi = wm.mul(&inv);
        if !phi.is_invertible() {
            continue;
        }
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = phi.mul_vec(&a.structure_constants()[i][j]);
                let rhs = b.mul(&phi.column(i), &phi.column(j));
                lhs == rhs
            })
        });
        if ok && phi.mul_vec(a.unit()) == b.unit() {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::linalg::{PrimeField, Rationals};
    use std::sync::Arc;

    #[test]
    fn simples_at_different_vertices_are_not_isomorphic() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let f = PrimeField::new(2).unwrap();
        let a = Arc::new(path_algebra(&q, &[], &f).unwrap());
        let s1 = FdModule::from_representation(a.clone(), &[1, 0], &[Matrix::zeros(&f, 0, 1)]).unwrap();
        let s2 = FdModule::from_representation(a.clone(), &[0, 1], &[Matrix::zeros(&f, 1, 0)]).unwrap();
        assert!(is_isomorphic(&s1, &s2, &IsoConfig::default()).unwrap().is_none());
        let iso = is_isomorphic(&s1, &s1, &IsoConfig::default()).unwrap().unwrap();
        assert!(iso.matrix.is_invertible());
    }

    #[test]
    fn rational_isomorphism_after_base_change() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let f = Rationals;
        let a = Arc::new(path_algebra(&q, &[], &f).unwrap());
        let ma = Matrix::from_i64(&f, &[&[1, 0], &[0, 1]]);
        let mb = Matrix::from_i64(&f, &[&[1, 1], &[0, 1]]);
        let m = FdModule::from_representation(a.clone(), &[2, 2], &[ma.clone(), mb.clone()]).unwrap();
        let p = Matrix::from_i64(&f, &[&[2, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 3], &[0, 0, 0, 1]]);
        let n = m.conjugate(&p);
        assert!(is_isomorphic(&m, &n, &IsoConfig::default()).unwrap().is_some());
        let other = FdModule::from_representation(a, &[2, 2], &[ma.clone(), ma]).unwrap();
        assert!(is_isomorphic(&m, &other, &IsoConfig::default()).unwrap().is_none());
    }

    #[test]
    fn opposite_of_a2_is_isomorphic_to_a2() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let f = PrimeField::new(2).unwrap();
        let a = path_algebra(&q, &[], &f).unwrap();
        assert!(algebra_isomorphism(&a, &a.opposite(), 1 << 16).unwrap().is_some());
    }
}
