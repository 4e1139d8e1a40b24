//! Quivers, paths and bound path algebras `kQ/I`.

use std::collections::HashMap;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, vector, Field};

/// Longest path length explored before declaring the algebra infinite.
const MAX_PATH_LENGTH: usize = 24;
/// Total number of paths explored before giving up.
const MAX_PATHS: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from labels; arrows are `(name, from, to)`.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let mut q = Quiver { vertices, arrows: Vec::new() };
        for i in 0..q.vertices.len() {
            if q.vertices[..i].contains(&q.vertices[i]) {
                return Err(Error::Parse(format!("duplicate vertex `{}`", q.vertices[i])));
            }
        }
        for (name, from, to) in arrows {
            let from = q.vertex_index(from).ok_or_else(|| Error::UnknownVertex(from.to_string()))?;
            let to = q.vertex_index(to).ok_or_else(|| Error::UnknownVertex(to.to_string()))?;
            if q.arrow_index(name).is_some() {
                return Err(Error::Parse(format!("duplicate arrow `{name}`")));
            }
            q.arrows.push(Arrow { name: name.to_string(), from, to });
        }
        Ok(q)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A path: a start vertex and a sequence of composable arrows, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].to)
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.end(q) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, arrows })
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.start])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// Ordering key: length first, then arrows lexicographically, trivial paths by vertex.
    fn key(&self) -> (usize, Vec<usize>, usize) {
        (self.len(), self.arrows.clone(), self.start)
    }
}

/// Linear combination of paths.
pub type LinComb<F> = Vec<(<F as Field>::Elem, Path)>;

/// Normal-form data attached to a path algebra.
#[derive(Debug, Clone)]
pub struct PathBasis<F: Field> {
    pub quiver: Quiver,
    /// Every path of length `< bound` is listed in `all`; longer paths vanish.
    pub bound: usize,
    pub all: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Coordinates in the algebra basis of each path in `all`.
    coords: Vec<Vec<F::Elem>>,
    /// Paths whose residues form the basis, in basis order.
    pub basis: Vec<Path>,
}

impl<F: Field> PathBasis<F> {
    /// Coordinates of the residue of a path.
    pub fn path_coords(&self, field: &F, p: &Path) -> Vec<F::Elem> {
        match self.index.get(p) {
            Some(&i) => self.coords[i].clone(),
            None => vector::zero(field, self.basis.len()),
        }
    }

    pub fn element(&self, field: &F, comb: &LinComb<F>) -> Vec<F::Elem> {
        let mut v = vector::zero(field, self.basis.len());
        for (c, p) in comb {
            vector::axpy(field, &mut v, c, &self.path_coords(field, p));
        }
        v
    }
}

/// All paths up to length `max_len`, sorted by (length, arrows).
fn paths_up_to(q: &Quiver, max_len: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.end(q);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.from == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { start: p.start, arrows });
                }
            }
        }
        if out.len() + next.len() > MAX_PATHS {
            return Err(Error::InfiniteDimensional(max_len));
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by_key(|p| p.key());
    Ok(out)
}

/// All paths of exactly the given length.
pub(crate) fn paths_of_length(q: &Quiver, len: usize) -> Vec<Path> {
    let mut frontier: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.end(q);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.from == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { start: p.start, arrows });
                }
            }
        }
        frontier = next;
    }
    frontier
}

/// Splits a relation into its components `e_s r e_t`, each of which lies in the ideal.
fn homogeneous_parts<F: Field>(q: &Quiver, rel: &LinComb<F>) -> Vec<LinComb<F>> {
    let mut parts: Vec<((usize, usize), LinComb<F>)> = Vec::new();
    for (c, p) in rel {
        let key = (p.start, p.end(q));
        match parts.iter_mut().find(|(k, _)| *k == key) {
            Some((_, comb)) => comb.push((c.clone(), p.clone())),
            None => parts.push((key, vec![(c.clone(), p.clone())])),
        }
    }
    parts.into_iter().map(|(_, c)| c).collect()
}

/// Vectors `p r q` (in path coordinates) for all paths p, q such that every
/// term has length `<= max_len`; when `truncate` is set, terms of length
/// `>= max_len` are dropped instead, and products are formed whenever the
/// shortest term is shorter than `max_len`.
fn ideal_span<F: Field>(
    field: &F,
    q: &Quiver,
    rels: &[LinComb<F>],
    paths: &[Path],
    index: &HashMap<Path, usize>,
    max_len: usize,
    truncate: bool,
) -> Vec<Vec<F::Elem>> {
    let mut out = Vec::new();
    for rel in rels {
        let (Some(minlen), Some(maxlen)) = (rel.iter().map(|(_, p)| p.len()).min(), rel.iter().map(|(_, p)| p.len()).max())
        else {
            continue;
        };
        let (s, t) = (rel[0].1.start, rel[0].1.end(q));
        let room = if truncate {
            if minlen >= max_len {
                continue;
            }
            max_len - 1 - minlen
        } else {
            if maxlen > max_len {
                continue;
            }
            max_len - maxlen
        };
        for left in paths.iter().filter(|p| p.end(q) == s && p.len() <= room) {
            for right in paths.iter().filter(|p| p.start == t && left.len() + p.len() <= room) {
                let mut v = vector::zero(field, paths.len());
                for (c, p) in rel {
                    let full = left.concat(p, q).and_then(|lp| lp.concat(right, q)).expect("composable");
                    if let Some(&i) = index.get(&full) {
                        v[i] = field.add(&v[i], c);
                    }
                }
                if !vector::is_zero(field, &v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// The algebra `kQ/I` for the two-sided ideal generated by `relations`.
///
/// Finite dimensionality is certified by finding `N` with every path of
/// length `N` in the ideal; the quotient is then computed inside the span of
/// shorter paths. Fails if no such `N` is found within the length cap.
pub fn path_algebra<F: Field>(quiver: &Quiver, relations: &[LinComb<F>], field: &F) -> Result<FiniteDimAlgebra<F>> {
    let rels: Vec<LinComb<F>> = relations
        .iter()
        .flat_map(|r| homogeneous_parts::<F>(quiver, &r.iter().filter(|(c, _)| !field.is_zero(c)).cloned().collect()))
        .collect();
    let mut bound = None;
    for l in 1..=MAX_PATH_LENGTH {
        let paths = paths_up_to(quiver, l)?;
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let span = ideal_span(field, quiver, &rels, &paths, &index, l, false);
        let n = paths.len();
        let found = (1..=l).find(|&len| {
            paths
                .iter()
                .filter(|p| p.len() == len)
                .all(|p| crate::linalg::in_span(field, n, &span, &vector::unit(field, n, index[p])))
        });
        if let Some(len) = found {
            bound = Some(len);
            break;
        }
    }
    let bound = bound.ok_or(Error::InfiniteDimensional(MAX_PATH_LENGTH))?;
    let all = paths_up_to(quiver, bound - 1)?;
    let n = all.len();
    // Reverse the column order so that echelon pivots land on the longest
    // paths and the surviving basis consists of the shortest ones.
    let rev = |i: usize| n - 1 - i;
    let index: HashMap<Path, usize> = all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let ideal: Vec<Vec<F::Elem>> = ideal_span(field, quiver, &rels, &all, &index, bound, true)
        .into_iter()
        .map(|v| (0..n).map(|j| v[rev(j)].clone()).collect())
        .collect();
    let quotient = quotient_basis(field, &ideal, n);
    let dim = quotient.dim();
    // Basis position k corresponds to the k-th free reversed column; flip so
    // that basis order follows the path order.
    let coords: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let col = quotient.projection.column(rev(i));
            (0..dim).map(|k| col[dim - 1 - k].clone()).collect()
        })
        .collect();
    let mut basis = Vec::with_capacity(dim);
    for k in 0..dim {
        let lift_col = quotient.lift.column(dim - 1 - k);
        let j = lift_col.iter().position(|x| !field.is_zero(x)).expect("lift column is a unit vector");
        basis.push(all[rev(j)].clone());
    }
    for v in 0..quiver.vertices.len() {
        let e = &coords[index[&Path::trivial(v)]];
        if vector::is_zero(field, e) {
            return Err(Error::Precondition(format!("vertex idempotent e{} lies in the relation ideal", quiver.vertices[v])));
        }
    }
    let paths = PathBasis { quiver: quiver.clone(), bound, all, index, coords, basis };
    let mult: Vec<Vec<Vec<F::Elem>>> = paths
        .basis
        .iter()
        .map(|p| {
            paths
                .basis
                .iter()
                .map(|r| match p.concat(r, quiver) {
                    Some(pr) => paths.path_coords(field, &pr),
                    None => vector::zero(field, dim),
                })
                .collect()
        })
        .collect();
    let idempotents: Vec<Vec<F::Elem>> =
        (0..quiver.vertices.len()).map(|v| paths.path_coords(field, &Path::trivial(v))).collect();
    let mut unit = vector::zero(field, dim);
    for e in &idempotents {
        unit = vector::add(field, &unit, e);
    }
    let labels = paths.basis.iter().map(|p| p.label(quiver)).collect();
    let alg = FiniteDimAlgebra::new(field.clone(), labels, mult, unit, idempotents)?;
    Ok(alg.with_paths(paths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn path(q: &Quiver, names: &[&str]) -> Path {
        let arrows: Vec<usize> = names.iter().map(|n| q.arrow_index(n).unwrap()).collect();
        Path { start: q.arrows[arrows[0]].from, arrows }
    }

    #[test]
    fn single_vertex_is_the_field() {
        let q = Quiver::new(&["1"], &[]).unwrap();
        let a = path_algebra(&q, &[], &PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.labels(), &["e1".to_string()]);
    }

    #[test]
    fn a2_has_three_paths() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = path_algebra(&q, &[], &PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(a.labels(), &["e1".to_string(), "e2".to_string(), "a".to_string()]);
        // e1 * a = a, a * e2 = a, a * e1 = 0
        assert_eq!(a.mul(&a.basis_element(0), &a.basis_element(2)), a.basis_element(2));
        assert_eq!(a.mul(&a.basis_element(2), &a.basis_element(1)), a.basis_element(2));
        assert!(a.mul(&a.basis_element(2), &a.basis_element(0)).iter().all(|x| *x == 0));
    }

    #[test]
    fn loop_with_square_zero() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let f = Rationals;
        let rel = vec![(f.one(), path(&q, &["x", "x"]))];
        let a = path_algebra(&q, &[rel], &f).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn free_loop_is_rejected() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let err = path_algebra::<PrimeField>(&q, &[], &PrimeField::new(3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional(_)));
    }

    #[test]
    fn commutative_square() {
        let q = Quiver::new(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
            .unwrap();
        let f = PrimeField::new(3).unwrap();
        let rel = vec![(1, path(&q, &["a", "b"])), (2, path(&q, &["c", "d"]))];
        let a = path_algebra(&q, &[rel], &f).unwrap();
        // 4 trivial + 4 arrows + 1 surviving length-2 path
        assert_eq!(a.dim(), 9);
        let pb = a.paths().unwrap();
        let ab = pb.path_coords(&f, &path(&q, &["a", "b"]));
        let cd = pb.path_coords(&f, &path(&q, &["c", "d"]));
        // ab = -2 cd = cd over F_3
        assert_eq!(ab, cd.iter().map(|x| f.mul(&f.from_i64(-2), x)).collect::<Vec<_>>());
    }

    #[test]
    fn relations_in_higher_powers() {
        // loop x with x^3 = 0: basis e, x, x^2
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let f = PrimeField::new(2).unwrap();
        let rel = vec![(1, path(&q, &["x", "x", "x"]))];
        let a = path_algebra(&q, &[rel], &f).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels()[2], "x*x");
    }
}
