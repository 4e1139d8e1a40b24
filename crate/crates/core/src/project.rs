//! Project files: a field, a bound quiver, named modules and named
//! complexes of projectives, as JSON. Validation errors carry the JSON path
//! of the offending value.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{path_algebra, FdModule, FiniteDimAlgebra, LinComb, Path, Quiver};
use crate::complex::TwoTermComplex;
use crate::linalg::{Field, FieldSpec, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    pub field: FieldEntry,
    pub quiver: QuiverSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Term>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default, skip_serializing_if = "Config::is_empty")]
    pub config: Config,
}

/// `{"type": "Fp", "p": 2}` or `{"type": "Q"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldEntry {
    #[serde(rename = "type")]
    pub kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    Fp,
    Q,
}

impl FieldEntry {
    pub fn spec(&self) -> Result<FieldSpec, ProjectError> {
        let spec = match (self.kind, self.p) {
            (FieldKind::Fp, Some(p)) => FieldSpec::Prime { p },
            (FieldKind::Fp, None) => return Err(err("field.p", "F_p needs a characteristic")),
            (FieldKind::Q, None) => FieldSpec::Rationals,
            (FieldKind::Q, Some(_)) => return Err(err("field.p", "Q takes no characteristic")),
        };
        spec.validate().map_err(|e| err("field.p", e))?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// `coeff * path`; an empty path needs `vertex` and denotes its idempotent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: String,
    #[serde(default)]
    pub path: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

/// A representation: dimension per vertex (missing means 0) and a matrix
/// per arrow `u -> v` of shape `dims[v] x dims[u]` (missing means zero).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

/// `pm1`, `p0` list projectives as `P<vertex>`; `sigma[i][j]` is an element
/// of `e_t A e_s` with `t = p0[i]`, `s = pm1[j]` (empty list = 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default)]
    pub pm1: Vec<String>,
    #[serde(default)]
    pub p0: Vec<String>,
    #[serde(default)]
    pub sigma: Vec<Vec<Vec<Term>>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim_e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

impl Config {
    fn is_empty(&self) -> bool {
        *self == Config::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ProjectError {
    /// JSON path such as `quiver.arrows[0].to`; empty for the whole file.
    pub path: String,
    pub message: String,
}

fn err(path: impl Into<String>, message: impl ToString) -> ProjectError {
    ProjectError { path: path.into(), message: message.to_string() }
}

impl ProjectFile {
    pub fn from_json(text: &str) -> Result<Self, ProjectError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            err(if path == "." { String::new() } else { path }, e.into_inner())
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ProjectError> {
        let text = std::fs::read_to_string(path).map_err(|e| err("", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("project files serialize")
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), ProjectError> {
        std::fs::write(path, self.to_json() + "\n").map_err(|e| err("", format!("cannot write {}: {e}", path.display())))
    }
}

/// A validated project over a concrete field.
#[derive(Debug, Clone)]
pub struct Project<F: Field> {
    pub file: ProjectFile,
    pub quiver: Quiver,
    pub algebra: Arc<FiniteDimAlgebra<F>>,
    pub modules: BTreeMap<String, FdModule<F>>,
    pub complexes: BTreeMap<String, TwoTermComplex<F>>,
}

impl<F: Field> Project<F> {
    /// Resolves every reference and builds the algebra, modules and complexes.
    pub fn build(file: &ProjectFile, field: F) -> Result<Self, ProjectError> {
        if field.spec() != file.field.spec()? {
            return Err(err("field", "field does not match the project"));
        }
        let quiver = build_quiver(&file.quiver)?;
        let mut relations = Vec::with_capacity(file.relations.len());
        for (i, r) in file.relations.iter().enumerate() {
            relations.push(lin_comb(&field, &quiver, r, &format!("relations[{i}]"))?);
        }
        let algebra = Arc::new(path_algebra(&quiver, &relations, &field).map_err(|e| err("relations", e))?);
        let mut modules = BTreeMap::new();
        for (name, spec) in &file.modules {
            modules.insert(name.clone(), build_module(&algebra, &quiver, spec, &format!("modules.{name}"))?);
        }
        let mut complexes = BTreeMap::new();
        for (name, spec) in &file.complexes {
            complexes.insert(name.clone(), build_complex(&algebra, &quiver, spec, &format!("complexes.{name}"))?);
        }
        Ok(Project { file: file.clone(), quiver, algebra, modules, complexes })
    }

    pub fn complex(&self, name: &str) -> Result<&TwoTermComplex<F>, ProjectError> {
        self.complexes.get(name).ok_or_else(|| err("complexes", format!("no complex named `{name}`")))
    }

    pub fn module(&self, name: &str) -> Result<&FdModule<F>, ProjectError> {
        self.modules.get(name).ok_or_else(|| err("modules", format!("no module named `{name}`")))
    }
}

fn build_quiver(spec: &QuiverSpec) -> Result<Quiver, ProjectError> {
    for (i, v) in spec.vertices.iter().enumerate() {
        if spec.vertices[..i].contains(v) {
            return Err(err(format!("quiver.vertices[{i}]"), format!("duplicate vertex `{v}`")));
        }
    }
    for (i, a) in spec.arrows.iter().enumerate() {
        for (key, v) in [("from", &a.from), ("to", &a.to)] {
            if !spec.vertices.contains(v) {
                return Err(err(format!("quiver.arrows[{i}].{key}"), format!("unknown vertex `{v}`")));
            }
        }
        if spec.arrows[..i].iter().any(|b| b.name == a.name) {
            return Err(err(format!("quiver.arrows[{i}].name"), format!("duplicate arrow `{}`", a.name)));
        }
    }
    let vertices: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> =
        spec.arrows.iter().map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str())).collect();
    Quiver::new(&vertices, &arrows).map_err(|e| err("quiver", e))
}

fn lin_comb<F: Field>(field: &F, q: &Quiver, terms: &[Term], at: &str) -> Result<LinComb<F>, ProjectError> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let c = field.parse(&t.coeff).map_err(|e| err(format!("{here}.coeff"), e))?;
        let path = if t.path.is_empty() {
            let v = t.vertex.as_ref().ok_or_else(|| err(format!("{here}.vertex"), "an empty path needs a vertex"))?;
            Path::trivial(q.vertex_index(v).ok_or_else(|| err(format!("{here}.vertex"), format!("unknown vertex `{v}`")))?)
        } else {
            let mut arrows: Vec<usize> = Vec::with_capacity(t.path.len());
            for (k, name) in t.path.iter().enumerate() {
                let a = q.arrow_index(name).ok_or_else(|| err(format!("{here}.path[{k}]"), format!("unknown arrow `{name}`")))?;
                if let Some(&prev) = arrows.last() {
                    if q.arrows[prev].to != q.arrows[a].from {
                        return Err(err(format!("{here}.path[{k}]"), format!("arrow `{name}` does not compose")));
                    }
                }
                arrows.push(a);
            }
            let start = q.arrows[arrows[0]].from;
            if let Some(v) = &t.vertex {
                if q.vertex_index(v) != Some(start) {
                    return Err(err(format!("{here}.vertex"), "vertex does not match the start of the path"));
                }
            }
            Path { start, arrows }
        };
        out.push((c, path));
    }
    Ok(out)
}

fn build_module<F: Field>(
    algebra: &Arc<FiniteDimAlgebra<F>>,
    q: &Quiver,
    spec: &ModuleSpec,
    at: &str,
) -> Result<FdModule<F>, ProjectError> {
    let f = algebra.field();
    let mut dims = vec![0; q.vertices.len()];
    for (v, &d) in &spec.dims {
        let i = q.vertex_index(v).ok_or_else(|| err(format!("{at}.dims.{v}"), format!("unknown vertex `{v}`")))?;
        dims[i] = d;
    }
    for name in spec.arrows.keys() {
        if q.arrow_index(name).is_none() {
            return Err(err(format!("{at}.arrows.{name}"), format!("unknown arrow `{name}`")));
        }
    }
    let mut maps = Vec::with_capacity(q.arrows.len());
    for a in &q.arrows {
        let (r, c) = (dims[a.to], dims[a.from]);
        let here = format!("{at}.arrows.{}", a.name);
        let m = match spec.arrows.get(&a.name) {
            None => Matrix::zeros(f, r, c),
            Some(rows) => {
                // A 0 x c matrix is written [] and an r x 0 one as r empty rows.
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(err(here, format!("expected a {r}x{c} matrix")));
                }
                let mut parsed = Vec::with_capacity(r);
                for (i, row) in rows.iter().enumerate() {
                    let vals: Result<Vec<_>, _> = row
                        .iter()
                        .enumerate()
                        .map(|(j, s)| f.parse(s).map_err(|e| err(format!("{here}[{i}][{j}]"), e)))
                        .collect();
                    parsed.push(vals?);
                }
                Matrix::from_rows(f, parsed, c).map_err(|e| err(here.clone(), e))?
            }
        };
        maps.push(m);
    }
    FdModule::from_representation(algebra.clone(), &dims, &maps).map_err(|e| err(at, e))
}

fn projective_vertex(q: &Quiver, label: &str, at: String) -> Result<usize, ProjectError> {
    label
        .strip_prefix('P')
        .and_then(|v| q.vertex_index(v))
        .ok_or_else(|| err(at, format!("`{label}` is not P<vertex>")))
}

fn build_complex<F: Field>(
    algebra: &Arc<FiniteDimAlgebra<F>>,
    q: &Quiver,
    spec: &ComplexSpec,
    at: &str,
) -> Result<TwoTermComplex<F>, ProjectError> {
    let f = algebra.field();
    let paths = algebra.paths().expect("project algebras are path algebras");
    let pm1 = spec.pm1.iter().enumerate().map(|(i, l)| projective_vertex(q, l, format!("{at}.pm1[{i}]"))).collect::<Result<Vec<_>, _>>()?;
    let p0 = spec.p0.iter().enumerate().map(|(i, l)| projective_vertex(q, l, format!("{at}.p0[{i}]"))).collect::<Result<Vec<_>, _>>()?;
    let sigma_rows = if pm1.is_empty() { p0.len() } else { spec.sigma.len() };
    if sigma_rows != p0.len() || spec.sigma.iter().any(|r| r.len() != pm1.len()) {
        return Err(err(format!("{at}.sigma"), format!("expected {} rows of {} entries", p0.len(), pm1.len())));
    }
    let mut entries = Vec::with_capacity(p0.len());
    for i in 0..p0.len() {
        let mut row = Vec::with_capacity(pm1.len());
        for j in 0..pm1.len() {
            let here = format!("{at}.sigma[{i}][{j}]");
            let comb = lin_comb(f, q, &spec.sigma[i][j], &here)?;
            row.push(paths.element(f, &comb));
        }
        entries.push(row);
    }
    TwoTermComplex::from_projectives(algebra, &pm1, &p0, &entries).map_err(|e| err(format!("{at}.sigma"), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    const A2: &str = r#"{
        "field": {"type": "Fp", "p": 2},
        "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]},
        "modules": {"S2": {"dims": {"2": 1}}, "P1": {"dims": {"1": 1, "2": 1}, "arrows": {"a": [["1"]]}}},
        "complexes": {
            "pbar": {"pm1": ["P2", "P2"], "p0": ["P1"], "sigma": [[[{"coeff": "1", "path": ["a"]}], []]]}
        }
    }"#;

    #[test]
    fn loads_the_two_vertex_example() {
        let file = ProjectFile::from_json(A2).unwrap();
        let p = Project::build(&file, PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(p.algebra.dim(), 3);
        let c = p.complex("pbar").unwrap();
        assert_eq!((c.m1.dim(), c.m0.dim()), (2, 2));
        assert_eq!(p.module("P1").unwrap().dim_vector(), vec![1, 1]);
    }

    #[test]
    fn errors_name_the_json_path() {
        let bad = A2.replace(r#""to": "2""#, r#""to": "3""#);
        let e = Project::build(&ProjectFile::from_json(&bad).unwrap(), PrimeField::new(2).unwrap()).unwrap_err();
        assert_eq!(e.path, "quiver.arrows[0].to");
        let e = ProjectFile::from_json(&A2.replace(r#""p": 2"#, r#""p": "two""#)).unwrap_err();
        assert_eq!(e.path, "field.p");
        let bad = A2.replace(r#"[["1"]]"#, r#"[["1", "0"]]"#);
        let e = Project::build(&ProjectFile::from_json(&bad).unwrap(), PrimeField::new(2).unwrap()).unwrap_err();
        assert_eq!(e.path, "modules.P1.arrows.a");
        let bad = A2.replace(r#""P2", "P2""#, r#""P2", "P7""#);
        let e = Project::build(&ProjectFile::from_json(&bad).unwrap(), PrimeField::new(2).unwrap()).unwrap_err();
        assert_eq!(e.path, "complexes.pbar.pm1[1]");
    }

    #[test]
    fn infinite_dimensional_algebras_are_rejected() {
        let loop_q = r#"{"field": {"type": "Q"}, "quiver": {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]}}"#;
        let e = Project::build(&ProjectFile::from_json(loop_q).unwrap(), crate::linalg::Rationals).unwrap_err();
        assert_eq!(e.path, "relations");
    }
}
