//! Acceptance run on the A2 reference instance over F_2. Every dimension
//! that the library computes by linear algebra is recomputed here by
//! enumerating all matrices over F_2, without the library's solver.
//! Prints one line per criterion and exits nonzero if any fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use silting_core::algebra::{
    algebra_isomorphism, enumerate_modules, enumerate_submodules, ext1_dim, hom_space, is_isomorphic, path_algebra,
    EnumConfig, FdModule, FiniteDimAlgebra, IsoConfig, ModuleMap, Quiver,
};
use silting_core::complex::{is_presilting, silting_certificate, TwoTermComplex};
use silting_core::dg::{compare, TruncatedDg};
use silting_core::endo::{endo_algebra, Functors};
use silting_core::heart::{generate_complexes, in_heart, roundtrip_heart};
use silting_core::linalg::{Matrix, PrimeField};
use silting_core::torsion::TorsionPair;

type Fp = PrimeField;
type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&Instance) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---- brute force over F_2 ----

/// Dense 0/1 matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Bits {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Bits {
    fn of(m: &Matrix<Fp>) -> Self {
        let data = (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| *m.get(i, j) as u8).collect();
        Bits { rows: m.rows(), cols: m.cols(), data }
    }

    fn mul(&self, o: &Bits) -> Bits {
        assert_eq!(self.cols, o.rows);
        let mut data = vec![0u8; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i * self.cols + k] == 1 {
                    for j in 0..o.cols {
                        data[i * o.cols + j] ^= o.data[k * o.cols + j];
                    }
                }
            }
        }
        Bits { rows: self.rows, cols: o.cols, data }
    }

    fn add(&self, o: &Bits) -> Bits {
        Bits { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a ^ b).collect() }
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn columns(&self) -> Vec<u64> {
        (0..self.cols).map(|j| (0..self.rows).fold(0u64, |acc, i| acc | (self.data[i * self.cols + j] as u64) << i)).collect()
    }
}

/// Rank over F_2 of bit-packed vectors.
fn rank2(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

fn log2_count(n: usize) -> usize {
    assert!(n.is_power_of_two(), "{n} points do not form an F_2-space");
    n.trailing_zeros() as usize
}

/// Every `dim N x dim M` matrix over F_2 intertwining the two actions.
fn homs(m: &FdModule<Fp>, n: &FdModule<Fp>) -> Vec<Bits> {
    let (dm, dn) = (m.dim(), n.dim());
    let bits = dm * dn;
    assert!(bits <= 20, "brute force over 2^{bits} matrices");
    let am: Vec<Bits> = m.action().iter().map(Bits::of).collect();
    let an: Vec<Bits> = n.action().iter().map(Bits::of).collect();
    (0u64..1 << bits)
        .map(|x| Bits { rows: dn, cols: dm, data: (0..bits).map(|i| (x >> i & 1) as u8).collect() })
        .filter(|f| am.iter().zip(&an).all(|(a, b)| f.mul(a) == b.mul(f)))
        .collect()
}

fn distinct(it: impl IntoIterator<Item = Bits>) -> usize {
    it.into_iter().collect::<HashSet<_>>().len()
}

/// `dim Hom_K(P, A[1]) = dim Hom(P^-1, A) - dim {h σ}`.
fn shifted_regular_dim(p: &TwoTermComplex<Fp>, a: &FdModule<Fp>) -> usize {
    let sigma = Bits::of(&p.d);
    let z = homs(&p.m1, a).len();
    let b = distinct(homs(&p.m0, a).iter().map(|h| h.mul(&sigma)));
    log2_count(z) - log2_count(b)
}

/// Every map `P^-1 -> P^0` has the form `a σ + σ b`.
fn rigid(p: &TwoTermComplex<Fp>) -> bool {
    let sigma = Bits::of(&p.d);
    let all = homs(&p.m1, &p.m0).len();
    let e0 = homs(&p.m0, &p.m0);
    let e1 = homs(&p.m1, &p.m1);
    let reached = distinct(e0.iter().flat_map(|a| e1.iter().map(|b| a.mul(&sigma).add(&sigma.mul(b)))).collect::<Vec<_>>());
    reached == all
}

/// `(dim End_K(P), dim ker(End_K(P) -> End(H^0 P)))`.
fn endo_dims(p: &TwoTermComplex<Fp>) -> (usize, usize) {
    let sigma = Bits::of(&p.d);
    let image: HashSet<u64> = sigma_span(&sigma);
    let mut z = 0;
    let mut zker = 0;
    for f1 in homs(&p.m1, &p.m1) {
        for f0 in homs(&p.m0, &p.m0) {
            if sigma.mul(&f1) == f0.mul(&sigma) {
                z += 1;
                if f0.columns().iter().all(|c| image.contains(c)) {
                    zker += 1;
                }
            }
        }
    }
    let b = distinct(homs(&p.m0, &p.m1).iter().map(|h| {
        let mut both = h.mul(&sigma).data;
        both.extend(sigma.mul(h).data);
        Bits { rows: 1, cols: both.len(), data: both }
    }));
    (log2_count(z) - log2_count(b), log2_count(zker) - log2_count(b))
}

fn sigma_span(sigma: &Bits) -> HashSet<u64> {
    let cols = sigma.columns();
    (0u64..1 << cols.len())
        .map(|x| cols.iter().enumerate().filter(|(i, _)| x >> i & 1 == 1).fold(0, |acc, (_, c)| acc ^ c))
        .collect()
}

/// `dim coker Hom(σ, M)`.
fn defect_dim(p: &TwoTermComplex<Fp>, m: &FdModule<Fp>) -> usize {
    let sigma = Bits::of(&p.d);
    let all = homs(&p.m1, m).len();
    let image = distinct(homs(&p.m0, m).iter().map(|g| g.mul(&sigma)));
    log2_count(all) - log2_count(image)
}

/// `M` is the sum of the images of all maps `T -> M`.
fn generated_by(t: &FdModule<Fp>, m: &FdModule<Fp>) -> bool {
    rank2(homs(t, m).iter().flat_map(|f| f.columns())) == m.dim()
}

fn hom_dim(m: &FdModule<Fp>, n: &FdModule<Fp>) -> usize {
    log2_count(homs(m, n).len())
}

/// Modules of dimension at most `cap` over A2: multisets of the three
/// indecomposables, of dimensions 1, 1 and 2.
fn a2_inventory_size(cap: usize) -> usize {
    let mut n = 0;
    for s1 in 0..=cap {
        for s2 in 0..=cap - s1 {
            n += (cap - s1 - s2) / 2 + 1;
        }
    }
    n
}

// ---- reference instance ----

struct Instance {
    a: Arc<FiniteDimAlgebra<Fp>>,
    pbar: TwoTermComplex<Fp>,
    single: TwoTermComplex<Fp>,
    inv_r: Vec<FdModule<Fp>>,
    fun: Functors<Fp>,
    tp: TorsionPair<Fp>,
    inv_e: Vec<FdModule<Fp>>,
    dg: TruncatedDg<Fp>,
}

fn instance() -> Instance {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
    let a = Arc::new(path_algebra(&q, &[], &PrimeField::new(2).unwrap()).unwrap());
    let arrow = a.basis_element(2);
    let pbar = TwoTermComplex::from_projectives(&a, &[1, 1], &[0], &[vec![arrow.clone(), vec![0; 3]]]).unwrap();
    let single = TwoTermComplex::from_projectives(&a, &[1], &[0], &[vec![arrow]]).unwrap();
    let inv_r = enumerate_modules(&a, &EnumConfig::with_max_dim(3)).unwrap();
    let fun = Functors::new(&pbar).unwrap();
    let tp = TorsionPair::new(&pbar).unwrap();
    let inv_e = enumerate_modules(&fun.endo.algebra, &EnumConfig::with_max_dim(3)).unwrap();
    let dg = TruncatedDg::build(&fun).unwrap();
    Instance { a, pbar, single, inv_r, fun, tp, inv_e, dg }
}

fn simple(a: &Arc<FiniteDimAlgebra<Fp>>, v: usize) -> FdModule<Fp> {
    let dims = if v == 0 { [1, 0] } else { [0, 1] };
    FdModule::from_representation(a.clone(), &dims, &[Matrix::zeros(a.field(), dims[1], dims[0])]).unwrap()
}

// ---- criteria ----

fn silting_certification(x: &Instance) -> Outcome {
    let regular = FdModule::regular(x.a.clone());
    ensure!(rigid(&x.pbar) && ok(is_presilting(&x.pbar))?, "P-bar should be presilting");
    let d = shifted_regular_dim(&x.pbar, &regular);
    ensure!(d == 3, "brute force gives dim Hom_K(P, A[1]) = {d}");
    let cert = ok(silting_certificate(&x.pbar))?.ok_or("P-bar has no certificate")?;
    ensure!(cert.d == d, "certificate d = {}, brute force {d}", cert.d);

    ensure!(rigid(&x.single) && ok(is_presilting(&x.single))?, "single summand should be presilting");
    ensure!(ok(silting_certificate(&x.single))?.is_none(), "single summand should not be silting");
    let tp = TorsionPair::with_certification(&x.single, false);
    let rep = ok(tp.verify_silting_equality(&x.inv_r))?;
    ensure!(!rep.holds(), "no counterexample for the single summand");
    let (t, _) = x.single.h0();
    for c in &rep.counterexamples {
        let m = &x.inv_r[c.index];
        let gen = generated_by(&t, m);
        let in_d = defect_dim(&x.single, m) == 0;
        ensure!(gen != in_d && gen == c.in_gen, "reported counterexample {:?} is not one", c.dim_vector);
    }
    let p1 = ok(FdModule::projective(x.a.clone(), 0))?;
    ensure!(
        rep.counterexamples.iter().any(|c| ok(is_isomorphic(&x.inv_r[c.index], &p1, &IsoConfig::default())).ok().flatten().is_some()),
        "P(1) is not among the counterexamples"
    );
    Ok(())
}

fn endomorphism_data(x: &Instance) -> Outcome {
    let (dim, ker) = endo_dims(&x.pbar);
    ensure!((dim, ker) == (3, 2), "brute force gives dim E = {dim}, dim ker ε = {ker}");
    let e = &x.fun.endo.algebra;
    ensure!(e.dim() == dim, "library dim E = {}", e.dim());
    let eps = ok(x.fun.epsilon())?;
    ensure!(eps.kernel_dim() == ker && eps.rank == eps.end_t_dim && eps.end_t_dim == 1, "ε: {:?}", (eps.rank, eps.end_t_dim));
    ensure!(ok(algebra_isomorphism(e, &x.a, 1 << 16))?.is_some(), "E(P-bar) is not isomorphic to kA2");
    let control = ok(endo_algebra(&TwoTermComplex::regular_stalk(&x.a)))?;
    ensure!(ok(algebra_isomorphism(&control.algebra, &x.a, 1 << 16))?.is_some(), "E(stalk A) is not isomorphic to A");
    Ok(())
}

fn torsion_pair(x: &Instance) -> Outcome {
    ensure!(x.inv_r.len() == a2_inventory_size(3), "inventory has {} modules", x.inv_r.len());
    let (t, _) = x.pbar.h0();
    let s1 = simple(&x.a, 0);
    for m in &x.inv_r {
        let supported_at_1 = m.dim_vector()[1] == 0;
        let hom_free = hom_dim(&s1, m) == 0;
        ensure!(ok(x.tp.in_t(m))? == supported_at_1, "T membership of {:?}", m.dim_vector());
        ensure!(ok(x.tp.in_f(m))? == hom_free, "F membership of {:?}", m.dim_vector());
        let gen = generated_by(&t, m);
        let in_d = defect_dim(&x.pbar, m) == 0;
        ensure!(gen == in_d && gen == supported_at_1, "Gen(T) vs D_σ at {:?}: {gen} {in_d}", m.dim_vector());
    }
    ensure!(ok(x.tp.verify_silting_equality(&x.inv_r))?.holds(), "library reports a counterexample");
    Ok(())
}

fn script_e(x: &Instance) -> Result<Vec<&FdModule<Fp>>, String> {
    let mut out = Vec::new();
    for z in &x.inv_e {
        if z.dim() > 0 && ok(x.fun.in_script_e(z))? {
            out.push(z);
        }
    }
    Ok(out)
}

fn torsion_side(x: &Instance) -> Outcome {
    let orth = script_e(x)?;
    let sigma = Bits::of(&x.pbar.d);
    let mut n = 0;
    for m in x.inv_r.iter().filter(|m| m.dim_vector()[1] == 0) {
        let y = ok(x.fun.h_p(m, 0))?.module;
        let killing = homs(&x.pbar.m0, m).iter().filter(|f| f.mul(&sigma).is_zero()).count();
        ensure!(y.dim() == log2_count(killing), "dim H_P({:?}, 0) = {}", m.dim_vector(), y.dim());
        ensure!(ok(x.fun.phi(m))?.matrix.is_invertible(), "φ not invertible at {:?}", m.dim_vector());
        ensure!(ok(x.fun.psi(&y))?.matrix.is_invertible(), "ψ not invertible on H_P({:?}, 0)", m.dim_vector());
        ensure!(ok(x.fun.in_v(&y, &EnumConfig::with_max_dim(3)))?, "H_P({:?}, 0) not in V", m.dim_vector());
        for z in &orth {
            ensure!(ok(hom_space(z, &y))?.is_empty() && ok(ext1_dim(z, &y))? == 0, "not orthogonal to script-E");
        }
        n += 1;
    }
    ensure!(n == 4, "expected 4 torsion modules, saw {n}");
    Ok(())
}

fn free_side(x: &Instance) -> Outcome {
    let free: Vec<_> = x.inv_r.iter().filter(|m| ok(x.tp.in_f(m)).unwrap_or(false)).collect();
    let mut zetas = Vec::new();
    for fm in &free {
        let z = ok(x.fun.zeta(fm))?;
        ensure!(z.is_isomorphism() && z.kt.dim() == fm.dim(), "ζ at {:?}: K_T dim {}", fm.dim_vector(), z.kt.dim());
        zetas.push(z);
    }
    let table = [(simple(&x.a, 1), 2, 1), (ok(FdModule::projective(x.a.clone(), 0))?, 1, 2)];
    for (m, def, kt) in &table {
        let d = defect_dim(&x.pbar, m);
        let k = ok(x.fun.zeta(m))?.kt.dim();
        ensure!((d, k) == (*def, *kt), "{:?}: Def {d}, K_T {k}", m.dim_vector());
        ensure!(ok(x.fun.h_p(m, 1))?.module.dim() == d, "H_P({:?}, 1) differs from the defect", m.dim_vector());
    }
    let mut squares = 0;
    for (i, a) in free.iter().enumerate() {
        for (j, b) in free.iter().enumerate() {
            let basis = ok(hom_space(a, b))?;
            ensure!(basis.len() == hom_dim(a, b), "Hom({:?}, {:?})", a.dim_vector(), b.dim_vector());
            for g in basis {
                let map = ok(ModuleMap::new((*a).clone(), (*b).clone(), g))?;
                ensure!(ok(x.fun.zeta_is_natural(&map, &zetas[i], &zetas[j]))?, "naturality fails {i} -> {j}");
                squares += 1;
            }
        }
    }
    ensure!(squares > 0, "no morphisms between F-modules");
    Ok(())
}

fn defect_laws(x: &Instance) -> Outcome {
    for m in &x.inv_r {
        ensure!(ok(x.fun.kt_linear(&ok(x.fun.h_p(m, 0))?.module))?.dim() == 0, "K_T H_P({:?}, 0) ≠ 0", m.dim_vector());
        ensure!(ok(x.fun.t_p(&ok(x.fun.h_p(m, 1))?.module))?.0.dim() == 0, "T_P H_P({:?}, 1) ≠ 0", m.dim_vector());
    }
    let mut sequences = 0;
    for y in &x.inv_e {
        for s in ok(enumerate_submodules(y, &EnumConfig::with_max_dim(3)))? {
            let (q, proj) = ok(y.quotient(&s.inclusion.columns()))?;
            let f = ok(ModuleMap::new(s.module.clone(), y.clone(), s.inclusion.clone()))?;
            let g = ok(ModuleMap::new(y.clone(), q, proj))?;
            let r = ok(x.fun.six_term(&f, &g))?;
            let (d, k) = (r.dims, r.ranks);
            let exact = k[0] == d[0] && (1..5).all(|i| d[i] == k[i - 1] + k[i]) && k[4] == d[5];
            ensure!(exact && r.exact, "six-term sequence {:?} with ranks {:?}", d, k);
            sequences += 1;
        }
        let t = ok(x.fun.tor1(y))?;
        ensure!(t.epi_rank == t.tor_dim && t.free_route_dim == t.tor_dim, "K_T -> Tor_1 not onto: {t:?}");
    }
    ensure!(sequences >= x.inv_e.len(), "only {sequences} short exact sequences");
    let control = ok(Functors::new(&TwoTermComplex::regular_stalk(&x.a)))?;
    for y in ok(enumerate_modules(&control.endo.algebra, &EnumConfig::with_max_dim(3)))? {
        let t = ok(control.tor1(&y))?;
        ensure!(t.kt_dim == t.tor_dim && t.epi_rank == t.tor_dim, "control: K_T ≠ Tor_1 on {:?}", y.dim_vector());
    }
    Ok(())
}

fn dg_consistency(x: &Instance) -> Outcome {
    let iso = IsoConfig::default();
    for y in &x.inv_e {
        let t = ok(x.dg.tensor(&x.fun, y))?;
        let (tp, _) = ok(x.fun.t_p(y))?;
        ensure!(ok(is_isomorphic(&t.h0, &tp, &iso))?.is_some(), "H^0 ≇ T_P at {:?}", y.dim_vector());
        let kt = ok(x.fun.kt_linear(y))?.dim();
        ensure!(t.h_minus1.dim() == kt, "dim H^-1 = {} but K_T has dim {kt}", t.h_minus1.dim());
        ensure!(t.is_acyclic() == ok(x.fun.in_script_e(y))?, "acyclicity vs script-E at {:?}", y.dim_vector());
        let c = ok(compare(&x.fun, &x.dg, y, &iso))?;
        ensure!(c.lifted_action_matches != Some(false), "lifted action on K_T disagrees at {:?}", y.dim_vector());
    }
    Ok(())
}

fn heart_and_compactness(x: &Instance) -> Outcome {
    let small: Vec<_> = x.inv_r.iter().filter(|m| m.dim() <= 2).cloned().collect();
    let complexes = ok(generate_complexes(&small, 60))?;
    ensure!(complexes.len() >= 50, "only {} test complexes", complexes.len());
    let s1 = simple(&x.a, 0);
    let mut inside = 0;
    for c in &complexes {
        let (ker, _) = c.h_minus1();
        let (coker, _) = c.h0();
        let expected = hom_dim(&s1, &ker) == 0 && coker.dim_vector()[1] == 0;
        let got = ok(in_heart(&x.tp, c))?;
        ensure!(got == expected, "heart membership of {:?} -> {:?}", c.m1.dim_vector(), c.m0.dim_vector());
        if got {
            let r = ok(roundtrip_heart(&x.tp, &x.fun, &x.dg, c, &IsoConfig::default()))?;
            ensure!(r.holds(), "round trip fails: {r:?}");
            inside += 1;
        }
    }
    ensure!(inside > 0 && inside < complexes.len(), "{inside} of {} complexes in the heart", complexes.len());
    for y in x.inv_e.iter().filter(|y| y.dim() > 0) {
        let acyclic = ok(x.dg.tensor(&x.fun, y))?.is_acyclic();
        let kt = ok(x.fun.kt_linear(y))?.dim();
        let tp = ok(x.fun.t_p(y))?.0.dim();
        ensure!(!(acyclic && kt == 0 && tp == 0), "nonzero {:?} is killed by every functor", y.dim_vector());
    }
    ensure!(script_e(x)?.is_empty(), "script-E has nonzero members");
    Ok(())
}

fn main() {
    let start = Instant::now();
    let x = instance();
    let criteria: [Criterion; 8] = [
        ("silting certification", silting_certification),
        ("endomorphism data", endomorphism_data),
        ("torsion pair", torsion_pair),
        ("equivalence on the torsion class", torsion_side),
        ("equivalence on the torsion-free class", free_side),
        ("defect functor laws", defect_laws),
        ("dg consistency", dg_consistency),
        ("heart and compactness", heart_and_compactness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| check(&x))).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = t.elapsed().as_millis();
        match result {
            Ok(()) => println!("criterion {} {name}: PASS ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({ms} ms): {e}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance: {} passed, {failed} failed in {:.1}s", criteria.len() - failed, total.as_secs_f64());
    if failed > 0 || total.as_secs() >= 60 {
        std::process::exit(1);
    }
}
