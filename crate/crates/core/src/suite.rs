//! Runs every property check over the module inventories and collects the
//! outcomes into a JSON-serializable report.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    enumerate_modules, enumerate_submodules, ext1_dim, hom_space, is_isomorphic, EnumConfig, FdModule, IsoConfig,
    ModuleMap,
};
use crate::complex::TwoTermComplex;
use crate::dg::{compare, TruncatedDg};
use crate::endo::Functors;
use crate::error::{Error, Result};
use crate::heart::{generate_complexes, in_heart, roundtrip_heart};
use crate::linalg::{span_rank, Field, Matrix};
use crate::torsion::{defect, TorsionPair};

/// Check names in report order, with the statement each one tests.
pub const CHECKS: &[(&str, &str)] = &[
    ("silting_equality", "Gen(T) equals the modules with vanishing defect"),
    ("torsion_closure", "torsion decomposition lands in T and F; T closed under quotients, F under submodules"),
    ("basic_hom_def", "H_P(M,0) = Hom(T,M) and H_P(M,1) = Def(M)"),
    ("lemma_gen", "T_P(X) lies in T, T_P(psi_X) is invertible and H_P(T_P(X),1) = 0"),
    ("phi_mono", "evaluation T_P H_P(M) -> M is monic"),
    ("psi_triangular", "unit X -> H_P T_P(X) satisfies the triangular identity"),
    ("kthpm", "K_T vanishes on H_P(M,0)"),
    ("equiv_factor", "T_P vanishes on H_P(M,1)"),
    ("equiv_T", "counter-equivalence on T: phi and psi invertible, images in V and orthogonal to script-E"),
    ("teor_for_F", "zeta: K_T H_P(F,1) -> F is a natural isomorphism on F"),
    ("F_U_bijection", "F -> U by H_P(-,1) and U -> F by K_T are mutually inverse"),
    ("T_V_bijection", "T -> V by H_P(-,0) and V -> T by T_P are mutually inverse"),
    ("six_term", "six-term sequence of T_P and K_T is exact"),
    ("tor_epi", "K_T maps onto Tor_1(-, T), bijectively when beta* is injective"),
    ("yotimesb", "cohomology of Y tensored with P over the dg endomorphism algebra is K_T(Y), T_P(Y)"),
    ("kt_lifting", "R-action on K_T lifted through the triangle agrees with the dg model"),
    ("tensor_hom", "Hom_K(P,X) tensored with Hom_K(Q,P) is Hom_K(Q,X) for Q in add P"),
    ("envelope", "maps from R into T-modules factor through R -> H^0(Q1)"),
    ("heart_criterion", "ker in F and coker in T iff the Hom complex is concentrated in degree 0"),
    ("heart_roundtrip", "Hom_K(P,-) followed by the derived tensor recovers kernel and cokernel"),
    ("compact_corollary", "no nonzero E-module is killed by the derived tensor"),
    ("beta_star", "Hom_K(Q2,P) -> Hom_K(Q1,P) -> T -> 0 is an exact sequence of E-modules"),
    ("epsilon", "H^0 maps E onto End(T)"),
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_dim_r: usize,
    pub max_dim_e: usize,
    /// Run only these checks; `None` runs all.
    pub checks: Option<Vec<String>>,
    /// Number of generated complexes for the heart checks.
    pub heart_limit: usize,
    pub iso: IsoConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_dim_r: 3, max_dim_e: 3, checks: None, heart_limit: 60, iso: IsoConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_ref: String,
    pub status: Status,
    pub instances: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Value>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub complex: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Dimension vector and action matrices of a module, enough to rebuild it.
pub fn module_witness<F: Field>(m: &FdModule<F>) -> Value {
    json!({ "dims": m.dim_vector(), "action": m.action().iter().map(|a| matrix_json(a)).collect::<Vec<_>>() })
}

pub fn matrix_json<F: Field>(a: &Matrix<F>) -> Value {
    let f = a.field();
    Value::Array((0..a.rows()).map(|i| json!(a.row(i).iter().map(|x| f.format(x)).collect::<Vec<_>>())).collect())
}

#[derive(Default)]
struct Outcome {
    instances: usize,
    failures: Vec<Failure>,
    table: Vec<Value>,
}

impl Outcome {
    fn record(&mut self, ok: bool, instance: impl FnOnce() -> String, detail: &str, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.failures.push(Failure { instance: instance(), detail: detail.into(), witness: witness() });
        }
    }

    /// Counts an instance whose computation raised an error as a failure.
    fn guard(&mut self, instance: impl Fn() -> String, witness: impl Fn() -> Value, body: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = body(self) {
            self.instances += 1;
            self.failures.push(Failure { instance: instance(), detail: e.to_string(), witness: witness() });
        }
    }
}

struct Ctx<F: Field> {
    tp: TorsionPair<F>,
    fun: Functors<F>,
    inv_r: Vec<FdModule<F>>,
    inv_e: Vec<FdModule<F>>,
    dg: Option<TruncatedDg<F>>,
    enum_e: EnumConfig,
    cfg: SuiteConfig,
}

impl<F: Field> Ctx<F> {
    fn torsion_modules(&self) -> Result<Vec<&FdModule<F>>> {
        let mut out = Vec::new();
        for m in &self.inv_r {
            if self.tp.in_t(m)? {
                out.push(m);
            }
        }
        Ok(out)
    }

    fn free_modules(&self) -> Result<Vec<&FdModule<F>>> {
        let mut out = Vec::new();
        for m in &self.inv_r {
            if self.tp.in_f(m)? {
                out.push(m);
            }
        }
        Ok(out)
    }

    fn dg(&self) -> Result<&TruncatedDg<F>> {
        self.dg.as_ref().ok_or_else(|| Error::Precondition("dg endomorphism algebra unavailable".into()))
    }
}

fn label<F: Field>(kind: &str, i: usize, m: &FdModule<F>) -> String {
    format!("{kind}[{i}] dims {:?}", m.dim_vector())
}

/// Runs the selected checks. Without a silting certificate only
/// `silting_equality` runs; everything else is reported as skipped.
pub fn run_suite<F: Field>(p: &TwoTermComplex<F>, algebra: &str, complex: &str, cfg: &SuiteConfig) -> Result<VerificationReport> {
    for name in cfg.checks.iter().flatten() {
        if !CHECKS.iter().any(|(n, _)| n == name) {
            return Err(Error::Precondition(format!("unknown check `{name}`")));
        }
    }
    let selected = |name: &str| cfg.checks.as_ref().is_none_or(|c| c.iter().any(|n| n == name));
    let mut records: Vec<CheckRecord> = Vec::new();
    let skip_all = |records: &mut Vec<CheckRecord>, reason: &str, from: usize| {
        for (name, reference) in &CHECKS[from..] {
            if selected(name) {
                records.push(skipped(name, reference, reason));
            }
        }
    };
    let finite = p.field().is_finite();
    let enum_r = EnumConfig { max_dim: cfg.max_dim_r, iso: cfg.iso, ..EnumConfig::default() };
    let inv_r = if finite { enumerate_modules(p.algebra(), &enum_r)? } else { Vec::new() };
    let presilting = p.is_projective() && crate::complex::is_presilting(p)?;
    let fun = if presilting { Some(Functors::new(p)?) } else { None };
    let certified = fun.as_ref().is_some_and(|f| f.cert.is_some());
    let tp = TorsionPair::with_certification(p, certified);

    let (first, first_ref) = CHECKS[0];
    if selected(first) {
        if finite {
            let mut out = Outcome::default();
            let rep = tp.verify_silting_equality(&inv_r)?;
            out.instances = rep.checked;
            for c in &rep.counterexamples {
                out.failures.push(Failure {
                    instance: label("module", c.index, &inv_r[c.index]),
                    detail: format!("in Gen(T): {}, defect dimension {}", c.in_gen, c.defect_dim),
                    witness: module_witness(&inv_r[c.index]),
                });
            }
            records.push(finish(first, first_ref, out));
        } else {
            records.push(skipped(first, first_ref, "module enumeration needs a finite field"));
        }
    }
    let Some(fun) = fun.filter(|f| f.cert.is_some()) else {
        let reason = if presilting { "P is presilting but not silting" } else { "P is not presilting" };
        skip_all(&mut records, reason, 1);
        return Ok(report(algebra, complex, records));
    };
    if !finite {
        skip_all(&mut records, "module enumeration needs a finite field", 1);
        return Ok(report(algebra, complex, records));
    }
    let enum_e = EnumConfig { max_dim: cfg.max_dim_e, iso: cfg.iso, ..EnumConfig::default() };
    let inv_e = enumerate_modules(&fun.endo.algebra, &enum_e)?;
    let dg = TruncatedDg::build(&fun).ok();
    let ctx = Ctx { tp, fun, inv_r, inv_e, dg, enum_e, cfg: cfg.clone() };
    for (name, reference) in &CHECKS[1..] {
        if !selected(name) {
            continue;
        }
        let out = match *name {
            "torsion_closure" => torsion_closure(&ctx),
            "basic_hom_def" => basic_hom_def(&ctx),
            "lemma_gen" => lemma_gen(&ctx),
            "phi_mono" => phi_mono(&ctx),
            "psi_triangular" => psi_triangular(&ctx),
            "kthpm" => kthpm(&ctx),
            "equiv_factor" => equiv_factor(&ctx),
            "equiv_T" => equiv_t(&ctx),
            "teor_for_F" => teor_for_f(&ctx),
            "F_U_bijection" => f_u_bijection(&ctx),
            "T_V_bijection" => t_v_bijection(&ctx),
            "six_term" => six_term(&ctx),
            "tor_epi" => tor_epi(&ctx),
            "yotimesb" => yotimesb(&ctx, false),
            "kt_lifting" => yotimesb(&ctx, true),
            "tensor_hom" => tensor_hom(&ctx),
            "envelope" => envelope(&ctx),
            "heart_criterion" => heart(&ctx, false),
            "heart_roundtrip" => heart(&ctx, true),
            "compact_corollary" => compact_corollary(&ctx),
            "beta_star" => beta_star(&ctx),
            "epsilon" => epsilon(&ctx),
            _ => unreachable!("every check name is dispatched"),
        };
        records.push(match out {
            Ok(out) => finish(name, reference, out),
            Err(e @ (Error::CapExceeded(_) | Error::Undecided(_))) => skipped(name, reference, &e.to_string()),
            Err(e) => finish(name, reference, Outcome {
                instances: 1,
                failures: vec![Failure { instance: "setup".into(), detail: e.to_string(), witness: Value::Null }],
                table: Vec::new(),
            }),
        });
    }
    Ok(report(algebra, complex, records))
}

fn skipped(name: &str, reference: &str, reason: &str) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        paper_ref: reference.into(),
        status: Status::Skipped,
        instances: 0,
        failures: Vec::new(),
        skip_reason: Some(reason.into()),
        table: Vec::new(),
    }
}

fn finish(name: &str, reference: &str, out: Outcome) -> CheckRecord {
    let status = if out.failures.is_empty() { Status::Passed } else { Status::Failed };
    CheckRecord {
        name: name.into(),
        paper_ref: reference.into(),
        status,
        instances: out.instances,
        failures: out.failures,
        skip_reason: None,
        table: out.table,
    }
}

fn report(algebra: &str, complex: &str, checks: Vec<CheckRecord>) -> VerificationReport {
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Passed => summary.passed += 1,
            Status::Failed => summary.failed += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    VerificationReport { algebra: algebra.into(), complex: complex.into(), checks, summary }
}

fn torsion_closure<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, m) in ctx.inv_r.iter().enumerate() {
        out.guard(|| label("module", i, m), || module_witness(m), |out| {
            let dec = ctx.tp.decompose(m)?;
            let ok = ctx.tp.in_t(&dec.torsion)? && ctx.tp.in_f(&dec.free)?;
            out.record(ok, || label("module", i, m), "torsion part not in T or free part not in F", || module_witness(m));
            let in_t = ctx.tp.in_t(m)?;
            let in_f = ctx.tp.in_f(m)?;
            if !(in_t || in_f) {
                return Ok(());
            }
            for s in enumerate_submodules(m, &ctx.enum_e)? {
                let ok = if in_t {
                    let (q, _) = m.quotient(&s.inclusion.columns())?;
                    ctx.tp.in_t(&q)?
                } else {
                    ctx.tp.in_f(&s.module)?
                };
                out.record(ok, || label("module", i, m), "closure fails for a submodule", || module_witness(&s.module));
            }
            Ok(())
        });
    }
    Ok(out)
}

fn basic_hom_def<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, m) in ctx.inv_r.iter().enumerate() {
        out.guard(|| label("module", i, m), || module_witness(m), |out| {
            let h0 = ctx.fun.h_p(m, 0)?.module.dim();
            let h1 = ctx.fun.h_p(m, 1)?.module.dim();
            let hom_t = hom_space(&ctx.tp.t, m)?.len();
            let def = defect(ctx.fun.p(), m).dim();
            crate::complex::hom_d_module(ctx.fun.p(), m, 0)?;
            crate::complex::hom_d_module(ctx.fun.p(), m, 1)?;
            out.record(h0 == hom_t && h1 == def, || label("module", i, m), "dimension mismatch", || {
                json!({ "module": module_witness(m), "h_p0": h0, "hom_t": hom_t, "h_p1": h1, "defect": def })
            });
            Ok(())
        });
    }
    Ok(out)
}

fn lemma_gen<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let f = ctx.fun.field();
    for (i, x) in ctx.inv_e.iter().enumerate() {
        out.guard(|| label("E-module", i, x), || module_witness(x), |out| {
            let (tx, t) = ctx.fun.t_p(x)?;
            let psi = ctx.fun.psi(x)?;
            let (_, th) = ctx.fun.t_p(&psi.target)?;
            let tpsi = th.map(&t, &psi.matrix, &Matrix::identity(f, ctx.fun.t.module.dim()));
            let ok = ctx.tp.in_t(&tx)? && tpsi.is_invertible() && ctx.fun.h_p(&tx, 1)?.module.dim() == 0;
            out.record(ok, || label("E-module", i, x), "T_P(X) not in T or T_P(psi) not invertible", || module_witness(x));
            Ok(())
        });
    }
    Ok(out)
}

fn phi_mono<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, m) in ctx.inv_r.iter().enumerate() {
        out.guard(|| label("module", i, m), || module_witness(m), |out| {
            ctx.fun.phi(m)?;
            out.record(true, String::new, "", || Value::Null);
            Ok(())
        });
    }
    Ok(out)
}

fn psi_triangular<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, x) in ctx.inv_e.iter().enumerate() {
        out.guard(|| label("E-module", i, x), || module_witness(x), |out| {
            ctx.fun.psi(x)?;
            out.record(true, String::new, "", || Value::Null);
            Ok(())
        });
    }
    Ok(out)
}

fn kthpm<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, m) in ctx.inv_r.iter().enumerate() {
        out.guard(|| label("module", i, m), || module_witness(m), |out| {
            let k = ctx.fun.kt_linear(&ctx.fun.h_p(m, 0)?.module)?.dim();
            out.record(k == 0, || label("module", i, m), "K_T(H_P(M,0)) is nonzero", || module_witness(m));
            Ok(())
        });
    }
    Ok(out)
}

fn equiv_factor<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, m) in ctx.inv_r.iter().enumerate() {
        out.guard(|| label("module", i, m), || module_witness(m), |out| {
            let t = ctx.fun.t_p(&ctx.fun.h_p(m, 1)?.module)?.0.dim();
            out.record(t == 0, || label("module", i, m), "T_P(H_P(M,1)) is nonzero", || module_witness(m));
            Ok(())
        });
    }
    Ok(out)
}

fn equiv_t<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut script_e = Vec::new();
    for z in &ctx.inv_e {
        if z.dim() > 0 && ctx.fun.in_script_e(z)? {
            script_e.push(z);
        }
    }
    for (i, m) in ctx.torsion_modules()?.into_iter().enumerate() {
        out.guard(|| label("T-module", i, m), || module_witness(m), |out| {
            let phi = ctx.fun.phi(m)?;
            let x = ctx.fun.h_p(m, 0)?.module;
            let psi = ctx.fun.psi(&x)?;
            let mut ok = phi.matrix.is_invertible() && psi.matrix.is_invertible();
            ok &= ctx.fun.in_v(&x, &ctx.enum_e)?;
            for z in &script_e {
                ok &= hom_space(z, &x)?.is_empty() && ext1_dim(z, &x)? == 0;
            }
            out.record(ok, || label("T-module", i, m), "phi or psi not invertible, or image not in V / not orthogonal", || {
                module_witness(m)
            });
            Ok(())
        });
    }
    out.table.push(json!({ "script_e_members": script_e.len() }));
    Ok(out)
}

fn teor_for_f<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let free = ctx.free_modules()?;
    let mut zetas = Vec::with_capacity(free.len());
    for (i, fm) in free.iter().enumerate() {
        let z = ctx.fun.zeta(fm)?;
        let linear = z.kt_module.action().iter().zip(fm.action()).all(|(k, a)| z.matrix.mul(k) == a.mul(&z.matrix));
        out.record(z.is_isomorphism() && linear, || label("F-module", i, fm), "zeta is not an R-isomorphism", || {
            json!({ "module": module_witness(fm), "zeta": matrix_json(&z.matrix) })
        });
        zetas.push(z);
    }
    for (i, a) in free.iter().enumerate() {
        for (j, b) in free.iter().enumerate() {
            for g in hom_space(a, b)? {
                let map = ModuleMap::new((*a).clone(), (*b).clone(), g.clone())?;
                let ok = ctx.fun.zeta_is_natural(&map, &zetas[i], &zetas[j])?;
                out.record(ok, || format!("F-morphism {i} -> {j}"), "naturality square does not commute", || {
                    json!({ "source": module_witness(*a), "target": module_witness(*b), "map": matrix_json(&g) })
                });
            }
        }
    }
    Ok(out)
}

fn f_u_bijection<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut images = Vec::new();
    for (i, fm) in ctx.free_modules()?.into_iter().enumerate() {
        let y = ctx.fun.h_p(fm, 1)?.module;
        let z = ctx.fun.zeta(fm)?;
        let back = is_isomorphic(&z.kt_module, fm, &ctx.cfg.iso)?.is_some();
        let again = ctx.fun.h_p(&z.kt_module, 1)?.module;
        let ok = ctx.fun.in_u(&y)? && back && is_isomorphic(&again, &y, &ctx.cfg.iso)?.is_some();
        out.record(ok, || label("F-module", i, fm), "H_P(-,1) and K_T are not mutually inverse", || module_witness(fm));
        out.table.push(json!({ "module": fm.dim_vector(), "h_p1_dim": y.dim(), "kt_dim": z.kt.dim() }));
        images.push(y);
    }
    distinct_images(&mut out, &images, &ctx.cfg.iso)?;
    Ok(out)
}

fn t_v_bijection<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut images = Vec::new();
    for (i, m) in ctx.torsion_modules()?.into_iter().enumerate() {
        let y = ctx.fun.h_p(m, 0)?.module;
        let (ty, _) = ctx.fun.t_p(&y)?;
        let back = is_isomorphic(&ty, m, &ctx.cfg.iso)?.is_some();
        let again = ctx.fun.h_p(&ty, 0)?.module;
        let ok = back && is_isomorphic(&again, &y, &ctx.cfg.iso)?.is_some();
        out.record(ok, || label("T-module", i, m), "H_P(-,0) and T_P are not mutually inverse", || module_witness(m));
        out.table.push(json!({ "module": m.dim_vector(), "h_p0_dim": y.dim() }));
        images.push(y);
    }
    distinct_images(&mut out, &images, &ctx.cfg.iso)?;
    Ok(out)
}

/// Non-isomorphic inventory members must have non-isomorphic images.
fn distinct_images<F: Field>(out: &mut Outcome, images: &[FdModule<F>], iso: &IsoConfig) -> Result<()> {
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let clash = is_isomorphic(&images[i], &images[j], iso)?.is_some();
            out.record(!clash, || format!("images {i} and {j}"), "distinct modules have isomorphic images", || {
                json!([module_witness(&images[i]), module_witness(&images[j])])
            });
        }
    }
    Ok(())
}

fn six_term<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, x) in ctx.inv_e.iter().enumerate() {
        for s in enumerate_submodules(x, &ctx.enum_e)? {
            let (q, proj) = x.quotient(&s.inclusion.columns())?;
            let f = ModuleMap::new(s.module.clone(), x.clone(), s.inclusion.clone())?;
            let g = ModuleMap::new(x.clone(), q, proj)?;
            let r = ctx.fun.six_term(&f, &g)?;
            out.record(r.exact, || label("E-module", i, x), "six-term sequence not exact", || {
                json!({ "module": module_witness(x), "submodule": matrix_json(&s.inclusion), "dims": r.dims, "ranks": r.ranks })
            });
        }
    }
    Ok(out)
}

fn tor_epi<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (i, x) in ctx.inv_e.iter().enumerate() {
        let t = ctx.fun.tor1(x)?;
        let ok = t.epi_rank == t.tor_dim && t.free_route_dim == t.tor_dim && (!t.beta_injective || t.kt_dim == t.tor_dim);
        out.record(ok, || label("E-module", i, x), "K_T -> Tor_1 not onto (or not bijective for injective beta*)", || {
            json!({ "module": module_witness(x), "kt": t.kt_dim, "tor": t.tor_dim, "rank": t.epi_rank })
        });
    }
    Ok(out)
}

fn yotimesb<F: Field>(ctx: &Ctx<F>, lifting: bool) -> Result<Outcome> {
    let mut out = Outcome::default();
    let b = ctx.dg()?;
    for (i, y) in ctx.inv_e.iter().enumerate() {
        let c = compare(&ctx.fun, b, y, &ctx.cfg.iso)?;
        let ok = if lifting {
            c.lifted_action_matches != Some(false)
        } else {
            c.h0_matches_tp && c.h_minus1_dim == c.kt_linear_dim && c.acyclic == c.in_script_e
        };
        out.record(ok, || label("E-module", i, y), "dg model disagrees with T_P / K_T", || {
            json!({ "module": module_witness(y), "h_minus1": c.h_minus1_dim, "kt": c.kt_linear_dim, "acyclic": c.acyclic })
        });
    }
    Ok(out)
}

fn tensor_hom<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let cert = ctx.fun.cert.as_ref().expect("suite runs with a certificate");
    for (i, m) in ctx.inv_r.iter().enumerate() {
        for deg in [0, -1] {
            let x = TwoTermComplex::stalk(m, deg);
            for (qn, q) in [("P", ctx.fun.p()), ("Q1", &cert.q1), ("Q2", &cert.q2)] {
                let ok = ctx.fun.tensor_hom_bijective(&x, q)?;
                out.record(ok, || format!("{} in degree {deg}, Q = {qn}", label("module", i, m)), "composition map not bijective", || {
                    module_witness(m)
                });
            }
        }
    }
    Ok(out)
}

fn envelope<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let cert = ctx.fun.cert.as_ref().expect("suite runs with a certificate");
    let f = ctx.fun.field();
    let (h0q1, proj) = cert.q1.h0();
    let u = proj.mul(&cert.alpha.m0).mul_vec(ctx.fun.p().algebra().unit());
    for (i, m) in ctx.torsion_modules()?.into_iter().enumerate() {
        let values: Vec<_> = hom_space(&h0q1, m)?.iter().map(|g| g.mul_vec(&u)).collect();
        let ok = span_rank(f, m.dim(), &values) == m.dim();
        out.record(ok, || label("T-module", i, m), "some map R -> M does not factor through H^0(Q1)", || module_witness(m));
    }
    Ok(out)
}

fn heart<F: Field>(ctx: &Ctx<F>, roundtrip: bool) -> Result<Outcome> {
    let mut out = Outcome::default();
    let small: Vec<_> = ctx.inv_r.iter().filter(|m| m.dim() <= 2).cloned().collect();
    let b = if roundtrip { Some(ctx.dg()?) } else { None };
    for (i, x) in generate_complexes(&small, ctx.cfg.heart_limit)?.iter().enumerate() {
        let instance = || format!("complex[{i}] {:?} -> {:?}", x.m1.dim_vector(), x.m0.dim_vector());
        let witness = || json!({ "x_minus1": module_witness(&x.m1), "x_zero": module_witness(&x.m0), "alpha": matrix_json(&x.d) });
        out.guard(instance, witness, |out| {
            let inside = in_heart(&ctx.tp, x)?;
            match b {
                None => out.record(true, String::new, "", || Value::Null),
                Some(b) if inside => {
                    let r = roundtrip_heart(&ctx.tp, &ctx.fun, b, x, &ctx.cfg.iso)?;
                    out.record(r.holds(), instance, "cohomology not recovered", witness);
                }
                Some(_) => {}
            }
            Ok(())
        });
    }
    Ok(out)
}

fn compact_corollary<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let b = ctx.dg()?;
    for (i, y) in ctx.inv_e.iter().enumerate().filter(|(_, y)| y.dim() > 0) {
        let t = b.tensor(&ctx.fun, y)?;
        let killed = t.is_acyclic() && ctx.fun.in_script_e(y)?;
        out.record(!killed, || label("E-module", i, y), "nonzero module in script-E", || module_witness(y));
    }
    Ok(out)
}

fn beta_star<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let b = ctx.fun.beta_star()?;
    let dt = ctx.fun.t.module.dim();
    let exact = b.to_t.mul(&b.matrix).is_zero()
        && b.to_t.rank() == dt
        && b.matrix.rank() + dt == b.target.module.dim();
    out.record(exact, || "beta*".into(), "presentation of T is not exact", || {
        json!({ "beta_star": matrix_json(&b.matrix), "to_t": matrix_json(&b.to_t) })
    });
    out.table.push(json!({ "source_dim": b.source.module.dim(), "target_dim": b.target.module.dim(), "injective": b.is_injective() }));
    Ok(out)
}

fn epsilon<F: Field>(ctx: &Ctx<F>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let e = ctx.fun.epsilon()?;
    out.record(e.rank == e.end_t_dim, || "epsilon".into(), "H^0 is not onto End(T)", || Value::Null);
    out.table.push(json!({ "endo_dim": ctx.fun.endo.algebra.dim(), "end_t_dim": e.end_t_dim, "kernel_dim": e.kernel_dim() }));
    Ok(out)
}
