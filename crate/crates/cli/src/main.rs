use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use silting_core::algebra::{enumerate_modules, hom_space, EnumConfig, FdModule, IsoConfig};
use silting_core::complex::{is_presilting, silting_certificate, TwoTermComplex};
use silting_core::endo::Functors;
use silting_core::linalg::{Field, FieldSpec, PrimeField, Rationals};
use silting_core::project::{Project, ProjectFile};
use silting_core::suite::{module_witness, run_suite, SuiteConfig, CHECKS};
use silting_core::torsion::{defect, TorsionPair};

#[derive(Parser, Debug)]
#[command(name = "silting", version, about = "Two-term silting complexes over finite-dimensional path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Project file (JSON).
    #[arg(long, global = true)]
    project: Option<PathBuf>,
    /// Module name from the project.
    #[arg(long, global = true)]
    module: Option<String>,
    /// Comma-separated check names for `verify`.
    #[arg(long, global = true, value_delimiter = ',')]
    check: Vec<String>,
    /// Dimension cap for enumerated modules.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Seed for the randomized part of isomorphism search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Is Hom_K(P, P[1]) zero?
    CheckPresilting { complex: Option<String> },
    /// Presilting and R in the thick closure via the certificate triangle.
    CheckSilting { complex: Option<String> },
    /// Classify the module inventory by the torsion pair of H^0(P).
    Torsion { complex: Option<String> },
    /// Endomorphism algebra of P and its map onto End(H^0 P).
    Endo { complex: Option<String> },
    /// Defect of a module (`--module`).
    Defect { complex: Option<String> },
    /// H_P(-, 0), H_P(-, 1) and the functors back, over the inventory.
    FunctorTable { complex: Option<String> },
    /// K_T(H_P(M, 1)) for `--module M`, or K_T over enumerated E-modules.
    Kt { complex: Option<String> },
    /// Run the verification suite.
    Verify { complex: Option<String> },
    /// List the modules of the inventory up to isomorphism.
    Enumerate,
}

/// An error is a usage problem (exit 2); `Ok((json, false))` is a
/// mathematical negative (exit 1).
type Outcome = Result<(Value, bool), String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((value, positive)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("{}", json!({ "error": format!("cannot write {}: {e}", path.display()) }));
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if positive { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let path = cli.project.as_ref().ok_or("--project is required")?;
    let file = ProjectFile::load(path).map_err(|e| e.to_string())?;
    match file.field.spec().map_err(|e| e.to_string())? {
        FieldSpec::Prime { p } => {
            let f = PrimeField::new(p).map_err(|e| e.to_string())?;
            dispatch(cli, &Project::build(&file, f).map_err(|e| e.to_string())?)
        }
        FieldSpec::Rationals => dispatch(cli, &Project::build(&file, Rationals).map_err(|e| e.to_string())?),
    }
}

fn dispatch<F: Field>(cli: &Cli, project: &Project<F>) -> Outcome {
    let iso = IsoConfig { seed: cli.seed, ..IsoConfig::default() };
    let max_dim = cli.max_dim.or(project.file.config.max_dim).unwrap_or(3);
    let enum_cfg = EnumConfig { max_dim, iso, ..EnumConfig::default() };
    let named = |c: &Option<String>| -> Result<(String, &TwoTermComplex<F>), String> {
        match c {
            Some(name) => Ok((name.clone(), project.complex(name).map_err(|e| e.to_string())?)),
            None if project.complexes.len() == 1 => {
                let (name, c) = project.complexes.iter().next().expect("one complex");
                Ok((name.clone(), c))
            }
            None => Err("name a complex: the project has several or none".into()),
        }
    };
    let module = || -> Result<(String, &FdModule<F>), String> {
        let name = cli.module.as_ref().ok_or("--module is required")?;
        Ok((name.clone(), project.module(name).map_err(|e| e.to_string())?))
    };
    let e = |x: silting_core::Error| x.to_string();
    match &cli.command {
        Command::CheckPresilting { complex } => {
            let (name, p) = named(complex)?;
            require_projective(p)?;
            let dim = silting_core::complex::hom_k(p, p, 1).map_err(e)?.dim();
            Ok((json!({ "complex": name, "presilting": dim == 0, "hom_p_p1_dim": dim }), dim == 0))
        }
        Command::CheckSilting { complex } => {
            let (name, p) = named(complex)?;
            require_projective(p)?;
            let pre = is_presilting(p).map_err(e)?;
            let cert = if pre { silting_certificate(p).map_err(e)? } else { None };
            let endo_dim = silting_core::endo::endo_algebra(p).map_err(e)?.algebra.dim();
            let silting = cert.is_some();
            let d = cert.as_ref().map(|c| c.d);
            Ok((json!({ "complex": name, "silting": silting, "presilting": pre, "d": d, "endo_dim": endo_dim }), silting))
        }
        Command::Torsion { complex } => {
            let (name, p) = named(complex)?;
            let inv = enumerate_modules(&project.algebra, &enum_cfg).map_err(e)?;
            let tp = TorsionPair::new(p).map_err(e)?;
            let mut rows = Vec::new();
            for m in &inv {
                rows.push(json!({
                    "dims": m.dim_vector(),
                    "in_T": tp.in_t(m).map_err(e)?,
                    "in_F": tp.in_f(m).map_err(e)?,
                    "defect_dim": defect(p, m).dim(),
                }));
            }
            let report = tp.verify_silting_equality(&inv).map_err(e)?;
            let holds = report.holds();
            Ok((
                json!({
                    "complex": name,
                    "t_dims": tp.t.dim_vector(),
                    "certified": tp.certified,
                    "modules": rows,
                    "silting_equality": report,
                }),
                holds,
            ))
        }
        Command::Endo { complex } => {
            let (name, p) = named(complex)?;
            let fun = Functors::new(p).map_err(e)?;
            let alg = &fun.endo.algebra;
            let f = alg.field();
            let eps = fun.epsilon().map_err(e)?;
            let constants: Vec<Vec<Vec<String>>> = alg
                .structure_constants()
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(|x| f.format(x)).collect()).collect())
                .collect();
            Ok((
                json!({
                    "complex": name,
                    "endo_dim": alg.dim(),
                    "idempotents": alg.idempotents().len(),
                    "structure_constants": constants,
                    "end_t_dim": eps.end_t_dim,
                    "epsilon_kernel_dim": eps.kernel_dim(),
                }),
                true,
            ))
        }
        Command::Defect { complex } => {
            let (name, p) = named(complex)?;
            let (mname, m) = module()?;
            let tp = TorsionPair::new(p).map_err(e)?;
            let d = defect(p, m).dim();
            Ok((
                json!({
                    "complex": name,
                    "module": mname,
                    "defect_dim": d,
                    "hom_t_dim": hom_space(&tp.t, m).map_err(e)?.len(),
                    "in_T": tp.in_t(m).map_err(e)?,
                    "in_F": tp.in_f(m).map_err(e)?,
                }),
                true,
            ))
        }
        Command::FunctorTable { complex } => {
            let (name, p) = named(complex)?;
            let fun = certified(p)?;
            let tp = TorsionPair::new(p).map_err(e)?;
            let mods: Vec<FdModule<F>> = match &cli.module {
                Some(_) => vec![module()?.1.clone()],
                None => enumerate_modules(&project.algebra, &enum_cfg).map_err(e)?,
            };
            let mut rows = Vec::new();
            for m in &mods {
                let h0 = fun.h_p(m, 0).map_err(e)?.module;
                let h1 = fun.h_p(m, 1).map_err(e)?.module;
                rows.push(json!({
                    "dims": m.dim_vector(),
                    "in_T": tp.in_t(m).map_err(e)?,
                    "in_F": tp.in_f(m).map_err(e)?,
                    "h_p0_dim": h0.dim(),
                    "h_p1_dim": h1.dim(),
                    "t_p_h_p0_dim": fun.t_p(&h0).map_err(e)?.0.dim(),
                    "kt_h_p1_dim": fun.kt_linear(&h1).map_err(e)?.dim(),
                }));
            }
            Ok((json!({ "complex": name, "rows": rows }), true))
        }
        Command::Kt { complex } => {
            let (name, p) = named(complex)?;
            let fun = certified(p)?;
            if cli.module.is_some() {
                let (mname, m) = module()?;
                let y = fun.h_p(m, 1).map_err(e)?.module;
                let kt = fun.kt_linear(&y).map_err(e)?;
                let tp = TorsionPair::new(p).map_err(e)?;
                let zeta = if tp.in_f(m).map_err(e)? { Some(fun.zeta(m).map_err(e)?.is_isomorphism()) } else { None };
                return Ok((
                    json!({ "complex": name, "module": mname, "h_p1_dim": y.dim(), "kt_dim": kt.dim(), "zeta_iso": zeta }),
                    true,
                ));
            }
            let e_cfg = EnumConfig { max_dim: cli.max_dim.or(project.file.config.max_dim_e).unwrap_or(3), ..enum_cfg };
            let mut rows = Vec::new();
            for y in enumerate_modules(&fun.endo.algebra, &e_cfg).map_err(e)? {
                let tor = fun.tor1(&y).map_err(e)?;
                rows.push(json!({
                    "module": module_witness(&y),
                    "kt_dim": tor.kt_dim,
                    "tor1_dim": tor.tor_dim,
                    "t_p_dim": fun.t_p(&y).map_err(e)?.0.dim(),
                }));
            }
            Ok((json!({ "complex": name, "rows": rows }), true))
        }
        Command::Verify { complex } => {
            let (name, p) = named(complex)?;
            let checks = if cli.check.is_empty() { project.file.config.checks.clone() } else { Some(cli.check.clone()) };
            for c in checks.iter().flatten() {
                if !CHECKS.iter().any(|(n, _)| n == c) {
                    return Err(format!("unknown check `{c}`"));
                }
            }
            let cfg = SuiteConfig {
                max_dim_r: max_dim,
                max_dim_e: cli.max_dim.or(project.file.config.max_dim_e).unwrap_or(3),
                checks,
                iso,
                ..SuiteConfig::default()
            };
            let algebra = algebra_label(project);
            let report = run_suite(p, &algebra, &name, &cfg).map_err(e)?;
            let ok = report.all_passed();
            Ok((serde_json::to_value(&report).expect("reports serialize"), ok))
        }
        Command::Enumerate => {
            let inv = enumerate_modules(&project.algebra, &enum_cfg).map_err(e)?;
            let mods: Vec<Value> = inv.iter().map(module_witness).collect();
            Ok((json!({ "algebra": algebra_label(project), "max_dim": max_dim, "count": mods.len(), "modules": mods }), true))
        }
    }
}

fn require_projective<F: Field>(p: &TwoTermComplex<F>) -> Result<(), String> {
    if p.is_projective() {
        Ok(())
    } else {
        Err("complex entries must be projective".into())
    }
}

fn certified<F: Field>(p: &TwoTermComplex<F>) -> Result<Functors<F>, String> {
    let fun = Functors::new(p).map_err(|e| e.to_string())?;
    if fun.cert.is_none() {
        return Err("the complex is not silting; this command needs a silting complex".into());
    }
    Ok(fun)
}

fn algebra_label<F: Field>(project: &Project<F>) -> String {
    let q = &project.quiver;
    let arrows: Vec<String> = q.arrows.iter().map(|a| format!("{}:{}->{}", a.name, q.vertices[a.from], q.vertices[a.to])).collect();
    let field = match project.algebra.field().spec() {
        FieldSpec::Prime { p } => format!("F_{p}"),
        FieldSpec::Rationals => "Q".into(),
    };
    format!("kQ/I over {field}, vertices [{}], arrows [{}], dim {}", q.vertices.join(","), arrows.join(","), project.algebra.dim())
}
