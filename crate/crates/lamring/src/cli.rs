//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lamring_core::cohomology::{
    bw_cohomology, cohomology_of, diagram_harrison_cohomology, harrison_cohomology, psi_harrison_cohomology,
};
use lamring_core::deformation::{deformation_check, infinitesimal};
use lamring_core::extension::{check_extension_data, ExtensionRing};
use lamring_core::free::{FreeLambdaRing, FreePsiRing};
use lamring_core::ktheory::{
    big_g, ext_lambda, ext_psi, hopf_odd_exists, multiplicity_g, odd_hopf_condition, parity_coefficient, reduced_sphere_module,
    render_stable_table, sphere_k_ring, stable_table,
};
use lamring_core::lambda::{adams_from_lambda, is_lambda_derivation, verify_lambda_module, verify_lambda_ring, LambdaRing};
use lamring_core::poly::MultiPoly;
use lamring_core::psi::{is_psi_derivation, verify_psi_module, verify_psi_ring, verify_special_psi, PsiModule};
use lamring_core::symm::{adams_poly, partial_p, partial_p_comp, universal_p, universal_p_comp, Slot};
use serde_json::json;

use crate::format::{
    to_ints, to_rows, Built, GeneratorSpec, InputError, InputFile, LambdaModuleSpec, LambdaRingSpec, PsiRingSpec, RingSpec,
};
use crate::render::{self, json_string, Rendered};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lamring", version, about = "Exact computations with λ-rings, Ψ-rings and their cohomology")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Operation degree bound N: prime bound of `verify special`, and the
    /// λ bound of lambda-ring files that do not state one.
    #[arg(long, global = true, default_value_t = 8)]
    pub bound: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Universal polynomials.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Ψ^k as a polynomial in λ^1(r), …, λ^k(r).
    Adams { k: u32 },
    /// Partial derivatives of the universal polynomials.
    #[command(subcommand)]
    Pderiv(PderivCommand),
    /// Check a structure read from a JSON file.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        file: PathBuf,
    },
    /// Check the axioms of a truncated free ring on sample elements.
    Free {
        #[arg(value_enum)]
        kind: FreeKind,
        gens: u32,
        bound: u32,
    },
    /// Cohomology of a cochain complex.
    Cohomology { file: PathBuf },
    /// Baues–Wirsching cohomology of a finite category.
    Bw {
        category: PathBuf,
        system: PathBuf,
        /// Highest degree computed.
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Harrison cohomology over Q, of an algebra or of a diagram of algebras.
    Harrison {
        algebra: PathBuf,
        #[arg(long)]
        diagram: Option<PathBuf>,
        /// Highest degree computed.
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Cohomology of the truncated Ψ-Harrison bicomplex over Q.
    PsiHarrison {
        ring: PathBuf,
        /// Products of operation indices are kept up to this bound.
        #[arg(long, default_value_t = 12)]
        index_bound: u32,
        /// Highest total degree computed.
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Extension groups of K(S^{2n}) by K~(S^{2n'}).
    Ext {
        #[arg(value_enum)]
        kind: FreeKind,
        n: u32,
        n2: u32,
    },
    /// Whether an odd Hopf invariant is allowed; with --scan, the n with an
    /// odd Hopf invariant for (n, 2n).
    Hopf {
        n: Option<u32>,
        n2: Option<u32>,
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 64)]
        max: u32,
    },
    /// Stable Ext groups next to the stable homotopy groups.
    StableTable { kmax: u32 },
    /// The exponent g^p_j of p in gcd{k^j - 1 : p ∤ k}.
    G { p: u64, j: u32 },
    /// K(S^{2n}) as a JSON input file, optionally with the module K~(S^{2n'}).
    Sphere {
        #[arg(value_enum)]
        kind: FreeKind,
        n: u32,
        #[arg(long)]
        module: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// P_k(λ(r); λ(s)).
    P { k: u32 },
    /// P_{i,j}(λ(r)).
    Pij { i: u32, j: u32 },
}

#[derive(Debug, Subcommand)]
pub enum PderivCommand {
    /// ∂P_i/∂λ^j of the first or second argument.
    P {
        i: u32,
        j: u32,
        #[arg(long, value_enum, default_value_t = SlotArg::First)]
        slot: SlotArg,
    },
    /// ∂P_{i,k}/∂λ^j.
    Pij { i: u32, k: u32, j: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SlotArg {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Psi,
    Lambda,
    Special,
    Derivation,
    Extension,
    Deformation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FreeKind {
    Psi,
    Lambda,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let stdout = match cli.format {
                OutputFormat::Text => r.text,
                OutputFormat::Json => json_string(&r.json),
            };
            Output { code: r.code, stdout, stderr: String::new() }
        }
        Err(e) => Output { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<InputFile, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    InputFile::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn mismatch<T>(expected: &str, found: &InputFile) -> Result<T, InputError> {
    Err(InputError(format!("expected a {expected} file, found {}", found.name())))
}

fn positive(name: &str, v: u32) -> Result<(), InputError> {
    if v == 0 {
        return Err(InputError(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn core_err<E: std::fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

pub fn execute(cli: &Cli) -> Result<Rendered, InputError> {
    match &cli.command {
        Command::Poly(PolyCommand::P { k }) => {
            positive("k", *k)?;
            Ok(render::polynomial(&format!("P_{k}"), &universal_p(*k)))
        }
        Command::Poly(PolyCommand::Pij { i, j }) => {
            positive("i", *i)?;
            positive("j", *j)?;
            Ok(render::polynomial(&format!("P_{{{i},{j}}}"), &universal_p_comp(*i, *j)))
        }
        Command::Adams { k } => {
            positive("k", *k)?;
            Ok(render::polynomial(&format!("Psi^{k}"), &adams_poly(*k)))
        }
        Command::Pderiv(PderivCommand::P { i, j, slot }) => {
            positive("j", *j)?;
            if j > i {
                return Err(InputError(format!("P_{i} involves λ^j only for j <= {i}")));
            }
            let (s, name) = match slot {
                SlotArg::First => (Slot::First, format!("dP_{i}(r,s)/dl{j}(r)")),
                SlotArg::Second => (Slot::Second, format!("dP_{i}(s,r)/dl{j}(s)")),
            };
            Ok(render::polynomial(&name, &partial_p(*i, s, *j)))
        }
        Command::Pderiv(PderivCommand::Pij { i, k, j }) => {
            positive("i", *i)?;
            positive("k", *k)?;
            positive("j", *j)?;
            if *j > i * k {
                return Err(InputError(format!("P_{{{i},{k}}} involves λ^j only for j <= {}", i * k)));
            }
            Ok(render::polynomial(&format!("dP_{{{i},{k}}}/dl{j}"), &partial_p_comp(*i, *k, *j)))
        }
        Command::Verify { what, file } => verify(*what, file, cli.bound),
        Command::Free { kind, gens, bound } => free(*kind, *gens, *bound),
        Command::Cohomology { file } => match read(file)? {
            InputFile::Complex(c) => Ok(render::cohomology("H", &cohomology_of(&c.build()?), &[])),
            other => mismatch("complex", &other),
        },
        Command::Bw { category, system, degree } => {
            let cat = match read(category)? {
                InputFile::Category(c) => c.build()?,
                other => return mismatch("category", &other),
            };
            let sys = match read(system)? {
                InputFile::System(s) => s.build(&cat)?,
                other => return mismatch("system", &other),
            };
            let groups = bw_cohomology(&cat, &sys, *degree).map_err(core_err)?;
            Ok(render::cohomology("H_BW", &groups, &[]))
        }
        Command::Harrison { algebra, diagram, degree } => {
            let spec = match read(algebra)? {
                InputFile::Algebra(a) => a,
                other => return mismatch("algebra", &other),
            };
            let groups = match diagram {
                None => harrison_cohomology(&spec.build()?, *degree).map_err(core_err)?,
                Some(path) => {
                    let cat = match read(path)? {
                        InputFile::Category(c) => c.build()?,
                        other => return mismatch("category", &other),
                    };
                    diagram_harrison_cohomology(&spec.build_diagram(cat)?, *degree).map_err(core_err)?
                }
            };
            Ok(render::cohomology("Harr", &groups, &[]))
        }
        Command::PsiHarrison { ring, index_bound, degree } => {
            let spec = match read(ring)? {
                InputFile::PsiRing(s) => s,
                other => return mismatch("psi-ring", &other),
            };
            let r = spec.build()?;
            let m = spec.build_module(&r)?.unwrap_or_else(|| PsiModule::regular(&r));
            let (groups, data) = psi_harrison_cohomology(&r, &m, *index_bound, *degree + 1).map_err(core_err)?;
            Ok(render::cohomology("H_PsiHarr", &groups, &data.notes))
        }
        Command::Ext { kind, n, n2 } => {
            positive("n", *n)?;
            positive("n'", *n2)?;
            Ok(match kind {
                FreeKind::Psi => render::ext("Ext_Psi", &ext_psi(*n, *n2)),
                FreeKind::Lambda => render::ext("Ext_lambda", &ext_lambda(*n, *n2)),
            })
        }
        Command::Hopf { n, n2, scan, max } => hopf(*n, *n2, *scan, *max),
        Command::StableTable { kmax } => {
            positive("kmax", *kmax)?;
            let rows = stable_table(*kmax);
            Ok(Rendered::ok(render_stable_table(&rows), render::stable_rows_json(&rows)))
        }
        Command::G { p, j } => {
            positive("j", *j)?;
            let g = multiplicity_g(*p, *j).map_err(core_err)?;
            Ok(Rendered::ok(format!("{g}\n"), json!({"format": "multiplicity", "p": p, "j": j, "g": g})))
        }
        Command::Sphere { kind, n, module } => sphere(*kind, *n, *module, cli.bound),
    }
}

fn verify(what: VerifyKind, file: &Path, bound: u32) -> Result<Rendered, InputError> {
    let input = read(file)?;
    match (what, &input) {
        (VerifyKind::Psi, InputFile::PsiRing(s)) => {
            let r = s.build()?;
            let mut report = verify_psi_ring(&r);
            if let Some(m) = s.build_module(&r)? {
                report.merge(verify_psi_module(&r, &m));
            }
            Ok(render::report("psi-ring", &report))
        }
        (VerifyKind::Psi, other) => mismatch("psi-ring", other),
        (VerifyKind::Lambda, InputFile::LambdaRing(s)) => {
            let r = s.build(bound)?;
            let mut report = verify_lambda_ring(&r, &r.default_test_set());
            if let Some(m) = s.build_module(&r)? {
                report.merge(verify_lambda_module(&r, &m));
            }
            Ok(render::report("lambda-ring", &report))
        }
        (VerifyKind::Lambda, other) => mismatch("lambda-ring", other),
        (VerifyKind::Special, InputFile::PsiRing(s)) => {
            let r = s.build()?;
            let mut report = verify_psi_ring(&r);
            report.merge(verify_special_psi(&r, bound));
            Ok(render::report("special psi-ring", &report))
        }
        (VerifyKind::Special, InputFile::LambdaRing(s)) => {
            let r = adams_from_lambda(&s.build(bound)?).map_err(core_err)?;
            let mut report = verify_psi_ring(&r);
            report.merge(verify_special_psi(&r, bound));
            Ok(render::report("special psi-ring", &report))
        }
        (VerifyKind::Special, other) => mismatch("psi-ring or lambda-ring", other),
        (VerifyKind::Derivation, InputFile::Derivation(spec)) => {
            let built = spec.structure.build_with_module(bound)?;
            let report = match &built {
                Built::Psi(r, m) => {
                    let d = crate::format::derivation_matrix(&spec.d, m.rank(), r.ring().rank())?;
                    is_psi_derivation(&d, r, m)
                }
                Built::Lambda(r, m) => {
                    let d = crate::format::derivation_matrix(&spec.d, m.rank(), r.presentation().rank())?;
                    is_lambda_derivation(&d, r, m)
                }
            };
            Ok(render::report("derivation", &report))
        }
        (VerifyKind::Derivation, other) => mismatch("derivation", other),
        (VerifyKind::Extension, InputFile::Extension(spec)) => {
            let (built, data) = spec.build(bound)?;
            let ring = match &built {
                Built::Psi(r, m) => ExtensionRing::Psi(r, m),
                Built::Lambda(r, m) => ExtensionRing::Lambda(r, m),
            };
            Ok(render::report("extension", &check_extension_data(ring, &data)))
        }
        (VerifyKind::Extension, other) => mismatch("extension", other),
        (VerifyKind::Deformation, InputFile::Deformation(spec)) => {
            let (r, d) = spec.build()?;
            let result = deformation_check(&r, &d);
            let mut report = result.report.clone();
            if let Some(k) = result.first_failure {
                report.notes.push(format!("first failing order: {k}"));
            }
            if result.is_ok() && d.order() >= 1 {
                report.notes.push(format!("first-order term is a {:?} cocycle", infinitesimal(&r, &d).kind));
            }
            let mut out = render::report("deformation", &report);
            out.json["first_failure"] = json!(result.first_failure);
            Ok(out)
        }
        (VerifyKind::Deformation, other) => mismatch("deformation", other),
    }
}

fn free(kind: FreeKind, gens: u32, bound: u32) -> Result<Rendered, InputError> {
    positive("gens", gens)?;
    positive("bound", bound)?;
    match kind {
        FreeKind::Psi => {
            let x = FreePsiRing::new(gens, bound);
            let mut samples = Vec::new();
            for g in 0..gens {
                for j in 1..=bound {
                    samples.push(x.generator(g, j).map_err(core_err)?);
                }
            }
            let a = x.generator(0, 1).map_err(core_err)?;
            let last = x.generator(gens - 1, 1).map_err(core_err)?;
            samples.push(&(&a * &last) + &MultiPoly::from_int(2));
            let report = x.verify(&samples);
            let mut out = render::report(&format!("free psi-ring on {gens} generators, bound {bound}"), &report);
            let images: Vec<String> = (1..=bound).map(|k| x.psi(k, &a).map(|p| p.to_string())).collect::<Result<_, _>>().map_err(core_err)?;
            for (k, p) in (1..).zip(&images) {
                out.text += &format!("Psi^{k}({a}) = {p}\n");
            }
            out.json["adams_images"] = json!(images);
            Ok(out)
        }
        FreeKind::Lambda => {
            let x = FreeLambdaRing::new(gens, bound);
            let mut samples: Vec<MultiPoly> = x.generators().into_iter().map(|(_, p)| p).collect();
            let a = samples[0].clone();
            if let Some(b) = samples.get(1).cloned() {
                samples.push(&a + &b);
                samples.push(&a * &b);
            }
            samples.push(&a - &MultiPoly::from_int(1));
            let report = verify_lambda_ring(&x, &samples);
            let mut out = render::report(&format!("free lambda-ring on {gens} generators, bound {bound}"), &report);
            let images: Vec<String> = (1..=bound).map(|k| x.psi(k, &a).map(|p| p.to_string())).collect::<Result<_, _>>().map_err(core_err)?;
            for (k, p) in (1..).zip(&images) {
                out.text += &format!("Psi^{k}({a}) = {p}\n");
            }
            out.json["adams_images"] = json!(images);
            Ok(out)
        }
    }
}

fn hopf(n: Option<u32>, n2: Option<u32>, scan: bool, max: u32) -> Result<Rendered, InputError> {
    if scan {
        if n.is_some() || n2.is_some() {
            return Err(InputError::new("--scan takes no dimensions"));
        }
        let odd: Vec<u32> = (1..=max).filter(|&n| hopf_odd_exists(n, 2 * n)).collect();
        let list = odd.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ");
        return Ok(Rendered::ok(
            format!("n <= {max} with an odd Hopf invariant for (n, 2n): {list}\n"),
            json!({"format": "hopf-scan", "max": max, "odd": odd}),
        ));
    }
    let n = n.ok_or_else(|| InputError::new("hopf needs n, or --scan"))?;
    positive("n", n)?;
    let n2 = n2.unwrap_or(2 * n);
    positive("n'", n2)?;
    let odd = hopf_odd_exists(n, n2);
    let g = big_g(n, n2).map(|g| g.to_string());
    let c = parity_coefficient(n, n2).map(|c| c.to_string());
    let condition = odd_hopf_condition(n, n2);
    let mut text = format!("n = {n}, n' = {n2}\n");
    if let (Some(g), Some(c)) = (&g, &c) {
        text += &format!("G = {g}\nparity coefficient (2^n - 2^n')/G = {c}\n");
    }
    text += &format!("odd Hopf invariant: {}\n", if odd { "possible" } else { "impossible" });
    if let Some(k) = condition {
        text += &format!("listed necessary condition {k} holds\n");
    }
    Ok(Rendered::ok(
        text,
        json!({"format": "hopf", "n": n, "n2": n2, "odd": odd, "g": g, "parity_coefficient": c, "condition": condition}),
    ))
}

fn sphere(kind: FreeKind, n: u32, module: Option<u32>, bound: u32) -> Result<Rendered, InputError> {
    positive("n", n)?;
    positive("bound", bound)?;
    let r = sphere_k_ring(n, bound).map_err(core_err)?;
    let m = module.map(|n2| reduced_sphere_module(n2, bound)).transpose().map_err(core_err)?;
    let file = match kind {
        FreeKind::Psi => InputFile::PsiRing(PsiRingSpec::from_structure(r.psi(), m.as_ref().map(|(_, p)| p))),
        FreeKind::Lambda => {
            let s = r.lambda();
            let generators = s
                .generators()
                .into_iter()
                .zip(s.generator_tables())
                .map(|((name, element), table)| GeneratorSpec { name, element: to_ints(&element), lambda: table.iter().map(|v| to_ints(v)).collect() })
                .collect();
            InputFile::LambdaRing(LambdaRingSpec {
                ring: RingSpec::from_ring(s.presentation()),
                bound: Some(bound),
                generators,
                unit_lambda: None,
                module: m.as_ref().map(|(l, _)| LambdaModuleSpec {
                    names: l.names().to_vec(),
                    action: l.action().iter().map(to_rows).collect(),
                    lambda: l.ops().iter().map(to_rows).collect(),
                }),
            })
        }
    };
    let json = serde_json::to_value(&file).expect("input files serialize");
    Ok(Rendered::ok(json_string(&json), json))
}
