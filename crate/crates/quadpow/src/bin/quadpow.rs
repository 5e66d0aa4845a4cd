//! Command-line front end: verification, catalog access, constructions,
//! kernels, Sylvester analysis, tame/wild sweeps, bounds, and Klein geometry.
//! Every subcommand emits a JSON report on stdout (or --out) and exits 0 on
//! success, 1 on mathematical failure, 2 on input errors.

use clap::{Args, Parser, Subcommand};
use quadpow::case_analysis::{tame_analyze, wild_analyze};
use quadpow::constructions::{
    self, build, icosa_special, phi_bounds, theta, Construction, ConstructionRecipe,
};
use quadpow::dependence::{power_kernel, verify_identity, PowerIdentity, VerifyOutcome};
use quadpow::klein::{klein_set, recognize};
use quadpow::report::{
    dependence_json, digest_bytes, klein_csv, klein_json, phi_json, sylvester_json, tame_json,
    verify_json, wild_json, wrap_report, FormJson, FormSetJson, IdentityJson,
};
use quadpow::sylvester::{enumerate_even_representations, simultaneous_diagonalize};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "quadpow", version, about = "exact analysis of dependent powers of binary forms")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Working precision in binary digits for numeric (Klein/quadrature)
    /// paths; verification paths ignore it.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an identity from a file, by catalog name, or the whole corpus.
    Verify(VerifyArgs),
    /// List or emit catalog entries.
    Catalog(CatalogArgs),
    /// Run a construction recipe and emit the identity with metadata.
    Construct(ConstructArgs),
    /// Exact kernel of the d-th powers of a form set.
    Kernel(KernelArgs),
    /// Sliding-window matrix, rank, and kernel of an even form.
    Sylvester(FileArg),
    /// Simultaneously diagonalize two relatively prime quadratics.
    Diagonalize(FileArg),
    /// All even two-power decompositions of an even form.
    Representations(FileArg),
    /// Tame-branch classification at one exponent or a range.
    Tame(SweepArgs),
    /// Wild-branch classification at one exponent or a range.
    Wild(SweepArgs),
    /// The synching bound Theta_e(d).
    Theta(ThetaArgs),
    /// Lower/upper bounds for the least dependent power count.
    Phi(PhiArgs),
    /// Klein set of an identity's forms, with recognition.
    Klein(KleinArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity JSON file.
    file: Option<PathBuf>,
    /// Catalog entry name.
    #[arg(long)]
    name: Option<String>,
    /// Verify every catalog entry (parallel).
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long)]
    list: bool,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    /// molluzzo | monomial | quadrature | psi-odd | psi-even | icosa14 | catalog
    #[arg(long)]
    recipe: String,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    ep: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    name: Option<String>,
    /// Also emit the shared-factor analysis for the degree-14 family.
    #[arg(long)]
    special: bool,
}

#[derive(Args)]
struct KernelArgs {
    file: PathBuf,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct FileArg {
    file: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    d: Option<u32>,
    /// Inclusive range "lo:hi"; analyses fan out across a worker pool.
    #[arg(long)]
    d_range: Option<String>,
}

#[derive(Args)]
struct ThetaArgs {
    #[arg(long)]
    e: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct PhiArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Args)]
struct KleinArgs {
    file: Option<PathBuf>,
    #[arg(long)]
    name: Option<String>,
    /// Emit CSV (x,y,z rows) instead of JSON.
    #[arg(long)]
    csv: bool,
    /// Recognition tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Math(m) => m,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

/// Catalog access honoring the QUADPOW_CATALOG_DIR override: when set, each
/// entry is a JSON identity file <name>.json inside that directory.
fn catalog_dir() -> Option<PathBuf> {
    std::env::var_os("QUADPOW_CATALOG_DIR").map(PathBuf::from)
}

fn catalog_names() -> Result<Vec<String>, CliError> {
    match catalog_dir() {
        None => Ok(constructions::catalog_names()
            .into_iter()
            .map(String::from)
            .collect()),
        Some(dir) => {
            let mut names = Vec::new();
            let rd = std::fs::read_dir(&dir)
                .map_err(|e| CliError::Input(format!("{}: {}", dir.display(), e)))?;
            for entry in rd {
                let entry = entry.map_err(input_err)?;
                let path = entry.path();
                if path.extension().and_then(|s| s.to_str()) == Some("json") {
                    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                        names.push(stem.to_string());
                    }
                }
            }
            names.sort();
            Ok(names)
        }
    }
}

fn catalog_identity(name: &str) -> Result<(PowerIdentity, String), CliError> {
    match catalog_dir() {
        None => {
            let e = constructions::catalog(name).map_err(input_err)?;
            Ok((e.identity.clone(), e.tag.to_string()))
        }
        Some(dir) => {
            let path = dir.join(format!("{}.json", name));
            let text = read_file(&path)?;
            let j: IdentityJson = serde_json::from_str(&text).map_err(input_err)?;
            let id = j.to_identity().map_err(input_err)?;
            Ok((id, format!("external catalog entry {}", name)))
        }
    }
}

fn parse_identity_file(path: &Path) -> Result<(PowerIdentity, String), CliError> {
    let text = read_file(path)?;
    let j: IdentityJson = serde_json::from_str(&text).map_err(input_err)?;
    let id = j.to_identity().map_err(input_err)?;
    Ok((id, text))
}

fn run(cli: &Cli) -> Result<(String, serde_json::Value, String), CliError> {
    // returns (command label, result, digest input)
    match &cli.command {
        Command::Verify(args) => {
            if args.all {
                let names = catalog_names()?;
                let results: Vec<(String, VerifyOutcome)> = names
                    .par_iter()
                    .map(|n| {
                        let (id, _) = catalog_identity(n)
                            .unwrap_or_else(|e| panic!("catalog {}: {}", n, e.message()));
                        (n.clone(), verify_identity(&id))
                    })
                    .collect();
                let failed: Vec<&String> = results
                    .iter()
                    .filter(|(_, o)| !o.passed())
                    .map(|(n, _)| n)
                    .collect();
                let value = serde_json::json!({
                    "entries": results.iter().map(|(n, o)| serde_json::json!({
                        "name": n,
                        "report": verify_json(o),
                    })).collect::<Vec<_>>(),
                    "total": results.len(),
                    "failed": failed,
                });
                if !failed.is_empty() {
                    // still emit the report, but signal failure
                    print_report("verify --all", &value, "catalog", cli)?;
                    return Err(CliError::Math(format!(
                        "{} catalog entries failed verification",
                        failed.len()
                    )));
                }
                Ok(("verify --all".into(), value, "catalog".into()))
            } else if let Some(name) = &args.name {
                let (id, digest_src) = catalog_identity(name)?;
                let outcome = verify_identity(&id);
                let value = verify_json(&outcome);
                if !outcome.passed() {
                    print_report("verify", &value, &digest_src, cli)?;
                    return Err(CliError::Math(format!("identity '{}' failed", name)));
                }
                Ok(("verify".into(), value, digest_src))
            } else {
                let path = args
                    .file
                    .as_ref()
                    .ok_or_else(|| CliError::Input("verify needs FILE, --name, or --all".into()))?;
                let (id, text) = parse_identity_file(path)?;
                let outcome = verify_identity(&id);
                let value = verify_json(&outcome);
                if !outcome.passed() {
                    print_report("verify", &value, &text, cli)?;
                    return Err(CliError::Math("identity failed verification".into()));
                }
                Ok(("verify".into(), value, text))
            }
        }
        Command::Catalog(args) => {
            if args.list {
                let names = catalog_names()?;
                Ok((
                    "catalog --list".into(),
                    serde_json::json!({ "names": names }),
                    "catalog".into(),
                ))
            } else if let Some(name) = &args.name {
                let (id, tag) = catalog_identity(name)?;
                Ok((
                    "catalog".into(),
                    serde_json::json!({
                        "name": name,
                        "tag": tag,
                        "identity": IdentityJson::from_identity(&id),
                        "term_count": id.len(),
                    }),
                    name.clone(),
                ))
            } else {
                Err(CliError::Input("catalog needs --list or --name".into()))
            }
        }
        Command::Construct(args) => {
            let recipe = match args.recipe.as_str() {
                "molluzzo" => ConstructionRecipe::Molluzzo {
                    e: args.e.ok_or_else(|| CliError::Input("--e required".into()))?,
                    ep: args.ep.ok_or_else(|| CliError::Input("--ep required".into()))?,
                    t: args.t.ok_or_else(|| CliError::Input("--t required".into()))?,
                },
                "monomial" => ConstructionRecipe::Monomial {
                    s: args.s.ok_or_else(|| CliError::Input("--s required".into()))?,
                },
                "quadrature" => ConstructionRecipe::Quadrature {
                    s: args.s.ok_or_else(|| CliError::Input("--s required".into()))?,
                    theta: args
                        .theta
                        .ok_or_else(|| CliError::Input("--theta required".into()))?,
                },
                "psi-odd" => ConstructionRecipe::PsiOdd {
                    s: args.s.ok_or_else(|| CliError::Input("--s required".into()))?,
                },
                "psi-even" => ConstructionRecipe::PsiEven {
                    s: args.s.ok_or_else(|| CliError::Input("--s required".into()))?,
                },
                "icosa14" => {
                    if args.special {
                        let rep = icosa_special().map_err(input_err)?;
                        let value = serde_json::json!({
                            "a_coeffs": rep.a.coeffs().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                            "b_coeffs": rep.b.coeffs().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                            "common_factor": rep.common_factor.display_in("alpha"),
                            "identity": IdentityJson::from_identity(&rep.specialized.identity),
                            "metadata": {
                                "recipe": rep.specialized.recipe,
                                "term_count": rep.specialized.term_count,
                                "tag": rep.specialized.tag,
                            },
                        });
                        return Ok(("construct icosa14 --special".into(), value, "icosa14-special".into()));
                    }
                    ConstructionRecipe::Icosa14
                }
                "catalog" => ConstructionRecipe::Catalog {
                    name: args
                        .name
                        .clone()
                        .ok_or_else(|| CliError::Input("--name required".into()))?,
                },
                other => {
                    return Err(CliError::Input(format!("unknown recipe '{}'", other)));
                }
            };
            let built = build(&recipe).map_err(input_err)?;
            let value = match built {
                Construction::Exact(b) => serde_json::json!({
                    "identity": IdentityJson::from_identity(&b.identity),
                    "metadata": {
                        "recipe": b.recipe,
                        "term_count": b.term_count,
                        "tag": b.tag,
                    },
                }),
                Construction::Numeric(q) => serde_json::json!({
                    "numeric": true,
                    "metadata": {
                        "recipe": format!("quadrature({},{})", q.s, q.theta),
                        "term_count": q.term_count,
                        "relative_residual": q.relative_residual,
                        "tag": "trigonometric family, numeric check",
                    },
                }),
            };
            Ok(("construct".into(), value, args.recipe.clone()))
        }
        Command::Kernel(args) => {
            let text = read_file(&args.file)?;
            let j: FormSetJson = serde_json::from_str(&text).map_err(input_err)?;
            let set = j.to_form_set().map_err(input_err)?;
            let rep = power_kernel(&set, args.d).map_err(input_err)?;
            Ok(("kernel".into(), dependence_json(&rep), text))
        }
        Command::Sylvester(args) => {
            let text = read_file(&args.file)?;
            let j: FormJson = serde_json::from_str(&text).map_err(input_err)?;
            let f = j.to_form().map_err(input_err)?;
            let rep = quadpow::sylvester::sylvester_matrix(&f).map_err(input_err)?;
            Ok(("sylvester".into(), sylvester_json(&rep), text))
        }
        Command::Representations(args) => {
            let text = read_file(&args.file)?;
            let j: FormJson = serde_json::from_str(&text).map_err(input_err)?;
            let f = j.to_form().map_err(input_err)?;
            let rep = enumerate_even_representations(&f).map_err(input_err)?;
            Ok(("representations".into(), sylvester_json(&rep), text))
        }
        Command::Diagonalize(args) => {
            let text = read_file(&args.file)?;
            let j: FormSetJson = serde_json::from_str(&text).map_err(input_err)?;
            if j.forms.len() != 2 {
                return Err(CliError::Input("diagonalize needs exactly two quadratics".into()));
            }
            let f1 = j.forms[0].to_form().map_err(input_err)?;
            let f2 = j.forms[1].to_form().map_err(input_err)?;
            if f1.degree() != 2 || f2.degree() != 2 {
                return Err(CliError::Input("diagonalize needs degree-2 forms".into()));
            }
            let r = simultaneous_diagonalize(&f1, &f2)
                .map_err(|e| CliError::Math(e.to_string()))?;
            let value = serde_json::json!({
                "m": [
                    r.change.a.canonicalize().to_string(),
                    r.change.b.canonicalize().to_string(),
                    r.change.c.canonicalize().to_string(),
                    r.change.d.canonicalize().to_string(),
                ],
                "g1": FormJson::from_form(&r.g1),
                "g2": FormJson::from_form(&r.g2),
            });
            Ok(("diagonalize".into(), value, text))
        }
        Command::Tame(args) => {
            let ds = sweep_range(args)?;
            let reports: Vec<serde_json::Value> = ds
                .par_iter()
                .map(|&d| tame_analyze(d).map(|r| tame_json(&r)))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Math(e.to_string()))?;
            let value = if reports.len() == 1 {
                reports.into_iter().next().unwrap()
            } else {
                serde_json::json!(reports)
            };
            Ok(("tame".into(), value, format!("{:?}", ds)))
        }
        Command::Wild(args) => {
            let ds = sweep_range(args)?;
            let reports: Vec<serde_json::Value> = ds
                .par_iter()
                .map(|&d| wild_analyze(d).map(|r| wild_json(&r)))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Math(e.to_string()))?;
            let value = if reports.len() == 1 {
                reports.into_iter().next().unwrap()
            } else {
                serde_json::json!(reports)
            };
            Ok(("wild".into(), value, format!("{:?}", ds)))
        }
        Command::Theta(args) => {
            let (value, t) = theta(args.e, args.d).map_err(input_err)?;
            Ok((
                "theta".into(),
                serde_json::json!({ "theta": value, "t": t, "e": args.e, "d": args.d }),
                format!("theta({},{})", args.e, args.d),
            ))
        }
        Command::Phi(args) => {
            if args.k < 1 || args.d < 2 {
                return Err(CliError::Input("phi needs k >= 1 and d >= 2".into()));
            }
            let b = phi_bounds(args.k, args.d);
            Ok((
                "phi".into(),
                phi_json(&b),
                format!("phi({},{})", args.k, args.d),
            ))
        }
        Command::Klein(args) => {
            let (id, src) = if let Some(name) = &args.name {
                catalog_identity(name)?
            } else if let Some(path) = &args.file {
                parse_identity_file(path)?
            } else {
                return Err(CliError::Input("klein needs FILE or --name".into()));
            };
            let forms: Vec<_> = id.terms().iter().map(|t| t.form.clone()).collect();
            let pts = klein_set(&forms, cli.precision).map_err(|e| CliError::Math(e.to_string()))?;
            let label = recognize(&pts, args.tol);
            if args.csv {
                let csv = klein_csv(&pts);
                return Ok((
                    "klein --csv".into(),
                    serde_json::json!({ "csv": csv, "label": label.label() }),
                    src,
                ));
            }
            Ok(("klein".into(), klein_json(&pts, &label), src))
        }
    }
}

fn sweep_range(args: &SweepArgs) -> Result<Vec<u32>, CliError> {
    match (&args.d, &args.d_range) {
        (Some(d), None) => Ok(vec![*d]),
        (None, Some(r)) => {
            let parts: Vec<&str> = r.split(':').collect();
            if parts.len() != 2 {
                return Err(CliError::Input("range must be lo:hi".into()));
            }
            let lo: u32 = parts[0].parse().map_err(input_err)?;
            let hi: u32 = parts[1].parse().map_err(input_err)?;
            if lo > hi {
                return Err(CliError::Input("empty range".into()));
            }
            Ok((lo..=hi).collect())
        }
        _ => Err(CliError::Input("need exactly one of --d or --d-range".into())),
    }
}

fn print_report(
    command: &str,
    result: &serde_json::Value,
    digest_src: &str,
    cli: &Cli,
) -> Result<(), CliError> {
    let report = wrap_report(
        command,
        &digest_bytes(digest_src.as_bytes()),
        result.clone(),
        START.elapsed().as_millis(),
    );
    let text = serde_json::to_string_pretty(&report).map_err(input_err)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e))),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

static START: once_cell_start::LazyInstant = once_cell_start::LazyInstant::new();

mod once_cell_start {
    use std::sync::OnceLock;
    use std::time::Instant;

    pub struct LazyInstant(OnceLock<Instant>);

    impl LazyInstant {
        pub const fn new() -> Self {
            LazyInstant(OnceLock::new())
        }

        pub fn elapsed(&self) -> std::time::Duration {
            self.0.get_or_init(Instant::now).elapsed()
        }

        pub fn start(&self) {
            let _ = self.0.get_or_init(Instant::now);
        }
    }
}

fn main() -> ExitCode {
    START.start();
    let _ = Instant::now();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((command, result, digest_src)) => {
            if let Err(e) = print_report(&command, &result, &digest_src, &cli) {
                eprintln!("error: {}", e.message());
                return ExitCode::from(e.code());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
