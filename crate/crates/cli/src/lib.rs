//! Command-line front end.
//!
//! Exit codes: 0 every check passed, 1 usage or input error, 2 numerical
//! failure, 3 an inequality check failed.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use capspectra::chiti::chiti_constant_euclidean;
use capspectra::domain::{build_mesh, isoperimetric_check, DomainMesh, DomainSpec};
use capspectra::verify::{verify_chiti, verify_torsion};
use capspectra::{cap_eigenvalue, cap_radius_from_eigenvalue, CapEigenpair, Error, Tolerances};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{float, pairs_csv, reports_csv, Object, SCHEMA};
use serde_json::Value;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "CAPSPECTRA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "capspectra", version, about = "Cap eigenpairs, reverse Hölder and Saint-Venant checks on sphere domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First Dirichlet eigenpair of a geodesic cap of Sⁿ.
    CapEig(CapEigArgs),
    /// Crossing and reverse Hölder checks for a domain's ground state.
    VerifyChiti(ChitiArgs),
    /// Saint-Venant, warping and derivative checks for a domain's torsion.
    VerifyTorsion(DomainArgs),
    /// The Euclidean constant K(p, q, λ, n).
    ChitiConstant(ConstantArgs),
    /// Boundary length against the cap with the same volume.
    Isoperimetric(DomainArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Override a tolerance, e.g. `--tol warping=0.02`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Include the wall-clock time in the output.
    #[arg(long)]
    pub timestamps: bool,
}

#[derive(Debug, Args)]
pub struct CapEigArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
    pub theta1: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Dump the sampled profile as `theta,v` CSV.
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    /// Domain description (JSON).
    pub domain: PathBuf,
    /// Resolution as ROWSxCOLS over the domain's bounding box.
    #[arg(long, default_value = "256x512", value_parser = parse_grid)]
    pub grid: (usize, usize),
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ChitiArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long)]
    pub p: f64,
    /// Comma-separated exponents, each ≥ p.
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ConstantArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    fn usage(error: anyhow::Error) -> Self {
        Self { code: EXIT_USAGE, error }
    }
}

/// Input problems exit 1, everything else the solvers raise exits 2, a
/// violated volume claim exits 3.
fn classify(e: Error) -> Failure {
    let code = match e {
        Error::DomainSpec(_) | Error::EmptyDomain => EXIT_USAGE,
        Error::ClaimViolation { .. } => EXIT_VIOLATION,
        _ => EXIT_NUMERICAL,
    };
    Failure {
        code,
        error: anyhow!(e),
    }
}

fn tolerances(overrides: &[String]) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    for item in overrides {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(anyhow!("tolerance override '{item}' is not NAME=VALUE")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|e| Failure::usage(anyhow!("tolerance '{name}': {e}")))?;
        tol.set(name.trim(), value).map_err(|e| Failure::usage(anyhow!(e)))?;
    }
    Ok(tol)
}

fn load_mesh(args: &DomainArgs) -> Result<DomainMesh, Failure> {
    let text = fs::read_to_string(&args.domain)
        .with_context(|| format!("reading {}", args.domain.display()))
        .map_err(Failure::usage)?;
    let domain = DomainSpec::from_json(&text).map_err(classify)?;
    build_mesh(&domain, args.grid).map_err(|e| match e {
        Error::InvalidArgument(_) => Failure::usage(anyhow!(e)),
        e => classify(e),
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // A pool may already exist when run() is called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn header(command: &str, common: &Common, tol: Option<&Tolerances>) -> Object {
    let mut j = Object::new().field("schema", SCHEMA).field("command", command);
    if common.timestamps {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        j = j.field("generated_at_unix", secs);
    }
    if let Some(t) = tol {
        j = j.field(
            "tolerances",
            Value::Object(t.entries().iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect()),
        );
    }
    j
}

fn mesh_json(mesh: &DomainMesh) -> Object {
    let d = mesh.domain();
    let (rows, cols) = mesh.resolution();
    Object::new()
        .field("kind", d.kind.kind_name())
        .field("r", d.manifold.r())
        .field("beta", d.manifold.beta())
        .field("grid", vec![rows, cols])
        .field("cells", mesh.len())
        .field("volume", mesh.volume())
        .field(
            "warnings",
            mesh.warnings().to_vec(),
        )
}

fn emit(common: &Common, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match &common.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => out.write_all(text.as_bytes()).context("writing to stdout"),
    }
    .map_err(Failure::usage)
}

fn verdict(all_pass: bool) -> u8 {
    if all_pass {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    }
}

fn write_profile(path: &Path, pair: &CapEigenpair) -> Result<(), Failure> {
    let mut s = String::from("theta,v\n");
    for (t, v) in pair.profile.thetas().iter().zip(pair.profile.values()) {
        s.push_str(&format!("{},{}\n", float(*t), float(*v)));
    }
    fs::write(path, s)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::usage)
}

fn cmd_cap_eig(args: &CapEigArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let pair = match (args.theta1, args.lambda) {
        (Some(t), None) => cap_eigenvalue(args.n, t),
        (None, Some(l)) => cap_radius_from_eigenvalue(args.n, l),
        _ => return Err(Failure::usage(anyhow!("give exactly one of --theta1 and --lambda"))),
    }
    .map_err(classify)?;
    if let Some(path) = &args.profile_out {
        write_profile(path, &pair)?;
    }
    let mid = pair.eval(0.5 * pair.theta1);
    let text = match args.common.format {
        Format::Json => header("cap-eig", &args.common, None)
            .field("n", pair.n)
            .field("theta1", pair.theta1)
            .field("lambda", pair.lambda)
            .field(
                "profile",
                Object::new()
                    .field("nodes", pair.profile.len())
                    .field("v_at_0", pair.profile.values()[0])
                    .field("v_at_half_radius", mid)
                    .field("non_increasing", pair.profile.is_non_increasing()),
            )
            .render(),
        Format::Csv => pairs_csv(&[
            ("n", pair.n.to_string()),
            ("theta1", float(pair.theta1)),
            ("lambda", float(pair.lambda)),
            ("nodes", pair.profile.len().to_string()),
            ("v_at_half_radius", float(mid)),
        ]),
    };
    emit(&args.common, &text, out)?;
    Ok(EXIT_PASS)
}

fn cmd_verify_chiti(args: &ChitiArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let common = &args.domain.common;
    let tol = tolerances(&common.tol)?;
    if let Some(q) = args.q.iter().find(|q| !(**q >= args.p)) {
        return Err(Failure::usage(anyhow!("q = {q} is below p = {}", args.p)));
    }
    if !(args.p > 0.0) {
        return Err(Failure::usage(anyhow!("p must be positive")));
    }
    let mesh = load_mesh(&args.domain)?;
    let outcome = verify_chiti(&mesh, args.p, &args.q, &tol).map_err(classify)?;
    let reports = outcome.reports();
    let text = match common.format {
        Format::Json => header("verify-chiti", common, Some(&tol))
            .field("domain", mesh_json(&mesh))
            .field("lambda", outcome.eigen.lambda)
            .field("theta1", outcome.cap.theta1)
            .field("scale", outcome.scale)
            .field("crossing_count", outcome.crossings.len())
            .field(
                "theta2",
                outcome.crossings.first().copied(),
            )
            .field("lemma22_min_residual", outcome.lemma22_min_residual)
            .field("reports", output::reports(&reports))
            .field("pass", outcome.all_pass())
            .render(),
        Format::Csv => reports_csv(&reports),
    };
    emit(common, &text, out)?;
    Ok(verdict(outcome.all_pass()))
}

fn cmd_verify_torsion(args: &DomainArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let tol = tolerances(&args.common.tol)?;
    let mesh = load_mesh(args)?;
    let outcome = verify_torsion(&mesh, &tol).map_err(classify)?;
    let reports = outcome.reports();
    let text = match args.common.format {
        Format::Json => header("verify-torsion", &args.common, Some(&tol))
            .field("domain", mesh_json(&mesh))
            .field("rigidity", outcome.field.rigidity())
            .field("sup_w", outcome.field.sup())
            .field("variational_quotient", outcome.field.variational_quotient())
            .field("reports", output::reports(&reports))
            .field("pass", outcome.all_pass())
            .render(),
        Format::Csv => reports_csv(&reports),
    };
    emit(&args.common, &text, out)?;
    Ok(verdict(outcome.all_pass()))
}

fn cmd_isoperimetric(args: &DomainArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let tol = tolerances(&args.common.tol)?;
    let mesh = load_mesh(args)?;
    let report = isoperimetric_check(&mesh, &tol).map_err(classify)?.with_tolerances(&tol);
    let text = match args.common.format {
        Format::Json => header("isoperimetric", &args.common, Some(&tol))
            .field("domain", mesh_json(&mesh))
            .field("reports", output::reports(&[&report]))
            .field("pass", report.pass)
            .render(),
        Format::Csv => reports_csv(&[&report]),
    };
    emit(&args.common, &text, out)?;
    Ok(verdict(report.pass))
}

fn cmd_chiti_constant(args: &ConstantArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let k = chiti_constant_euclidean(args.p, args.q, args.lambda, args.n).map_err(|e| match e {
        Error::InvalidArgument(_) | Error::OutOfRange { .. } => Failure::usage(anyhow!(e)),
        e => classify(e),
    })?;
    let text = match args.common.format {
        Format::Json => header("chiti-constant", &args.common, None)
            .field("p", args.p)
            .field("q", args.q)
            .field("lambda", args.lambda)
            .field("n", args.n)
            .field("constant", k)
            .render(),
        Format::Csv => pairs_csv(&[
            ("p", float(args.p)),
            ("q", float(args.q)),
            ("lambda", float(args.lambda)),
            ("n", args.n.to_string()),
            ("constant", float(k)),
        ]),
    };
    emit(&args.common, &text, out)?;
    Ok(EXIT_PASS)
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Diagnostics go to stderr, results to `out` or `--output`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            if code == EXIT_PASS {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    configure_threads();
    let result = match &cli.command {
        Command::CapEig(a) => cmd_cap_eig(a, out),
        Command::VerifyChiti(a) => cmd_verify_chiti(a, out),
        Command::VerifyTorsion(a) => cmd_verify_torsion(a, out),
        Command::ChitiConstant(a) => cmd_chiti_constant(a, out),
        Command::Isoperimetric(a) => cmd_isoperimetric(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            f.code
        }
    }
}

/// Convenience for callers holding a command line as one string.
pub fn run_line(line: &str, out: &mut dyn Write) -> anyhow::Result<u8> {
    let args: Vec<&str> = std::iter::once("capspectra").chain(line.split_whitespace()).collect();
    if args.len() == 1 {
        bail!("empty command line");
    }
    Ok(run(args, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("256x512"), Ok((256, 512)));
        assert_eq!(parse_grid("64X128"), Ok((64, 128)));
        assert!(parse_grid("256").is_err());
        assert!(parse_grid("ax1").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let t = tolerances(&["warping=0.5".into(), "claim = 0.01".into()]).unwrap();
        assert_eq!(t.warping, 0.5);
        assert_eq!(t.claim, 0.01);
        assert!(tolerances(&["warping".into()]).is_err());
        assert!(tolerances(&["bogus=1".into()]).is_err());
        assert!(tolerances(&["warping=x".into()]).is_err());
    }

    #[test]
    fn exit_codes_for_quick_commands() {
        let mut buf = Vec::new();
        assert_eq!(run(["capspectra", "cap-eig", "--n", "2", "--theta1", "1.5707963"], &mut buf), EXIT_PASS);
        assert_eq!(run(["capspectra", "cap-eig", "--n", "2", "--theta1", "3.2"], &mut buf), EXIT_NUMERICAL);
        assert_eq!(run(["capspectra", "cap-eig", "--n", "2"], &mut buf), EXIT_USAGE);
        assert_eq!(run(["capspectra", "--help"], &mut buf), EXIT_PASS);
        assert_eq!(run(["capspectra", "frobnicate"], &mut buf), EXIT_USAGE);
        assert_eq!(
            run(["capspectra", "chiti-constant", "--p", "2", "--q", "1", "--lambda", "1", "--n", "2"], &mut buf),
            EXIT_USAGE
        );
    }
}
