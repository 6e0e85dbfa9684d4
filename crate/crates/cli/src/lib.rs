//! Command-line front-end: parse triple files, compute homology and related
//! modules, run the verification battery, and emit reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 validation or precondition error, 4 resource cap.

pub mod report;
pub mod spec_file;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sechh_core::differentials::omega;
use sechh_core::homology::{hc_homology, hh_homology, Homology, Limits};
use sechh_core::kernel::kernel_data;
use sechh_core::oracles;
use sechh_core::triple::{catalog, catalog_all, Triple};
use sechh_core::verify::{verify_batch, verify_theorem, Status, TheoremId};
use sechh_core::Error as CoreError;

use report::{DimRow, ErrorInfo, Report, TripleInfo, Validation};
use spec_file::{SpecError, TripleSpec};

#[derive(Parser, Debug)]
#[command(
    name = "sechh",
    version,
    about = "Secondary Hochschild and cyclic homology of finite-dimensional triples"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a triple file and check the triple axioms.
    Validate(Source),
    /// Compute dimension tables.
    Compute(ComputeArgs),
    /// Run theorem checks.
    Verify(VerifyArgs),
    /// Print a triple in canonical file form.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
pub struct Source {
    /// Triple definition file (TOML).
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    pub path: Option<PathBuf>,
    /// Use a built-in catalog triple instead of a file.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Hh,
    Hc,
    Omega,
    Kernel,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub what: What,
    #[command(flatten)]
    pub source: Source,
    /// Degree `N` or inclusive range `A..B` (hh and hc only).
    #[arg(long, default_value = "0..2")]
    pub degree: String,
    /// Raise the degree cap. Chain spaces grow very quickly.
    #[arg(long, value_name = "N")]
    pub max_degree_override: Option<usize>,
    /// Include basis representatives.
    #[arg(long)]
    pub representatives: bool,
    /// Also report values from the slow reference implementations.
    #[arg(long, hide = true)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Triple definition file (TOML).
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    pub path: Option<PathBuf>,
    /// Run on the catalog: all of it, or the named triple.
    #[arg(long, value_name = "NAME", num_args = 0..=1)]
    pub catalog: Option<Option<String>>,
    /// Theorems to check (Prop3, Cor3, Prop4, Thm_main, Reduction_Bk).
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    pub theorem: Vec<String>,
    /// Check every theorem (the default).
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_name = "N")]
    pub max_degree_override: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: Source,
    /// Write to a file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Failure classes, one per exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Cap(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Failed(_) => "verification",
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Cap(_) => "resource cap",
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::NonCommutative | CoreError::InvalidTriple(_) => CliError::Validation(msg),
            CoreError::DegreeCap { .. } | CoreError::TooLarge { .. } => CliError::Cap(msg),
            CoreError::UnknownCatalog(_) | CoreError::Parse(_) => CliError::Parse(msg),
            _ => CliError::Failed(msg),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse(m) => CliError::Parse(m),
            SpecError::Invalid(_) => CliError::Validation(e.to_string()),
        }
    }
}

/// What a run produced: exit code and the text for each stream.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

const DEFAULT_CAP: usize = 3;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn load(source: &Source) -> Result<TripleSpec, CliError> {
    match (&source.path, &source.catalog) {
        (_, Some(name)) => Ok(TripleSpec {
            triple: catalog(name)?,
            max_degree: None,
        }),
        (Some(path), None) => Ok(spec_file::parse(&read(path)?, &file_stem(path))?),
        (None, None) => Err(CliError::Parse("no triple given".into())),
    }
}

/// Degree cap: the override if given, else the file's `max_degree` bounded
/// by the default cap.
fn limits(file_cap: Option<usize>, override_cap: Option<usize>, report: &mut Report) -> Limits {
    if let Some(n) = override_cap {
        let w = format!("degree cap overridden to {n}; chain spaces grow very quickly");
        log::warn!("{w}");
        report.warnings.push(w);
        return Limits { max_degree: n };
    }
    let cap = match file_cap {
        Some(m) if m > DEFAULT_CAP => {
            let w = format!("max_degree {m} in the file exceeds the default cap {DEFAULT_CAP}; using {DEFAULT_CAP}");
            log::warn!("{w}");
            report.warnings.push(w);
            DEFAULT_CAP
        }
        Some(m) => m,
        None => DEFAULT_CAP,
    };
    Limits { max_degree: cap }
}

/// `N`, `A..B` or `A..=B`, inclusive.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Parse(format!("bad degree `{s}`: expected N or A..B"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn homology_row(t: &Triple, h: &Homology, reps: bool, oracle: Option<usize>) -> DimRow {
    DimRow {
        triple: t.name().to_string(),
        flavor: h.flavor.to_string(),
        degree: h.degree,
        dim: h.dim(),
        oracle,
        representatives: reps.then(|| h.representatives().to_vec()),
    }
}

fn row(t: &Triple, flavor: &str, dim: usize) -> DimRow {
    DimRow {
        triple: t.name().to_string(),
        flavor: flavor.to_string(),
        degree: 1,
        dim,
        oracle: None,
        representatives: None,
    }
}

fn cmd_validate(source: &Source, report: &mut Report) -> Result<(), CliError> {
    let raw = match (&source.path, &source.catalog) {
        (Some(path), None) => spec_file::parse_raw(&read(path)?)?,
        _ => {
            let spec = load(source)?;
            report.triples.push(TripleInfo::of(&spec.triple));
            report.validation = Some(Validation {
                valid: true,
                axiom: None,
                message: None,
                witness: None,
            });
            return Ok(());
        }
    };
    let fallback = source.path.as_deref().map(file_stem).unwrap_or_default();
    match raw.validate(&fallback) {
        Ok(spec) => {
            report.triples.push(TripleInfo::of(&spec.triple));
            report.validation = Some(Validation {
                valid: true,
                axiom: None,
                message: None,
                witness: None,
            });
            Ok(())
        }
        Err(e) => {
            let msg = e.to_string();
            report.validation = Some(Validation {
                valid: false,
                axiom: Some(e.axiom().to_string()),
                message: Some(msg.clone()),
                witness: Some(e.clone()),
            });
            Err(CliError::Validation(format!("{} fails: {msg}", e.axiom())))
        }
    }
}

fn cmd_compute(args: &ComputeArgs, report: &mut Report) -> Result<(), CliError> {
    let spec = load(&args.source)?;
    let t = &spec.triple;
    report.triples.push(TripleInfo::of(t));
    let limits = limits(spec.max_degree, args.max_degree_override, report);
    let ground_b = t.b().dim() == 1;
    match args.what {
        What::Hh | What::Hc => {
            let degrees = parse_degrees(&args.degree)?;
            let flavor = if args.what == What::Hh { "hh" } else { "hc" };
            report.requested = degrees.iter().map(|n| format!("{flavor} {n}")).collect();
            for &n in &degrees {
                limits.check(n)?;
            }
            for n in degrees {
                let (h, oracle) = if args.what == What::Hh {
                    let h = hh_homology(t, n, &limits)?;
                    let o = match (args.oracle, ground_b, n) {
                        (false, ..) => None,
                        (true, true, _) => Some(oracles::classical_hh(t.a(), n)?),
                        (true, false, 1) => Some(oracles::secondary_hh1_dim(t)?),
                        _ => None,
                    };
                    (h, o)
                } else {
                    let h = hc_homology(t, n, &limits)?;
                    let o = if args.oracle && ground_b {
                        Some(oracles::classical_hc(t.a(), n)?)
                    } else {
                        None
                    };
                    (h, o)
                };
                report
                    .dimensions
                    .push(homology_row(t, &h, args.representatives, oracle));
            }
        }
        What::Omega => {
            report.requested = vec!["omega".into()];
            let p = omega(t)?;
            report
                .dimensions
                .push(row(t, "Omega1 ambient", p.ambient_dim()));
            report
                .dimensions
                .push(row(t, "Omega1 relations", p.relations().dim()));
            report
                .dimensions
                .push(row(t, "d(1(x)A)", p.d_one_a_subspace().dim()));
            let mut r = row(t, "Omega1", p.dim());
            if args.oracle && ground_b {
                r.oracle = Some(oracles::classical_kahler_dim(t.a())?);
            }
            if args.representatives {
                r.representatives = Some(p.quotient().representatives().to_vec());
            }
            report.dimensions.push(r);
        }
        What::Kernel => {
            report.requested = vec!["kernel".into()];
            let k = kernel_data(t)?;
            let d = k.dims();
            for (name, dim) in [
                ("A(x)A(x)B", d.ambient),
                ("J", d.j),
                ("J^2", d.j_squared),
                ("J-hat", d.j_hat_bimodule),
                ("J-hat span of g", d.j_hat_span),
                ("J^2+J-hat", d.sum_with_bimodule),
                ("J/(J^2+span of g)", d.quotient_span_reading),
            ] {
                report.dimensions.push(row(t, name, dim));
            }
            let mut r = row(t, "J/(J^2+J-hat)", d.quotient);
            if args.oracle && ground_b && t.is_commutative() {
                r.oracle = Some(oracles::classical_i_mod_i2_dim(t.a())?);
            }
            if args.representatives {
                r.representatives = Some(k.quotient().representatives().to_vec());
            }
            report.dimensions.push(r);
            if !d.readings_agree() {
                report.warnings.push(format!(
                    "the span of the g(f) alone gives J/(J^2+span) of dim {}, the bimodule it generates gives {}",
                    d.quotient_span_reading, d.quotient
                ));
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, report: &mut Report) -> Result<(), CliError> {
    let theorems: Vec<TheoremId> = if args.theorem.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        args.theorem
            .iter()
            .map(|s| {
                TheoremId::parse(s.trim()).ok_or_else(|| {
                    CliError::Parse(format!(
                        "unknown theorem `{s}`; expected one of Prop3, Cor3, Prop4, Thm_main, Reduction_Bk"
                    ))
                })
            })
            .collect::<Result<_, _>>()?
    };
    report.requested = theorems.iter().map(|t| t.as_str().to_string()).collect();
    let (triples, file_cap) = match (&args.path, &args.catalog) {
        (_, Some(None)) => (catalog_all(), None),
        (_, Some(Some(name))) => (vec![catalog(name)?], None),
        (Some(path), None) => {
            let spec = spec_file::parse(&read(path)?, &file_stem(path))?;
            (vec![spec.triple], spec.max_degree)
        }
        (None, None) => return Err(CliError::Parse("no triple given".into())),
    };
    let limits = limits(file_cap, args.max_degree_override, report);
    report.triples = triples.iter().map(TripleInfo::of).collect();

    // A single triple with an explicit selection is held to its
    // preconditions; batch runs skip what does not apply.
    let strict = triples.len() == 1 && !args.theorem.is_empty();
    report.theorems = if strict {
        let t = &triples[0];
        let mut out = Vec::new();
        for &th in &theorems {
            let r = verify_theorem(t, th, &limits)?;
            if r.status == Status::Skipped {
                return Err(CliError::Validation(format!(
                    "{th} does not apply: {}",
                    r.notes.join("; ")
                )));
            }
            out.push(r);
        }
        out
    } else {
        verify_batch(&triples, &theorems, &limits)?
    };
    let failed: Vec<String> = report
        .theorems
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| format!("{} on {}", r.theorem, r.triple))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failed: {}", failed.join(", "))))
    }
}

fn cmd_export(args: &ExportArgs) -> Result<String, CliError> {
    let spec = load(&args.source)?;
    let text = spec_file::export(&spec.triple, spec.max_degree);
    match &args.output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let (name, result, mut report) = match &cli.command {
        Command::Export(args) => {
            return match cmd_export(args) {
                Ok(text) => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                Err(e) => Outcome {
                    code: e.exit_code(),
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                },
            };
        }
        Command::Validate(src) => {
            let mut r = Report::new("validate");
            (("validate"), cmd_validate(src, &mut r), r)
        }
        Command::Compute(args) => {
            let mut r = Report::new("compute");
            ("compute", cmd_compute(args, &mut r), r)
        }
        Command::Verify(args) => {
            let mut r = Report::new("verify");
            ("verify", cmd_verify(args, &mut r), r)
        }
    };
    let (code, stderr) = match &result {
        Ok(()) => (0, String::new()),
        Err(e) => {
            report.error = Some(ErrorInfo {
                kind: e.kind(),
                message: e.to_string(),
            });
            (e.exit_code(), format!("{name}: {e}\n"))
        }
    };
    let stdout = match cli.format {
        Format::Machine => report.to_machine(),
        Format::Human => {
            report.elapsed = Some(start.elapsed());
            report.to_human()
        }
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}
