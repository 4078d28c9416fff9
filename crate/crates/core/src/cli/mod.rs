//! Command-line driver: the group-theoretic pipeline, checks on supplied
//! complexes over the orbit category, and the embedded golden facts.
//!
//! Reports go to standard output as one JSON document, a short summary to
//! standard error. Exit codes: 0 pass, 1 condition failure, 2 parse error,
//! 3 order bound exceeded, 4 invalid complex.

pub mod check;
pub mod complex;
pub mod goldens;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use check::{run_check, CharacterReport, CharacterSource, CheckOptions, CheckReport, GroupInfo, Route};
pub use complex::{run_complex, ComplexReport, NbarSource};
pub use goldens::{compute_fact, compute_fact_on, parse_goldens, run_goldens, GoldenFact, GoldenFile, GoldensReport};

use crate::dimfun::{ChainReading, ClassValue, SuperClassFunction};
use crate::error::{Error, Result};
use crate::orbitcat::{from_gcw, parse_gcw, Coefficients};
use crate::permgroup::{builtin, group_from_text, Group, Lattice, DEFAULT_ORDER_BOUND};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;
pub const EXIT_COMPLEX: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "rankone",
    version,
    about = "Sphere actions with rank one isotropy: checks and certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the existence pipeline on a group.
    Check(CheckArgs),
    /// Check a complex over the orbit category given as G-CW JSON.
    Complex(ComplexArgs),
    /// Recompute the golden facts and compare them with the table.
    Goldens(GoldensArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// A builtin group name such as A6, S5 or Qd3.
    #[arg(long, conflicts_with = "group")]
    pub builtin: Option<String>,
    /// A group file: the degree, then one generator per line in cycle notation.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Refuse groups larger than this.
    #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
    pub max_order: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReadingArg {
    Steps,
    Objects,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Builtin name, as an alternative to --builtin.
    pub name: Option<String>,
    #[command(flatten)]
    pub source: GroupArgs,
    /// Only consider this rank-two prime.
    #[arg(long)]
    pub p: Option<u64>,
    /// Fixed-dimension table `{classLabel: dim}` for one prime; repeatable.
    #[arg(long = "character-file")]
    pub character_files: Vec<PathBuf>,
    /// Continue with the constructed characters when the normalizer-quotient table fails.
    #[arg(long, alias = "auto-typeB")]
    pub direct: bool,
    /// How chain length is counted for the dimension gap.
    #[arg(long, value_enum, default_value = "steps")]
    pub chain_reading: ReadingArg,
    /// Also check this complex and attach the result.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Dimension function for --complex, as `[{classLabel, order, value}]`.
    #[arg(long)]
    pub nbar: Option<PathBuf>,
    /// Discard torsion prime to this prime in complex homology.
    #[arg(long)]
    pub local: Option<u64>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComplexArgs {
    /// The G-CW JSON file.
    #[arg(long)]
    pub complex: PathBuf,
    /// Group, when the file does not name one.
    #[command(flatten)]
    pub source: GroupArgs,
    #[arg(long)]
    pub nbar: Option<PathBuf>,
    #[arg(long)]
    pub local: Option<u64>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GoldensArgs {
    /// A golden table to use instead of the embedded one.
    #[arg(long)]
    pub golden_file: Option<PathBuf>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckOutput {
    #[serde(flatten)]
    check: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    complex: Option<ComplexReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ComplexOutput {
    version: String,
    group: GroupInfo,
    #[serde(flatten)]
    report: ComplexReport,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ErrorOutput {
    version: String,
    error: String,
    exit_code: i32,
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::OrderBoundExceeded { .. } => EXIT_BOUND,
        Error::BoundaryNotSquareZero(_) | Error::InvalidComplex(_) | Error::InvalidMorphism(_) => EXIT_COMPLEX,
        Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::UnknownBuiltin(_) | Error::DegreeMismatch { .. } => {
            EXIT_PARSE
        }
        _ => EXIT_FAIL,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_group(args: &GroupArgs, name: Option<&str>) -> Result<(Group, Option<String>)> {
    let bounded = |g: Group| {
        if g.order() > args.max_order {
            Err(Error::OrderBoundExceeded { bound: args.max_order })
        } else {
            Ok(g)
        }
    };
    if let Some(n) = args.builtin.as_deref().or(name) {
        return Ok((bounded(builtin(n)?)?, Some(n.to_string())));
    }
    if let Some(path) = &args.group {
        return Ok((group_from_text(&read(path)?, Some(args.max_order))?, None));
    }
    Err(Error::Parse("give a group with --builtin NAME or --group FILE".into()))
}

fn load_nbar(lattice: &Arc<Lattice>, path: &Option<PathBuf>) -> Result<Option<SuperClassFunction>> {
    let Some(path) = path else { return Ok(None) };
    let entries: Vec<ClassValue> = serde_json::from_str(&read(path)?)?;
    Ok(Some(SuperClassFunction::from_class_values(lattice.clone(), &entries)?))
}

fn coefficients(local: Option<u64>) -> Coefficients {
    local.map_or(Coefficients::Integers, Coefficients::Local)
}

fn emit<T: Serialize>(value: &T, json_out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    println!("{text}");
    if let Some(path) = json_out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

fn complex_from_file(
    path: &Path,
    source: &GroupArgs,
    lattice: Option<Arc<Lattice>>,
) -> Result<(Arc<Lattice>, crate::orbitcat::OCChainComplex, GroupInfo)> {
    let file = parse_gcw(&read(path)?)?;
    let (lattice, info) = match (lattice, &file.group) {
        (Some(l), _) => {
            let info = GroupInfo::of(l.group(), None);
            (l, info)
        }
        (None, Some(spec)) => {
            let g = spec.build()?;
            if g.order() > source.max_order {
                return Err(Error::OrderBoundExceeded {
                    bound: source.max_order,
                });
            }
            let info = GroupInfo::of(&g, spec.builtin.as_deref());
            (Arc::new(Lattice::new(Arc::new(g))), info)
        }
        (None, None) => {
            let (g, name) = load_group(source, None)?;
            let info = GroupInfo::of(&g, name.as_deref());
            (Arc::new(Lattice::new(Arc::new(g))), info)
        }
    };
    let complex = from_gcw(lattice.clone(), &file)?;
    Ok((lattice, complex, info))
}

fn cmd_check(args: &CheckArgs) -> Result<bool> {
    let (group, name) = load_group(&args.source, args.name.as_deref())?;
    let lattice = Arc::new(Lattice::new(Arc::new(group)));
    let options = CheckOptions {
        prime: args.p,
        character_tables: args.character_files.iter().map(|p| read(p)).collect::<Result<_>>()?,
        direct: args.direct,
        chain_reading: match args.chain_reading {
            ReadingArg::Steps => ChainReading::Steps,
            ReadingArg::Objects => ChainReading::Objects,
        },
    };
    let check = run_check(&lattice, name.as_deref(), &options)?;
    let complex = match &args.complex {
        Some(path) => {
            let (l, c, _) = complex_from_file(path, &args.source, Some(lattice.clone()))?;
            Some(run_complex(&c, load_nbar(&l, &args.nbar)?, coefficients(args.local))?)
        }
        None => None,
    };
    let passed = check.passed && complex.as_ref().is_none_or(|c| c.passed);
    eprintln!(
        "check {}: order {}, rank-two primes {:?}, route {:?}: {}",
        name.as_deref().unwrap_or("group"),
        check.group.order,
        check.primes,
        check.route,
        if passed { "PASS" } else { "FAIL" }
    );
    for f in &check.failures {
        eprintln!("  failed {} at {}", f.condition, f.subject);
    }
    if let Some(a) = &check.alignment {
        let values: Vec<String> = a
            .nbar
            .iter()
            .filter(|v| v.value >= 0)
            .map(|v| format!("{}:{}", v.class_label, v.value))
            .collect();
        eprintln!("  nbar {}", values.join(" "));
    }
    emit(
        &CheckOutput {
            check,
            complex,
            error: None,
        },
        &args.json_out,
    )?;
    Ok(passed)
}

fn cmd_complex(args: &ComplexArgs) -> Result<bool> {
    let (lattice, complex, group) = complex_from_file(&args.complex, &args.source, None)?;
    let report = run_complex(&complex, load_nbar(&lattice, &args.nbar)?, coefficients(args.local))?;
    let passed = report.passed;
    eprintln!(
        "complex: sphere {}, tight {}, algrep {}, oriented {}: {}",
        report.sphere.passed,
        report.tight.passed,
        report.algrep.passed,
        report.oriented.passed,
        if passed { "PASS" } else { "FAIL" }
    );
    emit(
        &ComplexOutput {
            version: env!("CARGO_PKG_VERSION").to_string(),
            group,
            report,
        },
        &args.json_out,
    )?;
    Ok(passed)
}

fn cmd_goldens(args: &GoldensArgs) -> Result<bool> {
    let text = match &args.golden_file {
        Some(path) => read(path)?,
        None => goldens::EMBEDDED.to_string(),
    };
    let report = run_goldens(&parse_goldens(&text)?)?;
    for r in &report.results {
        if r.matches {
            eprintln!("  ok   {} {}", r.group, r.fact);
        } else {
            eprintln!(
                "  DIFF {} {}: expected {} found {}",
                r.group, r.fact, r.expected, r.actual
            );
        }
    }
    eprintln!(
        "goldens: {}/{} facts match",
        report.results.iter().filter(|r| r.matches).count(),
        report.results.len()
    );
    let passed = report.passed;
    emit(&report, &args.json_out)?;
    Ok(passed)
}

/// Parses arguments, runs one command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Complex(a) => cmd_complex(a),
        Command::Goldens(a) => cmd_goldens(a),
    };
    match outcome {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let code = exit_code_for(&e);
            eprintln!("error: {e}");
            let out = ErrorOutput {
                version: env!("CARGO_PKG_VERSION").to_string(),
                error: e.to_string(),
                exit_code: code,
            };
            if let Ok(text) = serde_json::to_string_pretty(&out) {
                println!("{text}");
            }
            code
        }
    }
}
