//! Argument parsing and command execution.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rumin_core::algebra::{builtin_raw, validate, Model, RawAlgebra};
use rumin_core::calculus::parametrix_identity_check;
use rumin_core::exterior::{bgg_fiber, MAX_EXTERIOR_DIM};
use rumin_core::linalg::DenseMatrix;
use rumin_core::report::VerificationReport;
use rumin_core::rumin::{verify_package, RuminPackage, RuminVerification};
use rumin_core::tables::{quasiconformal_check, strip_table, truncation_ranks, QcDecision};
use rumin_core::{Error, GradedLieAlgebra};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::budget::ClockBudget;
use crate::error::{CliError, EXIT_BUDGET, EXIT_IDENTITY, EXIT_INPUT, EXIT_OK};
use crate::format::{rational_from_json, rational_to_json, AlgebraFile, PackageFile, QcFile};
use crate::sweep::fiber_sweep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "rumin", version, about = "Exact Rumin/BGG complexes of graded nilpotent Lie algebras")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every command.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for randomized property sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock limit for verification sweeps.
    #[arg(long, global = true, env = "RUMIN_BUDGET_SECONDS")]
    pub budget_seconds: Option<f64>,
    /// Limit on processed monomials (spanning elements, exterior basis size).
    #[arg(long, global = true, env = "RUMIN_MAX_MONOMIALS")]
    pub max_monomials: Option<u64>,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra definitions.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Betti numbers with d0/delta consistency checks.
    Cohomology {
        algebra: String,
        /// Number of random adjointness pairs.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Ranks of ker delta / im delta per (degree, weight).
    Bgg { algebra: String },
    /// Group-level calculus identities.
    #[command(subcommand)]
    Calculus(CalculusCmd),
    /// Rumin complex packages.
    #[command(subcommand)]
    Rumin(RuminCmd),
    /// Strip bounds per BGG component.
    Strips { algebra: String },
    /// Truncated rank sequence of an odd-dimensional algebra.
    Truncate { algebra: String },
    /// Decide whether a linear map is (1 + ad Y) composed with a dilation.
    QcCheck { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    Validate { algebra: String },
    Show { algebra: String },
}

#[derive(Debug, Subcommand)]
pub enum CalculusCmd {
    Verify {
        algebra: String,
        #[arg(long)]
        max_poly_degree: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RuminCmd {
    /// Build the operator tables and verify them; the package goes to --out.
    Build {
        algebra: String,
        #[arg(long)]
        max_poly_degree: Option<usize>,
    },
    Verify { package: PathBuf },
}

/// Exit status and captured output of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(&cli.command, &cli.config)
}

pub fn execute(command: &Command, config: &RunConfig) -> Outcome {
    if let Some(s) = config.budget_seconds {
        if !(s > 0.0 && s.is_finite()) {
            return input_error("--budget-seconds must be positive");
        }
    }
    if config.max_monomials == Some(0) {
        return input_error("--max-monomials must be positive");
    }
    let result = match command {
        Command::Algebra(AlgebraCmd::Validate { algebra }) => cmd_validate(algebra, config),
        Command::Algebra(AlgebraCmd::Show { algebra }) => cmd_show(algebra, config),
        Command::Cohomology { algebra, pairs } => cmd_cohomology(algebra, *pairs, config),
        Command::Bgg { algebra } => cmd_bgg(algebra, config),
        Command::Calculus(CalculusCmd::Verify { algebra, max_poly_degree }) => {
            cmd_calculus(algebra, *max_poly_degree, config)
        }
        Command::Rumin(RuminCmd::Build { algebra, max_poly_degree }) => cmd_build(algebra, *max_poly_degree, config),
        Command::Rumin(RuminCmd::Verify { package }) => cmd_verify(package, config),
        Command::Strips { algebra } => cmd_strips(algebra, config),
        Command::Truncate { algebra } => cmd_truncate(algebra, config),
        Command::QcCheck { input } => cmd_qc(input, config),
    };
    match result {
        Ok(o) => o,
        Err(e) => error_outcome(e),
    }
}

fn input_error(msg: &str) -> Outcome {
    Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}\n", msg) }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FailureJson {
    pub status: String,
    pub identity: String,
    pub witness: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BudgetJson {
    pub status: String,
    pub budget: String,
}

fn error_outcome(e: CliError) -> Outcome {
    let code = e.exit_code();
    let stdout = match &e {
        CliError::Core(Error::IdentityFailure { identity, witness }) => to_json(&FailureJson {
            status: "fail".into(),
            identity: identity.clone(),
            witness: witness.clone(),
        }),
        CliError::Core(Error::BudgetExceeded(msg)) => {
            to_json(&BudgetJson { status: "interrupted".into(), budget: msg.clone() })
        }
        _ => String::new(),
    };
    Outcome { code, stdout, stderr: format!("error: {}\n", e) }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn json_only(config: &RunConfig, what: &str) -> Result<(), CliError> {
    match config.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Input(format!("{} has no CSV form; use --format json", what))),
    }
}

/// Sends the artifact to `--out` or returns it as standard output.
fn emit(config: &RunConfig, code: i32, artifact: String) -> Result<Outcome, CliError> {
    match &config.out {
        Some(path) => {
            write_file(path, &artifact)?;
            Ok(Outcome { code, stdout: String::new(), stderr: String::new() })
        }
        None => Ok(Outcome { code, stdout: artifact, stderr: String::new() }),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Resolves a builtin id (`heisenberg:2`, `octonionic`) or a JSON file path.
pub fn load_raw(source: &str) -> Result<RawAlgebra, CliError> {
    let path = Path::new(source);
    if path.is_file() {
        let file: AlgebraFile = serde_json::from_str(&read_file(path)?)?;
        return Ok(file.to_raw()?);
    }
    let (id, n) = match source.split_once(':') {
        Some((id, n)) => {
            let n = n.parse::<usize>().map_err(|_| CliError::Input(format!("bad model size in {:?}", source)))?;
            (id, n)
        }
        None if source == "octonionic" => (source, 1),
        None => return Err(CliError::Input(format!("{:?} is neither a file nor a builtin id model:n", source))),
    };
    Ok(builtin_raw(Model::parse(id)?, n)?)
}

pub fn load_algebra(source: &str) -> Result<GradedLieAlgebra, CliError> {
    Ok(GradedLieAlgebra::new(&load_raw(source)?)?)
}

fn check_exterior_size(alg: &GradedLieAlgebra, budget: &ClockBudget) -> Result<(), CliError> {
    if alg.dim() > MAX_EXTERIOR_DIM {
        return Err(Error::InvalidParameter(format!("dimension {} exceeds {}", alg.dim(), MAX_EXTERIOR_DIM)).into());
    }
    budget.reserve(1u64 << alg.dim(), "exterior algebra")?;
    Ok(())
}

fn budget(config: &RunConfig) -> ClockBudget {
    ClockBudget::new(config.budget_seconds, config.max_monomials)
}

/// Default polynomial degree bound: 3 up to dimension 5, else 1.
pub fn default_poly_degree(alg: &GradedLieAlgebra) -> usize {
    if alg.dim() <= 5 {
        3
    } else {
        1
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ViolationJson {
    pub axiom: String,
    pub witness: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ValidateJson {
    pub algebra: String,
    pub status: String,
    pub violations: Vec<ViolationJson>,
}

fn cmd_validate(source: &str, config: &RunConfig) -> Result<Outcome, CliError> {
    json_only(config, "algebra validate")?;
    let raw = load_raw(source)?;
    let report = validate(&raw)?;
    let out = ValidateJson {
        algebra: raw.name.clone(),
        status: if report.passed() { "valid" } else { "invalid" }.into(),
        violations: report
            .violations
            .iter()
            .map(|v| ViolationJson { axiom: v.axiom().into(), witness: v.witness() })
            .collect(),
    };
    emit(config, if report.passed() { EXIT_OK } else { EXIT_IDENTITY }, to_json(&out))
}

fn cmd_show(source: &str, config: &RunConfig) -> Result<Outcome, CliError> {
    json_only(config, "algebra show")?;
    let alg = load_algebra(source)?;
    emit(config, EXIT_OK, to_json(&AlgebraFile::from_algebra(&alg)))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckJson {
    pub identity: String,
    pub status: String,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

fn checks_json(report: &VerificationReport) -> Vec<CheckJson> {
    report
        .checks
        .iter()
        .map(|c| CheckJson {
            identity: c.identity.clone(),
            status: c.status().into(),
            checked: c.checked,
            counterexample: c.counterexample.clone(),
        })
        .collect()
}

fn report_status(report: &VerificationReport) -> (&'static str, i32) {
    if report.interrupted.is_some() {
        ("interrupted", EXIT_BUDGET)
    } else if report.passed() {
        ("pass", EXIT_OK)
    } else {
        ("fail", EXIT_IDENTITY)
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CohomologyJson {
    pub algebra: String,
    pub dim: usize,
    pub seed: u64,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub status: String,
    pub checks: Vec<CheckJson>,
}

fn cmd_cohomology(source: &str, pairs: usize, config: &RunConfig) -> Result<Outcome, CliError> {
    let alg = load_algebra(source)?;
    check_exterior_size(&alg, &budget(config))?;
    let sweep = fiber_sweep(&alg, pairs, config.seed)?;
    let (status, code) = report_status(&sweep.report);
    let text = match config.format {
        Format::Json => to_json(&CohomologyJson {
            algebra: alg.name().into(),
            dim: alg.dim(),
            seed: config.seed,
            betti: sweep.betti.clone(),
            euler_characteristic: sweep.euler_characteristic,
            status: status.into(),
            checks: checks_json(&sweep.report),
        }),
        Format::Csv => csv_string(
            &["degree", "betti"],
            sweep.betti.iter().enumerate().map(|(k, b)| vec![k.to_string(), b.to_string()]),
        ),
    };
    emit(config, code, text)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BggRowJson {
    pub degree: usize,
    pub weight: usize,
    pub rank: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BggJson {
    pub algebra: String,
    pub homogeneous_dimension: usize,
    pub entries: Vec<BggRowJson>,
    pub euler_characteristic: i64,
}

fn cmd_bgg(source: &str, config: &RunConfig) -> Result<Outcome, CliError> {
    let alg = load_algebra(source)?;
    check_exterior_size(&alg, &budget(config))?;
    let table = bgg_fiber(&alg)?;
    let text = match config.format {
        Format::Json => to_json(&BggJson {
            algebra: alg.name().into(),
            homogeneous_dimension: table.homogeneous_dimension,
            entries: table
                .entries
                .iter()
                .map(|e| BggRowJson { degree: e.degree, weight: e.weight, rank: e.rank })
                .collect(),
            euler_characteristic: table.euler_characteristic(),
        }),
        Format::Csv => csv_string(
            &["degree", "weight", "rank"],
            table.entries.iter().map(|e| vec![e.degree.to_string(), e.weight.to_string(), e.rank.to_string()]),
        ),
    };
    emit(config, EXIT_OK, text)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CalculusJson {
    pub algebra: String,
    pub max_poly_degree: usize,
    pub status: String,
    pub checks: Vec<CheckJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
}

fn cmd_calculus(source: &str, p: Option<usize>, config: &RunConfig) -> Result<Outcome, CliError> {
    json_only(config, "calculus verify")?;
    let alg = load_algebra(source)?;
    let p = p.unwrap_or_else(|| default_poly_degree(&alg));
    let mut b = budget(config);
    let report = parametrix_identity_check(&alg, p, &mut b)?;
    let (status, code) = report_status(&report);
    let out = CalculusJson {
        algebra: alg.name().into(),
        max_poly_degree: p,
        status: status.into(),
        checks: checks_json(&report),
        budget: report.interrupted.clone(),
    };
    emit(config, code, to_json(&out))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowJson {
    pub source_degree: usize,
    pub source_weight: usize,
    pub target_degree: usize,
    pub target_weight: usize,
    pub weight_jump: i64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RuminReportJson {
    pub algebra: String,
    pub max_poly_degree: usize,
    pub status: String,
    pub checks: Vec<CheckJson>,
    pub arrows: Vec<ArrowJson>,
    pub neumann_max_terms: usize,
    pub constant_e_dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
}

fn rumin_report(pkg: &RuminPackage, v: &RuminVerification) -> (RuminReportJson, i32) {
    let (status, code) = report_status(&v.report);
    let out = RuminReportJson {
        algebra: pkg.algebra.name().into(),
        max_poly_degree: pkg.max_degree,
        status: status.into(),
        checks: checks_json(&v.report),
        arrows: v
            .arrows
            .iter()
            .map(|a| ArrowJson {
                source_degree: a.source_degree,
                source_weight: a.source_weight,
                target_degree: a.target_degree,
                target_weight: a.target_weight,
                weight_jump: a.weight_jump(),
            })
            .collect(),
        neumann_max_terms: v.neumann_max_terms,
        constant_e_dims: v.constant_e_dims.clone(),
        budget: v.report.interrupted.clone(),
    };
    (out, code)
}

fn cmd_build(source: &str, p: Option<usize>, config: &RunConfig) -> Result<Outcome, CliError> {
    json_only(config, "rumin build")?;
    let alg = load_algebra(source)?;
    let p = p.unwrap_or_else(|| default_poly_degree(&alg));
    let mut b = budget(config);
    let pkg = match RuminPackage::build(&alg, p, &mut b) {
        Ok(pkg) => pkg,
        Err(Error::BudgetExceeded(msg)) => {
            let out = RuminReportJson {
                algebra: alg.name().into(),
                max_poly_degree: p,
                status: "interrupted".into(),
                checks: Vec::new(),
                arrows: Vec::new(),
                neumann_max_terms: 0,
                constant_e_dims: Vec::new(),
                budget: Some(msg),
            };
            return Ok(Outcome { code: EXIT_BUDGET, stdout: to_json(&out), stderr: String::new() });
        }
        Err(e) => return Err(e.into()),
    };
    let v = verify_package(&pkg, &mut b)?;
    let (report, code) = rumin_report(&pkg, &v);
    let package = to_json(&PackageFile::from_package(&pkg));
    match &config.out {
        Some(path) => {
            write_file(path, &package)?;
            Ok(Outcome { code, stdout: to_json(&report), stderr: String::new() })
        }
        None => Ok(Outcome { code, stdout: package, stderr: to_json(&report) }),
    }
}

fn cmd_verify(path: &Path, config: &RunConfig) -> Result<Outcome, CliError> {
    json_only(config, "rumin verify")?;
    let file: PackageFile = serde_json::from_str(&read_file(path)?)?;
    let pkg = file.to_package()?;
    let mut b = budget(config);
    let v = verify_package(&pkg, &mut b)?;
    let (report, code) = rumin_report(&pkg, &v);
    emit(config, code, to_json(&report))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StripRowJson {
    pub degree: usize,
    pub weight: usize,
    pub rank: usize,
    /// `"p/q"`, or `"inf"` when `2w = ν`.
    pub bound: String,
    pub exceptional: bool,
    pub s_one_inside: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StripsJson {
    pub algebra: String,
    pub homogeneous_dimension: usize,
    pub rows: Vec<StripRowJson>,
}

fn cmd_strips(source: &str, config: &RunConfig) -> Result<Outcome, CliError> {
    let alg = load_algebra(source)?;
    check_exterior_size(&alg, &budget(config))?;
    let table = strip_table(&alg)?;
    let text = match config.format {
        Format::Json => to_json(&StripsJson {
            algebra: alg.name().into(),
            homogeneous_dimension: table.homogeneous_dimension,
            rows: table
                .rows
                .iter()
                .map(|r| StripRowJson {
                    degree: r.degree,
                    weight: r.weight,
                    rank: r.rank,
                    bound: r.bound.to_string(),
                    exceptional: r.exceptional,
                    s_one_inside: r.s_one_inside,
                })
                .collect(),
        }),
        Format::Csv => csv_string(
            &["degree", "weight", "rank", "bound_num", "bound_den", "exceptional"],
            table.rows.iter().map(|r| {
                let (num, den) = r.bound.parts();
                vec![r.degree.to_string(), r.weight.to_string(), r.rank.to_string(), num, den, r.exceptional.to_string()]
            }),
        ),
    };
    emit(config, EXIT_OK, text)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TruncateJson {
    pub algebra: String,
    pub dim: usize,
    pub middle_degree: usize,
    pub rows: Vec<BggRowJson>,
    pub degree_totals: Vec<usize>,
    pub full_euler_characteristic: i64,
    pub note: String,
}

fn cmd_truncate(source: &str, config: &RunConfig) -> Result<Outcome, CliError> {
    let alg = load_algebra(source)?;
    check_exterior_size(&alg, &budget(config))?;
    let t = truncation_ranks(&alg)?;
    let text = match config.format {
        Format::Json => to_json(&TruncateJson {
            algebra: alg.name().into(),
            dim: t.dim,
            middle_degree: t.middle_degree,
            rows: t.rows.iter().map(|r| BggRowJson { degree: r.degree, weight: r.weight, rank: r.rank }).collect(),
            degree_totals: t.degree_totals(),
            full_euler_characteristic: t.full_euler_characteristic,
            note: t.note.into(),
        }),
        Format::Csv => csv_string(
            &["degree", "weight", "rank"],
            t.rows.iter().map(|r| vec![r.degree.to_string(), r.weight.to_string(), r.rank.to_string()]),
        ),
    };
    emit(config, EXIT_OK, text)
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct QcJson {
    pub algebra: String,
    pub decision: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

fn qc_algebra(v: &Value) -> Result<GradedLieAlgebra, CliError> {
    match v {
        Value::String(s) => load_algebra(s),
        Value::Object(_) => {
            let file: AlgebraFile = serde_json::from_value(v.clone())?;
            Ok(GradedLieAlgebra::new(&file.to_raw()?)?)
        }
        _ => Err(CliError::Input("algebra must be a builtin id, a path or an inline definition".into())),
    }
}

fn cmd_qc(path: &Path, config: &RunConfig) -> Result<Outcome, CliError> {
    json_only(config, "qc-check")?;
    let file: QcFile = serde_json::from_str(&read_file(path)?)?;
    let alg = qc_algebra(&file.algebra)?;
    let rows = file
        .matrix
        .iter()
        .map(|r| r.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(CliError::Input("matrix must be square".into()));
    }
    let out = match quasiconformal_check(&alg, &DenseMatrix::from_rows(rows))? {
        QcDecision::Yes { t, y } => QcJson {
            algebra: alg.name().into(),
            decision: "yes".into(),
            t: Some(rational_to_json(&t)),
            y: Some(y.iter().map(rational_to_json).collect()),
            obstruction: None,
        },
        QcDecision::No(o) => QcJson {
            algebra: alg.name().into(),
            decision: "no".into(),
            t: None,
            y: None,
            obstruction: Some(o.to_string()),
        },
    };
    emit(config, EXIT_OK, to_json(&out))
}
