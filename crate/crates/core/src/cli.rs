//! `nilherm` command line: validate structures, check metric conditions,
//! tabulate Gauduchon constants and run the family solvers.
//!
//! Exit codes: 0 when every requested check holds, 1 when one fails, 2 on
//! input errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::dsl::{self, DslError, ManifoldFile};
use crate::families::{self, FamilyError};
use crate::hermitian::{
    Condition, ConditionReport, HermitianError, HermitianGeometry, HermitianMetric, Verdict,
};
use crate::scalars::{GaussianRational, ParamSpace, RatScalar};
use crate::structure::{StructureError, ValidatedStructure, ValidationReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{source}")]
    Parse { path: String, source: DslError },
    #[error("unknown metric `{name}`; declared metrics: {available}")]
    UnknownMetric { name: String, available: String },
    #[error("invalid value for --{flag}: {message}")]
    Flag { flag: String, message: String },
    #[error("{0}")]
    Input(String),
}

impl From<HermitianError> for CliError {
    fn from(e: HermitianError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nilherm", version, about = "Invariant Hermitian geometry on complex nilmanifolds")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check d^2 = 0, integrability and nilpotency of the structure equations.
    Validate { file: PathBuf },
    /// Test metric conditions: balanced, skt, astheno, gauduchon, kgauduchon=<k>, all.
    Check {
        file: PathBuf,
        #[arg(long)]
        metric: String,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        condition: Vec<String>,
        /// k for a bare `kgauduchon` condition.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Tabulate the Gauduchon constants C_{F,k}.
    Constants {
        file: PathBuf,
        #[arg(long)]
        metric: String,
    },
    /// Built-in families and their solvers.
    Family {
        #[command(subcommand)]
        kind: FamilyCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// dw^n = a1 w1^cw1 + ... + a_(n-1) w(n-1)^cw(n-1).
    Heisenberg {
        #[arg(long)]
        n: usize,
        /// a_1..a_(n-1), or a_1..a_(n-2) to complete a_(n-1) by balance.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<String>,
    },
    /// dw4 = A w12 + B w13 + C w23 + w1^cw1 + w2^cw2 - 2 w3^cw3.
    Remark {
        #[arg(long = "A", default_value = "0", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", default_value = "0", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", default_value = "0", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricSummary {
    pub name: String,
    /// `None` when the matrix depends on parameters.
    pub positive_definite: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionEntry {
    pub metric: String,
    pub condition: String,
    /// `holds`, `fails` or `constraint`.
    pub verdict: &'static str,
    pub constraints: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityEntry {
    pub metric: String,
    pub identity: &'static str,
    pub k: Option<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantEntry {
    pub numerator: String,
    pub denominator: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub kind: &'static str,
    pub label: Option<String>,
    pub coefficients: Vec<NamedValue>,
    pub solution: Vec<NamedValue>,
    pub skt_obstructed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub manifold: Option<String>,
    pub n: usize,
    pub params: Vec<String>,
    pub validation: Option<ValidationReport>,
    pub metric: Option<MetricSummary>,
    pub conditions: Vec<ConditionEntry>,
    pub identities: Vec<IdentityEntry>,
    pub constants: BTreeMap<usize, ConstantEntry>,
    pub family: Option<FamilyReport>,
    pub warnings: Vec<String>,
    pub holds: bool,
}

impl Report {
    fn new(command: &'static str, manifold: Option<String>, n: usize, params: &ParamSpace) -> Self {
        Report {
            command,
            manifold,
            n,
            params: params.symbols().iter().map(|s| s.name.clone()).collect(),
            validation: None,
            metric: None,
            conditions: Vec::new(),
            identities: Vec::new(),
            constants: BTreeMap::new(),
            family: None,
            warnings: Vec::new(),
            holds: true,
        }
    }

    fn push_condition(&mut self, metric: &str, report: &ConditionReport, params: &ParamSpace) {
        let (verdict, constraints) = match &report.verdict {
            Verdict::Holds => ("holds", Vec::new()),
            Verdict::Fails => ("fails", Vec::new()),
            Verdict::Constraint(cs) => (
                "constraint",
                cs.iter().map(|c| c.display(params).to_string()).collect(),
            ),
        };
        self.holds &= report.holds();
        self.conditions.push(ConditionEntry {
            metric: metric.into(),
            condition: report.condition.to_string(),
            verdict,
            constraints,
            residual: report.certificate.display(params).to_string(),
        });
    }

    fn push_identity(&mut self, metric: &str, identity: &'static str, k: Option<usize>, holds: bool) {
        self.holds &= holds;
        self.identities.push(IdentityEntry {
            metric: metric.into(),
            identity,
            k,
            holds,
        });
    }

    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.manifold.as_deref().unwrap_or("(unnamed)");
        writeln!(out, "{}: {name}, n = {}", self.command, self.n).unwrap();
        if !self.params.is_empty() {
            writeln!(out, "parameters: {}", self.params.join(" ")).unwrap();
        }
        if let Some(v) = &self.validation {
            writeln!(out, "{v}").unwrap();
        }
        if let Some(m) = &self.metric {
            let pd = match m.positive_definite {
                Some(true) => "positive definite",
                Some(false) => "NOT positive definite",
                None => "parametric",
            };
            writeln!(out, "metric {} ({pd})", m.name).unwrap();
        }
        if let Some(f) = &self.family {
            if let Some(label) = &f.label {
                writeln!(out, "family {} ({label})", f.kind).unwrap();
            } else {
                writeln!(out, "family {}", f.kind).unwrap();
            }
            for v in &f.coefficients {
                writeln!(out, "  {} = {}", v.name, v.value).unwrap();
            }
            for v in &f.solution {
                writeln!(out, "  solved {} = {}", v.name, v.value).unwrap();
            }
            if let Some(obstructed) = f.skt_obstructed {
                writeln!(out, "  invariant SKT metrics obstructed: {obstructed}").unwrap();
            }
        }
        for c in &self.conditions {
            write!(out, "{:<8} {:<14} {}", c.metric, c.condition, c.verdict).unwrap();
            if !c.constraints.is_empty() {
                write!(out, ": {} = 0", c.constraints.join(" = 0, ")).unwrap();
            } else if c.verdict == "fails" {
                write!(out, ": residual {}", c.residual).unwrap();
            }
            writeln!(out).unwrap();
        }
        for i in &self.identities {
            let k = i.k.map(|k| format!(" k={k}")).unwrap_or_default();
            let status = if i.holds { "holds" } else { "fails" };
            writeln!(out, "{:<8} {}{k} {status}", i.metric, i.identity).unwrap();
        }
        for (k, c) in &self.constants {
            writeln!(out, "C_{k} = {}", c.value).unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        writeln!(out, "{}", if self.holds { "ALL HOLD" } else { "SOME CHECKS FAIL" }).unwrap();
        out
    }
}

fn load(path: &Path) -> Result<ManifoldFile, CliError> {
    let display = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: display.clone(),
        message: e.to_string(),
    })?;
    dsl::parse_bytes(&bytes).map_err(|source| CliError::Parse {
        path: display,
        source,
    })
}

/// Validates and, if every check passes, upgrades the file's equations.
fn validated(
    file: &ManifoldFile,
    report: &mut Report,
) -> Result<Option<ValidatedStructure>, CliError> {
    let eqs = file.equations()?;
    let v = eqs.validate();
    let passed = v.passed();
    report.holds &= passed;
    report.validation = Some(v);
    if !passed {
        return Ok(None);
    }
    Ok(Some(eqs.into_validated()?))
}

fn named_metric(file: &ManifoldFile, name: &str, report: &mut Report) -> Result<HermitianMetric, CliError> {
    let metric = file.metric(name).ok_or_else(|| CliError::UnknownMetric {
        name: name.into(),
        available: {
            let names: Vec<&str> = file.metric_names().collect();
            if names.is_empty() {
                "none".into()
            } else {
                names.join(", ")
            }
        },
    })??;
    let positive_definite = if metric.params().is_empty() {
        let pd = metric.is_positive_definite()?;
        if !pd {
            report
                .warnings
                .push(format!("metric {name} is not positive definite"));
        }
        Some(pd)
    } else {
        None
    };
    report.metric = Some(MetricSummary {
        name: name.into(),
        positive_definite,
    });
    Ok(metric)
}

/// Requested condition, before expansion of `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionSpec {
    Single(Condition),
    All,
}

pub fn parse_conditions(items: &[String], k: Option<usize>) -> Result<Vec<ConditionSpec>, CliError> {
    let bad = |message: String| CliError::Flag {
        flag: "condition".into(),
        message,
    };
    let mut out = Vec::new();
    for item in items {
        let item = item.trim();
        let spec = match item {
            "balanced" => ConditionSpec::Single(Condition::Balanced),
            "skt" => ConditionSpec::Single(Condition::Skt),
            "astheno" => ConditionSpec::Single(Condition::AsthenoKahler),
            "gauduchon" => ConditionSpec::Single(Condition::Gauduchon),
            "all" => ConditionSpec::All,
            "kgauduchon" => match k {
                Some(k) => ConditionSpec::Single(Condition::KGauduchon(k)),
                None => return Err(bad("`kgauduchon` needs `=<k>` or --k".into())),
            },
            other => match other.strip_prefix("kgauduchon=") {
                Some(k) => ConditionSpec::Single(Condition::KGauduchon(
                    k.parse().map_err(|_| bad(format!("`{k}` is not a valid k")))?,
                )),
                None => return Err(bad(format!("unknown condition `{other}`"))),
            },
        };
        out.push(spec);
    }
    Ok(out)
}

fn run_condition(g: &HermitianGeometry<'_>, c: Condition) -> Result<ConditionReport, HermitianError> {
    match c {
        Condition::Balanced => Ok(g.is_balanced()),
        Condition::Skt => g.is_skt(),
        Condition::AsthenoKahler => g.is_astheno_kahler(),
        Condition::Gauduchon => g.is_gauduchon(),
        Condition::KGauduchon(k) => g.is_k_gauduchon(k),
    }
}

/// Every predicate, the constant relation and the exact identity for all k.
fn run_all(g: &HermitianGeometry<'_>, metric: &str, report: &mut Report) -> Result<(), CliError> {
    let n = g.dim();
    let params = g.params().clone();
    report.push_condition(metric, &g.is_balanced(), &params);
    if n >= 3 {
        report.push_condition(metric, &g.is_skt()?, &params);
        report.push_condition(metric, &g.is_astheno_kahler()?, &params);
    }
    if n >= 2 {
        report.push_condition(metric, &g.is_gauduchon()?, &params);
        for k in 1..n {
            report.push_condition(metric, &g.is_k_gauduchon(k)?, &params);
        }
    }
    if n >= 3 {
        report.push_identity(metric, "constant_relation", None, g.verify_constant_relation()?);
        for k in 1..n {
            report.push_identity(metric, "stokes_identity", Some(k), g.verify_identity_prop1(k)?);
        }
    }
    Ok(())
}

pub fn cmd_validate(path: &Path) -> Result<Report, CliError> {
    let file = load(path)?;
    let mut report = Report::new("validate", file.name.clone(), file.dim, &file.params);
    validated(&file, &mut report)?;
    Ok(report)
}

pub fn cmd_check(path: &Path, metric: &str, conditions: &[ConditionSpec]) -> Result<Report, CliError> {
    let file = load(path)?;
    let mut report = Report::new("check", file.name.clone(), file.dim, &file.params);
    let h = named_metric(&file, metric, &mut report)?;
    let Some(s) = validated(&file, &mut report)? else {
        return Ok(report);
    };
    let g = HermitianGeometry::new(&s, &h)?;
    let params = g.params().clone();
    for spec in conditions {
        match spec {
            ConditionSpec::All => run_all(&g, metric, &mut report)?,
            ConditionSpec::Single(c) => report.push_condition(metric, &run_condition(&g, *c)?, &params),
        }
    }
    Ok(report)
}

fn constant_entry(c: &RatScalar, params: &ParamSpace) -> ConstantEntry {
    match c.as_constant() {
        Some(v) if v.is_real() => ConstantEntry {
            numerator: v.re().numer().to_string(),
            denominator: v.re().denom().to_string(),
            value: v.to_string(),
        },
        _ => ConstantEntry {
            numerator: c.numerator().display(params).to_string(),
            denominator: c.denominator().display(params).to_string(),
            value: c.display(params).to_string(),
        },
    }
}

pub fn cmd_constants(path: &Path, metric: &str) -> Result<Report, CliError> {
    let file = load(path)?;
    let mut report = Report::new("constants", file.name.clone(), file.dim, &file.params);
    let h = named_metric(&file, metric, &mut report)?;
    let Some(s) = validated(&file, &mut report)? else {
        return Ok(report);
    };
    let g = HermitianGeometry::new(&s, &h)?;
    let params = g.params().clone();
    for k in 1..file.dim {
        let c = g.gauduchon_constant(k)?;
        report.constants.insert(k, constant_entry(&c, &params));
    }
    if file.dim >= 3 {
        report.push_identity(metric, "constant_relation", None, g.verify_constant_relation()?);
    }
    Ok(report)
}

fn rational_flag(flag: &str, text: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(text.trim()).map_err(|e| CliError::Flag {
        flag: flag.into(),
        message: format!("`{text}`: {e}"),
    })
}

fn gaussian_flag(flag: &str, text: &str) -> Result<GaussianRational, CliError> {
    dsl::parse_constant(text).map_err(|e| CliError::Flag {
        flag: flag.into(),
        message: format!("`{text}`: {}", e.kind),
    })
}

fn named(name: impl Into<String>, value: impl ToString) -> NamedValue {
    NamedValue {
        name: name.into(),
        value: value.to_string(),
    }
}

pub fn cmd_family_heisenberg(n: usize, a: &[String]) -> Result<Report, CliError> {
    let mut a: Vec<BigRational> = a
        .iter()
        .map(|s| rational_flag("a", s))
        .collect::<Result<_, _>>()?;
    let mut warnings = Vec::new();
    if n >= 3 && a.len() + 2 == n {
        let mut pattern: Vec<Option<BigRational>> = a.iter().cloned().map(Some).collect();
        pattern.push(None);
        let solved = families::solve_balanced(&pattern)?;
        let (j, v) = solved.solved.ok_or_else(|| CliError::Input("cannot complete a".into()))?;
        warnings.push(format!("a{j} = {v} chosen so that the canonical metric is balanced"));
        a.push(v);
    }
    let build = families::build_heisenberg(n, &a)?;
    let params = build.structure.params().clone();
    let mut report = Report::new("family", Some(families::heisenberg_label(n)), n, &params);
    report.validation = Some(build.structure.validate());
    report.warnings = warnings;
    report.warnings.extend(build.warnings.iter().cloned());

    let canonical = HermitianMetric::canonical(n);
    let g = HermitianGeometry::new(&build.structure, &canonical)?;
    report.push_condition("Ftilde", &g.is_balanced(), &params);

    let mut solution = Vec::new();
    match families::solve_astheno_diagonal(n, &a) {
        Ok(sol) => {
            let g = HermitianGeometry::new(&sol.structure, &sol.metric)?;
            report.push_condition("Fast", &g.is_astheno_kahler()?, &params);
            for k in 1..n {
                report.push_condition("Fast", &g.is_k_gauduchon(k)?, &params);
            }
            solution = sol
                .b
                .iter()
                .enumerate()
                .map(|(j, b)| named(format!("b{}", j + 1), b))
                .collect();
        }
        Err(FamilyError::DimensionThree) => report
            .warnings
            .push(FamilyError::DimensionThree.to_string()),
        Err(e @ (FamilyError::Unbalanced(_) | FamilyError::NonPositive { .. })) => {
            report.holds = false;
            report.warnings.push(format!("no diagonal astheno-Kähler solution: {e}"));
        }
        Err(e) => return Err(e.into()),
    }

    let nonzero = a.iter().filter(|x| !x.is_zero()).count();
    let obs = families::skt_obstruction_heisenberg(n, &a)?;
    report.push_identity("generic", "skt_obstruction_formula", None, obs.matches_contract());
    report.family = Some(FamilyReport {
        kind: "heisenberg",
        label: Some(families::heisenberg_label(n)),
        coefficients: a
            .iter()
            .enumerate()
            .map(|(j, v)| named(format!("a{}", j + 1), v))
            .collect(),
        solution,
        skt_obstructed: (nonzero >= 2).then(|| obs.obstructs()),
    });
    Ok(report)
}

pub fn cmd_family_remark(
    a: &str,
    b: &str,
    c: &str,
    alpha: &str,
    beta: &str,
) -> Result<Report, CliError> {
    let (a, b, c) = (gaussian_flag("A", a)?, gaussian_flag("B", b)?, gaussian_flag("C", c)?);
    let alpha = rational_flag("alpha", alpha)?;
    let beta = rational_flag("beta", beta)?;
    let sol = families::solve_astheno_remark(&a, &b, &c, &alpha, &beta)?;
    let s = &sol.structure;
    let params = s.params().clone();
    let mut report = Report::new("family", Some("X_{A,B,C}".into()), 4, &params);
    report.validation = Some(s.validate());

    let ones = HermitianMetric::canonical(4);
    report.push_condition("F111", &HermitianGeometry::new(s, &ones)?.is_balanced(), &params);
    let g = HermitianGeometry::new(s, &sol.metric)?;
    report.push_condition("Fsolved", &g.is_astheno_kahler()?, &params);
    for k in 1..4 {
        report.push_condition("Fsolved", &g.is_k_gauduchon(k)?, &params);
    }
    report.family = Some(FamilyReport {
        kind: "remark",
        label: None,
        coefficients: vec![
            named("A", &a),
            named("B", &b),
            named("C", &c),
            named("alpha", &alpha),
            named("beta", &beta),
        ],
        solution: vec![named("gamma", &sol.gamma)],
        skt_obstructed: None,
    });
    Ok(report)
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Check {
            file,
            metric,
            condition,
            k,
        } => cmd_check(file, metric, &parse_conditions(condition, *k)?),
        Command::Constants { file, metric } => cmd_constants(file, metric),
        Command::Family { kind } => match kind {
            FamilyCommand::Heisenberg { n, a } => cmd_family_heisenberg(*n, a),
            FamilyCommand::Remark {
                a,
                b,
                c,
                alpha,
                beta,
            } => cmd_family_remark(a, b, c, alpha, beta),
        },
    }
}

/// Parses `args` (including the program name), writes the report and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.output {
                OutputFormat::Json => report.to_json() + "\n",
                OutputFormat::Text => report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
