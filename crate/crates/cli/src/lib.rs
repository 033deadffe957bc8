//! The `redsyl` command line: argument parsing, command dispatch and rendering.
//!
//! Every command produces one JSON document; `--format text` renders that
//! document line by line. Exit codes: 0 ok, 1 usage or configuration error,
//! 2 a failed check, 3 a resource budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use redsyl::analysis::{self, checks, AnalysisOptions, AnalysisReport, Depth, ExactLimits, Status};
use redsyl::arith::{big_pow, is_prime, prime_power, smallest_prime_power_1modp};
use redsyl::instance::{default_grid, Construction, InstanceSpec};
use redsyl::semidirect::{SemidirectGroup, DEFAULT_ENUMERATION_CEILING};
use redsyl::{catalog, Error, LinearAction, PGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const TABLE_PMAX: u64 = 101;

#[derive(Parser, Debug)]
#[command(name = "redsyl", version, about = "Semidirect products whose Sylow p-subgroup is redundant")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an instance and report ν_p, |G_p|, redundancy and the bound suite.
    Construct(InstanceArgs),
    /// Run every check: covers, Casolo, Gheri, bounds and brute-force cross-checks.
    Verify(InstanceArgs),
    /// Transversal, common-transversal, greedy and exact Sylow covers.
    Cover(InstanceArgs),
    /// λ_G(H)·|N_G(P):P| = |C_N(H)| for every cyclic H ≤ P.
    Casolo(InstanceArgs),
    /// ν_p^{|P|/p} against the product of λ_G(x) over x ∈ P.
    Gheri(InstanceArgs),
    /// Smallest prime power q ≡ 1 mod p and q^{p+1}, for primes p ≤ pmax.
    Table(TableArgs),
    /// Run a grid of instances.
    Scan(ScanArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CommonArgs {
    /// Largest ν_p, coset count or |N| ever enumerated.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CEILING)]
    pub ceiling: u64,
    /// Node budget for exact branch-and-bound searches.
    #[arg(long, default_value_t = ExactLimits::default().nodes)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InstanceArgs {
    /// Regular module modulo the trivial submodule over GF(q); needs --q.
    #[arg(long, conflicts_with = "thm2", required_unless_present = "thm2", requires = "q")]
    pub thm1: bool,
    /// Sum of p+1 one-dimensional modules over the smallest q ≡ 1 mod p.
    #[arg(long)]
    pub thm2: bool,
    /// Catalog name, e.g. C2^2, Q8, C4xC2, D8×C2.
    #[arg(long, conflicts_with = "group_file", required_unless_present = "group_file")]
    pub group: Option<String>,
    /// JSON multiplication table: {"p", "order", "table", "name"}.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    #[arg(long, conflicts_with = "thm2")]
    pub q: Option<u64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TableArgs {
    #[arg(long, default_value_t = 29, value_parser = clap::value_parser!(u64).range(2..=TABLE_PMAX))]
    pub pmax: u64,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ScanArgs {
    /// Comma-separated catalog names.
    #[arg(long, value_delimiter = ',')]
    pub groups: Vec<String>,
    /// Comma-separated primes; each gives a Thm1 instance per group.
    #[arg(long, value_delimiter = ',')]
    pub qs: Vec<u64>,
    /// Also run the Thm2 instance of each group.
    #[arg(long)]
    pub thm2: bool,
    /// Append the built-in grid.
    #[arg(long)]
    pub default_grid: bool,
    /// Run the full suite per instance instead of the basic one.
    #[arg(long)]
    pub full: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// What a command produced: the text to emit and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    /// The file the output was written to, instead of standard output.
    pub written: Option<PathBuf>,
}

fn error_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_USAGE
    }
}

pub fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

/// Parses `args` (including the program name) and runs the command.
/// With `--out` the output is also written to that file.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, output: e.to_string(), written: None },
                _ => Outcome {
                    code: EXIT_USAGE,
                    output: pretty(&error_json("Usage", e.to_string().trim_end())),
                    written: None,
                },
            };
        }
    };
    let common = match &cli.command {
        Command::Construct(a) | Command::Verify(a) | Command::Cover(a) | Command::Casolo(a) | Command::Gheri(a) => a.common.clone(),
        Command::Table(a) => a.common.clone(),
        Command::Scan(a) => a.common.clone(),
    };
    let (code, doc) = match dispatch(&cli.command) {
        Ok(v) => v,
        Err(e) => (error_code(&e), error_json(e.kind(), &e.to_string())),
    };
    let output = match common.format {
        Format::Json => pretty(&doc),
        Format::Text => render_text(&doc),
    };
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &output) {
            let msg = format!("{}: {e}", path.display());
            return Outcome { code: EXIT_USAGE, output: pretty(&error_json("Io", &msg)), written: None };
        }
    }
    Outcome { code, output, written: common.out }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: &Command) -> redsyl::Result<(i32, Value)> {
    match cmd {
        Command::Construct(a) => instance_report(a, "construct", Depth::Basic),
        Command::Verify(a) => instance_report(a, "verify", Depth::Full),
        Command::Cover(a) => cover_command(a),
        Command::Casolo(a) => casolo_command(a),
        Command::Gheri(a) => gheri_command(a),
        Command::Table(a) => Ok((EXIT_OK, table(a.pmax, &resolved_config("table", a)))),
        Command::Scan(a) => scan(a),
    }
}

fn resolved_config(command: &str, args: &impl Serialize) -> Value {
    let mut v = serde_json::to_value(args).expect("arguments serialize");
    v["command"] = json!(command);
    v
}

fn load_group(a: &InstanceArgs) -> redsyl::Result<PGroup> {
    match (&a.group, &a.group_file) {
        (Some(name), _) => catalog(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            PGroup::from_json(&text)
        }
        (None, None) => Err(Error::Parse("one of --group and --group-file is required".into())),
    }
}

fn construction(a: &InstanceArgs) -> redsyl::Result<Construction> {
    match (a.thm1, a.thm2, a.q) {
        (true, false, Some(q)) => Ok(Construction::Thm1 { q }),
        (false, true, None) => Ok(Construction::Thm2),
        _ => Err(Error::Parse("choose --thm1 --q <prime> or --thm2".into())),
    }
}

fn build(a: &InstanceArgs) -> redsyl::Result<LinearAction> {
    construction(a)?.build(&load_group(a)?)
}

fn options(common: &CommonArgs, depth: Depth) -> AnalysisOptions {
    AnalysisOptions {
        depth,
        ceiling: common.ceiling,
        exact: ExactLimits { nodes: common.budget, ..ExactLimits::default() },
        ..AnalysisOptions::default()
    }
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Ok => EXIT_OK,
        Status::Counterexample => EXIT_COUNTEREXAMPLE,
    }
}

fn report(a: &InstanceArgs, command: &str, depth: Depth) -> redsyl::Result<AnalysisReport> {
    let mut opts = options(&a.common, depth);
    if command == "cover" {
        opts.list_limit = usize::MAX;
    }
    let mut r = analysis::analyze(build(a)?, &opts)?;
    r.config = json!({ "command": command, "arguments": resolved_config(command, a), "analysis": r.config });
    Ok(r)
}

fn instance_report(a: &InstanceArgs, command: &str, depth: Depth) -> redsyl::Result<(i32, Value)> {
    let r = report(a, command, depth)?;
    Ok((status_code(r.status), serde_json::to_value(&r).expect("reports serialize")))
}

/// Header fields shared by the single-section commands.
fn header(r: &AnalysisReport) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(r.schema));
    m.insert("version".into(), json!(r.version));
    m.insert("config".into(), r.config.clone());
    m.insert("instance".into(), serde_json::to_value(&r.instance).expect("serializes"));
    m
}

fn cover_command(a: &InstanceArgs) -> redsyl::Result<(i32, Value)> {
    let r = report(a, "cover", Depth::Full)?;
    let mut m = header(&r);
    m.insert("sylow_count".into(), json!(r.sylow_count.to_string()));
    m.insert("covers".into(), serde_json::to_value(&r.covers).expect("serializes"));
    let cover_checks: Vec<_> = r
        .bounds
        .iter()
        .filter(|b| ["transversal", "improved", "exact", "greedy", "redundant_cover"].iter().any(|k| b.name.starts_with(k)))
        .collect();
    m.insert("bounds".into(), serde_json::to_value(&cover_checks).expect("serializes"));
    let failures: Vec<&String> = r.failures.iter().filter(|f| f.contains("cover") || cover_checks.iter().any(|b| f.ends_with(b.name))).collect();
    let ok = failures.is_empty();
    m.insert("failures".into(), json!(failures));
    m.insert("status".into(), json!(if ok { "ok" } else { "counterexample" }));
    Ok((if ok { EXIT_OK } else { EXIT_COUNTEREXAMPLE }, Value::Object(m)))
}

fn casolo_command(a: &InstanceArgs) -> redsyl::Result<(i32, Value)> {
    let opts = options(&a.common, Depth::Basic);
    let mut r = report(a, "casolo", Depth::Basic)?;
    let g = SemidirectGroup::with_ceiling(build(a)?, opts.ceiling);
    let c = checks::check_casolo(&g, opts.sylow_limit);
    r.casolo = Some(c.clone());
    let mut m = header(&r);
    m.insert("casolo".into(), serde_json::to_value(&c).expect("serializes"));
    m.insert("status".into(), json!(if c.verified { "ok" } else { "counterexample" }));
    Ok((if c.verified { EXIT_OK } else { EXIT_COUNTEREXAMPLE }, Value::Object(m)))
}

fn gheri_command(a: &InstanceArgs) -> redsyl::Result<(i32, Value)> {
    let r = report(a, "gheri", Depth::Basic)?;
    let mut m = header(&r);
    m.insert("lambda".into(), serde_json::to_value(&r.lambda).expect("serializes"));
    m.insert("gheri".into(), serde_json::to_value(&r.gheri).expect("serializes"));
    let ok = r.gheri.satisfied;
    m.insert("status".into(), json!(if ok { "ok" } else { "counterexample" }));
    Ok((if ok { EXIT_OK } else { EXIT_COUNTEREXAMPLE }, Value::Object(m)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: u64,
    pub q: u64,
    /// q^{p+1} = base^exponent with base prime.
    pub base: u64,
    pub exponent: u64,
    pub power: String,
    pub value: String,
}

pub fn table_rows(pmax: u64) -> Vec<TableRow> {
    (2..=pmax)
        .filter(|&p| is_prime(p))
        .map(|p| {
            let q = smallest_prime_power_1modp(p);
            let (base, k) = prime_power(q).expect("q is a prime power");
            let exponent = k as u64 * (p + 1);
            TableRow { p, q, base, exponent, power: format!("{base}^{exponent}"), value: big_pow(base, exponent).to_string() }
        })
        .collect()
}

fn table(pmax: u64, config: &Value) -> Value {
    json!({
        "schema": "table_v1",
        "version": analysis::report::VERSION,
        "config": config,
        "rows": table_rows(pmax),
    })
}

#[derive(Debug, Clone, Serialize)]
struct ScanRow {
    instance: String,
    group: String,
    #[serde(flatten)]
    construction: Construction,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sylow_count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_elements: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    redundant: Option<bool>,
    status: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
}

fn scan_grid(a: &ScanArgs) -> Vec<InstanceSpec> {
    let mut grid = Vec::new();
    for g in &a.groups {
        grid.extend(a.qs.iter().map(|&q| InstanceSpec::thm1(g, q)));
        if a.thm2 {
            grid.push(InstanceSpec::thm2(g));
        }
    }
    if a.default_grid {
        grid.extend(default_grid());
    }
    grid
}

fn scan(a: &ScanArgs) -> redsyl::Result<(i32, Value)> {
    let grid = scan_grid(a);
    let depth = if a.full { Depth::Full } else { Depth::Basic };
    let opts = options(&a.common, depth);
    let rows: Vec<(ScanRow, Option<(u64, BigUint)>)> = grid
        .par_iter()
        .map(|spec| {
            let base = ScanRow {
                instance: spec.label(),
                group: spec.group.clone(),
                construction: spec.construction,
                p: None,
                sylow_count: None,
                p_elements: None,
                redundant: None,
                status: String::new(),
                failures: Vec::new(),
                error: None,
            };
            match spec.build().and_then(|action| analysis::analyze(action, &opts)) {
                Ok(r) => {
                    let min = r.redundant.then(|| (r.instance.p, r.sylow_count.clone()));
                    let row = ScanRow {
                        p: Some(r.instance.p),
                        sylow_count: Some(r.sylow_count.to_string()),
                        p_elements: Some(r.p_elements.total.to_string()),
                        redundant: Some(r.redundant),
                        status: match r.status {
                            Status::Ok => "ok".into(),
                            Status::Counterexample => "counterexample".into(),
                        },
                        failures: r.failures,
                        ..base
                    };
                    (row, min)
                }
                Err(e) => (ScanRow { status: "error".into(), error: Some(error_json(e.kind(), &e.to_string())["error"].clone()), ..base }, None),
            }
        })
        .collect();

    // minimum ν_p over redundant instances, per prime, first occurrence in grid order
    let mut minimum: Vec<(u64, BigUint, String)> = Vec::new();
    for (row, m) in &rows {
        if let Some((p, nu)) = m {
            match minimum.iter_mut().find(|(mp, _, _)| mp == p) {
                Some(entry) if *nu < entry.1 => *entry = (*p, nu.clone(), row.instance.clone()),
                Some(_) => {}
                None => minimum.push((*p, nu.clone(), row.instance.clone())),
            }
        }
    }
    minimum.sort_by_key(|(p, _, _)| *p);
    let counterexample = rows.iter().any(|(r, _)| r.status == "counterexample");
    let doc = json!({
        "schema": "scan_v1",
        "version": analysis::report::VERSION,
        "config": json!({ "command": "scan", "arguments": resolved_config("scan", a), "analysis": opts }),
        "results": rows.iter().map(|(r, _)| r).collect::<Vec<_>>(),
        "minimum": minimum.iter().map(|(p, nu, inst)| json!({ "p": p, "sylow_count": nu.to_string(), "instance": inst })).collect::<Vec<_>>(),
    });
    Ok((if counterexample { EXIT_COUNTEREXAMPLE } else { EXIT_OK }, doc))
}

/// Renders a JSON document as `path: value` lines in document order.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, "", v);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|i| i.as_array().is_some_and(|a| a.iter().all(|x| x.is_number()))) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")
        )),
        _ => None,
    }
}

fn render_into(out: &mut String, path: &str, v: &Value) {
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{path}: {s}");
        return;
    }
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                render_into(out, &join(k), child);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                render_into(out, &join(&i.to_string()), child);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
