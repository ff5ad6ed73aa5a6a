//! `lexconn`: compute connectivity invariants, build lexicographic products,
//! and run theorem verification sweeps.
//!
//! Exit codes: 0 success, 1 discrepancies found, 2 input error, 64 usage.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lexconn::cuts::{self, Reading};
use lexconn::harness::{self, InstanceFamily, Mode, TheoremId, VerificationReport};
use lexconn::invariants::{Invariant, InvariantReport};
use lexconn::io::{parse_edge_list, parse_graph6, serialize_graph6};
use lexconn::lexprod;
use lexconn::{Error, Graph};

/// Products up to this size also get the exhaustive κ oracle in reports.
const REPORT_ORACLE_MAX_N: usize = 20;

#[derive(Parser)]
#[command(name = "lexconn", version, about = "Connectivity invariants of graphs and lexicographic products")]
struct Cli {
    /// Output format for data written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    G6,
    El,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one graph.
    Compute(ComputeArgs),
    /// Write the graph6 encoding of G1 ∘ G2.
    Product(ProductArgs),
    /// Check a closed form against the exhaustive oracles over a family.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ComputeArgs {
    graph: PathBuf,
    /// Comma-separated subset of k,k1,super,delta,v0.
    #[arg(long, default_value = "k,k1,super,delta,v0")]
    invariants: String,
    /// Input format; sniffed from the .g6 / .el extension when omitted.
    #[arg(long, value_enum)]
    format_in: Option<InputFormat>,
    /// Also print a minimum cut for k and a minimum k1-cut for k1.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct ProductArgs {
    g1: PathBuf,
    g2: PathBuf,
    /// Destination for the graph6 line.
    out: PathBuf,
    #[arg(long, value_enum)]
    format_in: Option<InputFormat>,
    /// Print size and connectivity of the product to stdout.
    #[arg(long)]
    report: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value_t = 4)]
    n1_max: usize,
    #[arg(long, default_value_t = 2)]
    n2_max: usize,
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability for random mode, as a decimal or a fraction `a/b`.
    #[arg(long, default_value = "1/2")]
    p: String,
    #[arg(long, default_value = "min_cuts_only")]
    reading: String,
    /// Omit wall_time_ms so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Input(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(m) => CliError::Usage(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("lexconn: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Compute(args) => compute(cli, args),
        Command::Product(args) => product(cli, args),
        Command::Verify(args) => verify(cli, args),
    }
}

fn load_graph(path: &Path, format: Option<InputFormat>) -> Result<Graph, CliError> {
    let format = match format {
        Some(f) => f,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => InputFormat::G6,
            Some("el") => InputFormat::El,
            _ => {
                return Err(CliError::Input(format!(
                    "{}: cannot tell the format from the extension; use --format-in g6|el",
                    path.display()
                )))
            }
        },
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let parsed = match format {
        InputFormat::G6 => {
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            parse_graph6(line.trim())
        }
        InputFormat::El => parse_edge_list(&text),
    };
    parsed.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes `(name, value)` rows in the selected format.
fn emit(format: OutputFormat, json: serde_json::Value, fields: &[(&str, String)]) {
    match format {
        OutputFormat::Json => println!("{json}"),
        OutputFormat::Csv => {
            let names: Vec<&str> = fields.iter().map(|(n, _)| *n).collect();
            let values: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
            println!("{}", names.join(","));
            println!("{}", values.join(","));
        }
        OutputFormat::Plain => {
            for (name, value) in fields {
                println!("{name} {value}");
            }
        }
    }
}

fn compute(cli: &Cli, args: &ComputeArgs) -> Result<u8, CliError> {
    let mut which = Vec::new();
    for name in args.invariants.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let inv: Invariant = name.parse()?;
        if !which.contains(&inv) {
            which.push(inv);
        }
    }
    if which.is_empty() {
        return Err(CliError::Usage("no invariants requested".into()));
    }
    let g = load_graph(&args.graph, args.format_in)?;
    let report = InvariantReport::compute(&g, &which, args.witness)?;
    let json = serde_json::to_value(&report).expect("report serializes");
    emit(cli.format, json, &report.fields());
    Ok(0)
}

fn product(cli: &Cli, args: &ProductArgs) -> Result<u8, CliError> {
    let g1 = load_graph(&args.g1, args.format_in)?;
    let g2 = load_graph(&args.g2, args.format_in)?;
    let p = lexprod::lex_product(&g1, &g2)?;
    fs::write(&args.out, format!("{}\n", serialize_graph6(&p)))
        .map_err(|e| CliError::Input(format!("{}: {e}", args.out.display())))?;
    if !cli.quiet {
        eprintln!(
            "wrote {} ({} vertices, {} edges)",
            args.out.display(),
            p.n(),
            p.edge_count()
        );
    }
    if args.report {
        let kappa_formula = lexprod::lex_connectivity(&g1, &g2)?;
        let kappa_oracle = if p.n() <= REPORT_ORACLE_MAX_N {
            Some(cuts::vertex_connectivity_oracle(&p)?)
        } else {
            None
        };
        let mut json = json!({
            "n": p.n(),
            "m_edges": p.edge_count(),
            "kappa_formula": kappa_formula,
        });
        let mut fields = vec![
            ("n", p.n().to_string()),
            ("m_edges", p.edge_count().to_string()),
            ("kappa_formula", kappa_formula.to_string()),
        ];
        if let Some(k) = kappa_oracle {
            json["kappa_oracle"] = k.into();
            fields.push(("kappa_oracle", k.to_string()));
        }
        emit(cli.format, json, &fields);
    }
    Ok(0)
}

fn parse_probability(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("invalid probability {text:?}"));
    let p = match text.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0.0 {
                return Err(bad());
            }
            a / b
        }
        None => text.trim().parse().map_err(|_| bad())?,
    };
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(bad())
    }
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<u8, CliError> {
    let theorem: TheoremId = args.theorem.parse()?;
    let reading: Reading = args.reading.parse()?;
    let mode: Mode = args.mode.parse()?;
    let family = match mode {
        Mode::Exhaustive => InstanceFamily::exhaustive(args.n1_max, args.n2_max),
        Mode::Random => InstanceFamily::random(
            args.n1_max,
            args.n2_max,
            args.samples,
            args.seed,
            parse_probability(&args.p)?,
        ),
    };
    let mut report = harness::verify_theorem(theorem, &family, reading)?;
    if args.no_timing {
        report = report.without_timing();
    }
    if !cli.quiet {
        eprintln!(
            "{}: {} checked, {} skipped, {} discrepancies",
            theorem,
            report.instances_checked,
            report.skipped,
            report.discrepancies.len()
        );
    }
    let json = serde_json::to_value(&report).expect("report serializes");
    emit(cli.format, json, &summary_fields(&report));
    Ok(if report.discrepancies.is_empty() { 0 } else { 1 })
}

fn summary_fields(r: &VerificationReport) -> Vec<(&'static str, String)> {
    let opt = |v: Option<u64>| v.map_or_else(String::new, |v| v.to_string());
    vec![
        ("theorem_id", r.theorem_id.to_string()),
        ("reading", r.reading.to_string()),
        ("instances_checked", r.instances_checked.to_string()),
        ("skipped", r.skipped.to_string()),
        ("agreements", r.agreements.to_string()),
        ("discrepancies", r.discrepancies.len().to_string()),
        ("seed", opt(r.seed)),
        ("wall_time_ms", opt(r.wall_time_ms)),
    ]
}
