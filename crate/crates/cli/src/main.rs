use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sylow_chars::chars::{gamma_with, induced_value, BitSeq, CharSpec, Mode, Row};
use sylow_chars::classify::{induced_equal, WitnessJson};
use sylow_chars::rational::RationalJson;
use sylow_chars::sylow::{CycleType, DEFAULT_BUDGET};
use sylow_chars::verify::{certify_theorem_a, run_property_suites, sweep_gamma, SuiteConfig, VerificationReport};
use sylow_chars::{Error, ExactRational};

/// Exact values of induced linear characters of Sylow p-subgroups of
/// symmetric groups.
///
/// Bit rows are written leftmost bit first: `--u 10` means u_1 = 1, u_2 = 0.
#[derive(Parser, Debug)]
#[command(name = "sylow-chars", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sum of one character of P_{p^k} over a cycle type of p-power cycles.
    Gamma(GammaArgs),
    /// Value of an induced character of S_n at a cycle type.
    Induce(InduceArgs),
    /// Decide whether two characters induce to the same character of S_n.
    Classify(ClassifyArgs),
    /// Run a verification campaign and write its report.
    Verify {
        #[command(subcommand)]
        campaign: Campaign,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest number of group elements an enumeration may visit.
    #[arg(long, env = "SYLOWCHAR_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct GammaArgs {
    #[arg(long)]
    p: u32,
    /// Length of `u`; checked against it when given.
    #[arg(long)]
    k: Option<u32>,
    /// Cycle levels: increasing, or a pair `l,l`.
    #[arg(long, value_delimiter = ',', required = true)]
    levels: Vec<u32>,
    #[arg(long)]
    u: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct InduceArgs {
    #[arg(long)]
    p: u32,
    /// Degree; defaults to (number of rows)·p^(row length).
    #[arg(long)]
    n: Option<u64>,
    /// Rows for the factors of positive level, in increasing level order.
    #[arg(long, value_delimiter = ',', required = true)]
    u: Vec<String>,
    /// Cycle lengths, fixed points omitted.
    #[arg(long, value_delimiter = ',', required = true)]
    cycle_type: Vec<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    t: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand, Debug)]
enum Campaign {
    /// Closed form, recursion and enumeration on every row and covered type.
    Gamma {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Induced equality against conjugacy for every concrete character of P_n.
    TheoremA {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Seeded property suites over the combinatorial identities.
    Suites {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long, default_value_t = 40)]
        specs: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[command(flatten)]
    common: Common,
    /// Include wall-clock time in the JSON report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Closed,
    Recursive,
    Oracle,
    Auto,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Closed => Mode::Closed,
            ModeArg::Recursive => Mode::Recursive,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::Auto => Mode::Auto,
        }
    }
}

/// Failure with its exit code: 1 internal, 2 usage, 3 budget.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Internal(_) => 1,
            e if e.is_budget() => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn rational(r: &ExactRational) -> Value {
    serde_json::to_value(RationalJson::from(r)).expect("rational serializes")
}

fn parse_rows(rows: &[String]) -> Result<Vec<BitSeq>, Failure> {
    Ok(rows.iter().map(|r| BitSeq::parse(r)).collect::<Result<_, _>>()?)
}

fn build_spec(p: u32, n: Option<u64>, rows: &[String]) -> Result<CharSpec, Failure> {
    let rows = parse_rows(rows)?;
    Ok(match n {
        Some(n) => CharSpec::for_degree(p, n, rows.into_iter().map(Row::new).collect())?,
        None => CharSpec::new(p, rows)?,
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(o) if o.contains_key("num") && o.contains_key("den") => {
            format!("{}/{}", o["num"].as_str().unwrap_or(""), o["den"].as_str().unwrap_or(""))
        }
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn render(record: Map<String, Value>, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&Value::Object(record)).expect("json") + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let internal = |e: csv::Error| Failure {
                code: 1,
                message: e.to_string(),
            };
            w.write_record(record.keys()).map_err(internal)?;
            w.write_record(record.values().map(cell)).map_err(internal)?;
            let bytes = w.into_inner().map_err(|e| Failure {
                code: 1,
                message: e.to_string(),
            })?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
        Format::Table => {
            let width = record.keys().map(String::len).max().unwrap_or(0);
            Ok(record.iter().map(|(k, v)| format!("{k:<width$}  {}\n", cell(v))).collect())
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_gamma(args: GammaArgs) -> Result<(), Failure> {
    let u = BitSeq::parse(&args.u)?;
    if let Some(k) = args.k {
        if k as usize != u.len() {
            return Err(Error::Domain(format!("--k {k} but u = {u} has length {}", u.len())).into());
        }
    }
    let (value, mode) = gamma_with(args.p, &args.levels, &u, args.mode.into(), args.common.budget)?;
    let mut record = Map::new();
    record.insert("p".into(), json!(args.p));
    record.insert("k".into(), json!(u.len()));
    record.insert("levels".into(), json!(args.levels));
    record.insert("u".into(), json!(u.to_string()));
    record.insert("value".into(), rational(&value));
    record.insert("mode".into(), json!(mode.as_str()));
    emit(&render(record, args.common.format)?, &args.common.out)
}

fn cmd_induce(args: InduceArgs) -> Result<(), Failure> {
    let spec = build_spec(args.p, args.n, &args.u)?;
    let parts: Vec<u64> = args.cycle_type.iter().copied().filter(|&c| c > 1).collect();
    let ct = CycleType::with_fixed_points(spec.n(), &parts)?;
    let r = induced_value(&spec, &ct, args.mode.into(), args.common.budget)?;
    let mut record = Map::new();
    record.insert("p".into(), json!(spec.p()));
    record.insert("n".into(), json!(spec.n()));
    record.insert("u".into(), json!(args.u));
    record.insert("cycle_type".into(), json!(ct.moved_parts()));
    record.insert("fixed_points".into(), json!(ct.fixed_points()));
    record.insert("class_sum".into(), rational(&r.class_sum));
    record.insert("value".into(), rational(&r.value));
    record.insert("mode".into(), json!(r.mode.as_str()));
    emit(&render(record, args.common.format)?, &args.common.out)
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), Failure> {
    let s = build_spec(args.p, args.n, &args.s)?;
    let t = build_spec(args.p, args.n, &args.t)?;
    let c = induced_equal(&s, &t)?;
    let mut record = Map::new();
    record.insert("n_conjugate".into(), json!(c.n_conjugate));
    record.insert("induced_equal".into(), json!(c.induced_equal));
    let witness = c.witness.as_ref().map(WitnessJson::from);
    record.insert("witness".into(), serde_json::to_value(witness).expect("witness serializes"));
    emit(&render(record, args.common.format)?, &args.common.out)
}

fn cmd_verify(campaign: Campaign) -> Result<(), Failure> {
    let start = Instant::now();
    let (mut report, args): (VerificationReport, ReportArgs) = match campaign {
        Campaign::Gamma { p, kmax, report } => (sweep_gamma(p, kmax, report.common.budget)?, report),
        Campaign::TheoremA { p, n, report } => (certify_theorem_a(p, n, report.common.budget)?, report),
        Campaign::Suites {
            seed,
            instances,
            pairs,
            specs,
            report,
        } => {
            let config = SuiteConfig {
                seed,
                replace_instances: instances,
                nonzero_specs: specs,
                part2_pairs: pairs,
                budget: report.common.budget,
            };
            (run_property_suites(&config)?, report)
        }
    };
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    let text = match args.common.format {
        Format::Json => report.to_json(args.timing) + "\n",
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    };
    emit(&text, &args.common.out)?;
    eprintln!(
        "{}: {} pass, {} fail, {} skipped",
        report.campaign, report.totals.pass, report.totals.fail, report.totals.skipped
    );
    match &report.first_failure {
        None => Ok(()),
        Some(case) => Err(Failure {
            code: 1,
            message: format!("first failure {}: {}", case.id, case.detail),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gamma(a) => cmd_gamma(a),
        Command::Induce(a) => cmd_induce(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Verify { campaign } => cmd_verify(campaign),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
