//! Command-line front end: `tsnorm norm` evaluates a single vector,
//! `tsnorm experiment` runs a named regression grid.
//!
//! Exit codes: 0 success, 1 failing experiment cells, 2 parse/usage
//! errors, 3 engine/mode mismatches.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tsnorm::experiments::{self, ExperimentError, ExperimentOpts};
use tsnorm::expr::parse_vector_expr;
use tsnorm::report::ExperimentReport;
use tsnorm::scalar::{format_float, ScalarMode};
use tsnorm::spaces::{xk_norm, NormResult, SeqSpace, XkConfig};
use tsnorm::vector::{GridVector, SparseVector};

#[derive(Parser)]
#[command(name = "tsnorm", about = "Norms in Tsirelson-type sequence spaces", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the norm of one vector.
    Norm(NormArgs),
    /// Run a named regression experiment.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceFlag {
    T,
    S,
    Y,
    Xk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionFlag {
    Exact,
    Float,
}

#[derive(Args)]
struct NormArgs {
    /// Which space to evaluate in.
    #[arg(long, value_enum)]
    space: SpaceFlag,
    /// Vector expression, e.g. "e1 + 1/4*e2" or "sum(e,65,80)".
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
    /// JSON vector file ({"entries": …} or {"k": …, "entries": …} for Xk).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Also print the attaining partition tree.
    #[arg(long)]
    witness: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Force exact or float evaluation (default: exact where supported).
    #[arg(long, value_enum)]
    precision: Option<PrecisionFlag>,
    #[command(flatten)]
    xk: XkFlags,
}

#[derive(Args, Clone)]
struct XkFlags {
    /// Number of grid rows (Xk only).
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Outer exponent p, with q < p < r.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Weight-sphere exponent q (accepts "4/3").
    #[arg(long, default_value = "4/3", value_parser = parse_fraction)]
    q: f64,
    /// Conjugate exponent r, 1/q + 1/r = 1.
    #[arg(long, default_value = "4", value_parser = parse_fraction)]
    r: f64,
}

fn parse_fraction(text: &str) -> Result<f64, String> {
    if let Some((n, d)) = text.split_once('/') {
        let n: f64 = n.trim().parse().map_err(|_| format!("bad number {text:?}"))?;
        let d: f64 = d.trim().parse().map_err(|_| format!("bad number {text:?}"))?;
        if d == 0.0 {
            return Err("zero denominator".into());
        }
        Ok(n / d)
    } else {
        text.trim().parse().map_err(|_| format!("bad number {text:?}"))
    }
}

#[derive(Args)]
struct ExperimentArgs {
    /// One of the registered experiment names.
    name: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upper end of the parameter range, where the experiment has one.
    #[arg(long)]
    max_n: Option<u64>,
    /// Override the default tolerance of tolerance-style cells.
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads for independent cells (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[command(flatten)]
    xk: XkFlags,
}

const EXIT_CELL_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ENGINE: u8 = 3;

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Norm(args) => cmd_norm(args),
        Command::Experiment(args) => cmd_experiment(args),
    }
}

fn xk_config(flags: &XkFlags) -> Result<XkConfig, String> {
    XkConfig::new(flags.k, flags.p, flags.q, flags.r).map_err(|e| e.to_string())
}

fn load_json(path: &PathBuf) -> Result<serde_json::Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_norm(args: NormArgs) -> ExitCode {
    if matches!(args.space, SpaceFlag::Xk) {
        let cfg = match xk_config(&args.xk) {
            Ok(cfg) => cfg,
            Err(e) => return fail(EXIT_PARSE, e),
        };
        let Some(path) = &args.file else {
            return fail(EXIT_PARSE, "Xk vectors are grids; pass them with --file");
        };
        let grid = match load_json(path).and_then(|v| {
            GridVector::from_json(&v).map_err(|e| e.to_string())
        }) {
            Ok(g) => g,
            Err(e) => return fail(EXIT_PARSE, e),
        };
        let result = match xk_norm(&grid, &cfg) {
            Ok(r) => r,
            Err(e) => return fail(EXIT_ENGINE, e),
        };
        return print_xk_result(&args, &result);
    }

    let vector = match &args.expr {
        Some(text) => match parse_vector_expr(text) {
            Ok(v) => v,
            Err(e) => return fail(EXIT_PARSE, e),
        },
        None => match &args.file {
            Some(path) => match load_json(path)
                .and_then(|v| SparseVector::from_json(&v).map_err(|e| e.to_string()))
            {
                Ok(v) => v,
                Err(e) => return fail(EXIT_PARSE, e),
            },
            None => return fail(EXIT_PARSE, "pass a vector with --expr or --file"),
        },
    };
    let space = match args.space {
        SpaceFlag::T => SeqSpace::Tsirelson,
        SpaceFlag::S => SeqSpace::Schlumprecht,
        SpaceFlag::Y => SeqSpace::Tzafriri,
        SpaceFlag::Xk => unreachable!("handled above"),
    };
    // S and Y have no exact mode; exact input vectors are converted
    // unless the user explicitly demanded exact evaluation
    let vector = match (space, args.precision, vector.mode()) {
        (SeqSpace::Tsirelson, Some(PrecisionFlag::Float), _) => vector.to_float_mode(),
        (SeqSpace::Tsirelson, _, _) => vector,
        (_, Some(PrecisionFlag::Exact), _) => {
            return fail(EXIT_ENGINE, "this space has no exact mode (irrational factors)")
        }
        (_, _, ScalarMode::Exact) => vector.to_float_mode(),
        (_, _, ScalarMode::Float) => vector,
    };
    let result = match space.norm(&vector) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_ENGINE, e),
    };
    print_norm_result(&args, &result)
}

fn print_norm_result(args: &NormArgs, result: &NormResult) -> ExitCode {
    match args.format {
        Format::Table => {
            println!("{}", result.value);
            if args.witness {
                if let Some(w) = &result.witness {
                    println!("{}", serde_json::to_string_pretty(w).expect("witness json"));
                }
            }
        }
        Format::Csv => {
            println!("space,value");
            println!("{:?},{}", result.engine, result.value);
        }
        Format::Json => {
            let mut obj = serde_json::json!({
                "engine": result.engine,
                "precision": result.precision,
                "value": result.value,
            });
            if args.witness {
                obj["witness"] = serde_json::to_value(&result.witness).expect("witness json");
            }
            println!("{}", serde_json::to_string_pretty(&obj).expect("json"));
        }
    }
    ExitCode::SUCCESS
}

fn print_xk_result(args: &NormArgs, result: &tsnorm::spaces::XkNorm) -> ExitCode {
    match args.format {
        Format::Table => {
            println!("{}", format_float(result.value));
            if args.witness {
                println!(
                    "weights: [{}]",
                    result
                        .weights
                        .iter()
                        .map(|w| format_float(*w))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                println!("groups: {:?}", result.groups);
            }
        }
        Format::Csv => {
            println!("space,value");
            println!("Xk,{}", format_float(result.value));
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(result).expect("xk json")
            );
        }
    }
    ExitCode::SUCCESS
}

fn cmd_experiment(args: ExperimentArgs) -> ExitCode {
    if let Some(workers) = args.workers {
        // ignore the error if a pool already exists (e.g. repeated calls in tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let xk = match xk_config(&args.xk) {
        Ok(cfg) => cfg,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    let opts = ExperimentOpts {
        seed: args.seed,
        max_n: args.max_n,
        tol: args.tol,
        xk,
    };
    let report = match experiments::run(&args.name, &opts) {
        Ok(r) => r,
        Err(ExperimentError::Unknown(name)) => {
            return fail(EXIT_PARSE, format!("unknown experiment {name:?}"))
        }
        Err(e) => return fail(EXIT_ENGINE, e),
    };
    if let Err(e) = write_report(&report, &args) {
        return fail(EXIT_ENGINE, e);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        for cell in report.failing() {
            eprintln!(
                "FAIL {}/{}: value {} target {} (tol {})",
                report.experiment, cell.id, cell.value, cell.target, cell.tol
            );
        }
        ExitCode::from(EXIT_CELL_FAILURE)
    }
}

fn write_report(report: &ExperimentReport, args: &ExperimentArgs) -> Result<(), String> {
    let render = |out: &mut dyn Write| -> Result<(), String> {
        match args.format {
            Format::Table => report.write_table(out),
            Format::Csv => report.write_csv(out),
            Format::Json => report.write_json(out),
        }
        .map_err(|e| e.to_string())
    };
    match &args.out {
        Some(path) => {
            let mut file = fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
            render(&mut file)?;
            // still give the terminal a one-line summary
            println!(
                "{}: {} cells, all_pass={} -> {}",
                report.experiment,
                report.cells.len(),
                report.all_pass(),
                path.display()
            );
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            render(&mut lock)
        }
    }
}
