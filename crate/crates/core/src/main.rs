use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvesat::analysis::{analyze, CurveInput, Options};
use curvesat::catalog;
use curvesat::parser::{parse_arrangement_text, parse_poly};
use curvesat::report::CurveReport;
use curvesat::suite::{check_names, run_suite, SuiteOptions};
use curvesat::Error;

#[derive(Parser)]
#[command(name = "curvesat", version, about = "Jacobian ideals, saturations and resolutions of plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one curve.
    Analyze(AnalyzeArgs),
    /// Run every check over the catalog and random line arrangements.
    Suite(SuiteArgs),
    /// Built-in curves.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "curve")]
struct Source {
    /// Homogeneous polynomial in x, y, z.
    #[arg(long)]
    poly: Option<String>,
    /// File with one linear form per line.
    #[arg(long)]
    arrangement: Option<PathBuf>,
    /// Catalog entry name.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Scan bound (default 3d-3, at least 3d-4).
    #[arg(long)]
    kmax: Option<usize>,
    /// Include per-stage timings in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SuiteArgs {
    /// Number of random line arrangements added to the catalog.
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Report a single check.
    #[arg(long)]
    only: Option<String>,
    #[arg(long, default_value_t = SuiteOptions::default().seed)]
    seed: u64,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::UnknownCatalogEntry(_) | Error::DegreeTooSmall(_) => 2,
        Error::NonReducedInput { .. } => 3,
        _ => 4,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn read_input(src: &Source) -> Result<CurveInput, ExitCode> {
    if let Some(p) = &src.poly {
        return parse_poly(p)
            .map(|f| CurveInput::poly(p.clone(), f))
            .map_err(|e| fail(&e.into()));
    }
    if let Some(path) = &src.arrangement {
        let text = std::fs::read_to_string(path).map_err(|e| {
            eprintln!("error: cannot read {}: {e}", path.display());
            ExitCode::from(2)
        })?;
        return parse_arrangement_text(&text)
            .map(|spec| CurveInput::arrangement(path.display().to_string(), spec))
            .map_err(|e| fail(&e.into()));
    }
    let name = src.catalog.as_deref().expect("clap requires one source");
    catalog::lookup(name).and_then(|e| e.input()).map_err(|e| fail(&e))
}

fn cmd_analyze(args: &AnalyzeArgs) -> ExitCode {
    let input = match read_input(&args.source) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let opts = Options {
        kmax: args.kmax,
        ..Options::default()
    };
    match analyze(input, &opts) {
        Ok(a) => {
            let report = CurveReport::new(&a, args.timing);
            match args.format {
                Format::Text => emit(&report.to_text()),
                Format::Json => emit(&(report.to_json() + "\n")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn cmd_suite(args: &SuiteArgs) -> ExitCode {
    if let Some(only) = &args.only {
        if !check_names().contains(&only.as_str()) {
            eprintln!("error: unknown check `{only}`; known: {}", check_names().join(", "));
            return ExitCode::from(2);
        }
    }
    let opts = SuiteOptions {
        random: args.random,
        only: args.only.clone(),
        seed: args.seed,
        kmax: args.kmax,
        include_catalog: true,
    };
    match run_suite(&opts) {
        Ok(report) => {
            match args.format {
                Format::Text => emit(&report.to_text()),
                Format::Json => emit(&(serde_json::to_string_pretty(&report).expect("serializes") + "\n")),
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&e),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("CURVESAT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Suite(args) => cmd_suite(args),
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            let lines: String = catalog::entries()
                .iter()
                .map(|e| format!("{:16} {:38} {}\n", e.name, e.description, e.text()))
                .collect();
            emit(&lines);
            ExitCode::SUCCESS
        }
    }
}
