//! `dioph`: exact solution counts for the symmetric systems
//! `2α_ii + Σ_{j≠i} α_ij = ℓ_i`.
//!
//! Exit codes: 0 ok, 1 a verification check failed, 2 usage error,
//! 3 engine or capacity error, 4 I/O error.

mod engine;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use dioph_core::gf::{GfConfig, GfError, DEFAULT_MAX_CELLS};
use dioph_core::oracle::enumerate_solutions;
use dioph_core::{BigCount, SpecError, SystemKind, SystemSpec, ValidatedSpec};

use engine::Engine;
use verify::Suite;

#[derive(Parser)]
#[command(
    name = "dioph",
    version,
    about = "Exact solution counts for symmetric linear Diophantine systems"
)]
struct Cli {
    /// Cell cap for the generating-function engine.
    #[arg(long, global = true, env = "DIO_MAX_CELLS", default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count nonnegative solutions.
    Count(CountArgs),
    /// List solutions, one per line, in lexicographic upper-triangle order.
    Enumerate(EnumerateArgs),
    /// Run cross-engine verification sweeps.
    Verify(VerifyArgs),
    /// Emit counts for uniform right-hand sides ℓ = 0..=max-l.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemChoice {
    Full4,
    Floyd3,
    General,
}

impl From<SystemChoice> for SystemKind {
    fn from(s: SystemChoice) -> Self {
        match s {
            SystemChoice::Full4 => SystemKind::Full4,
            SystemChoice::Floyd3 => SystemKind::Floyd3,
            SystemChoice::General => SystemKind::General,
        }
    }
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("rhs_source").required(true).args(["rhs", "l"]))]
struct SystemArgs {
    #[arg(long, value_enum)]
    system: SystemChoice,
    /// Comma-separated right-hand sides.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    rhs: Option<Vec<i64>>,
    /// Uniform right-hand side ℓ for every equation.
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    /// Number of equations; required with `--system general --l`.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFormat {
    Text,
    Json,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, value_enum, default_value = "auto")]
    engine: Engine,
    #[arg(long, value_enum, default_value = "text")]
    format: CountFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: EnumerateFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Largest ℓ swept; each suite has its own default.
    #[arg(long)]
    max_l: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    system: SystemChoice,
    /// Number of equations for `--system general`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    max_l: i64,
    #[arg(long, value_enum, default_value = "auto")]
    engine: Engine,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Engine(String),
    #[error(transparent)]
    Capacity(#[from] GfError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Usage(_) | CliError::Spec(_) => 2,
            CliError::Engine(_) | CliError::Capacity(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    fn stdout(source: io::Error) -> Self {
        CliError::Io {
            path: "<stdout>".into(),
            source,
        }
    }
}

fn arity(kind: SystemKind, k: Option<usize>) -> Result<usize, CliError> {
    match (kind.fixed_arity(), k) {
        (Some(fixed), None) => Ok(fixed),
        (Some(fixed), Some(k)) if k == fixed => Ok(fixed),
        (Some(fixed), Some(k)) => Err(CliError::Usage(format!(
            "--system {kind} has k = {fixed}, got --k {k}"
        ))),
        (None, Some(k)) => Ok(k),
        (None, None) => Err(CliError::Usage("--system general needs --k".into())),
    }
}

impl SystemArgs {
    fn resolve(&self) -> Result<ValidatedSpec, CliError> {
        let kind = SystemKind::from(self.system);
        let spec = match (&self.rhs, self.l) {
            (Some(rhs), _) => SystemSpec::new(kind, rhs.clone()),
            (None, Some(l)) => SystemSpec::uniform(kind, arity(kind, self.k)?, l),
            (None, None) => unreachable!("clap requires --rhs or --l"),
        };
        Ok(spec.validate()?)
    }
}

#[derive(Serialize)]
struct CountRecord<'a> {
    system: SystemKind,
    rhs: &'a [u64],
    engine: Engine,
    count: BigCount,
}

#[derive(Serialize)]
struct TableRow {
    l: u64,
    count: BigCount,
}

fn cmd_count(args: &CountArgs, gf: &GfConfig) -> Result<(), CliError> {
    let spec = args.system.resolve()?;
    let (engine, count) = engine::count(args.engine, &spec, gf)?;
    let line = match args.format {
        CountFormat::Text => count.to_string(),
        CountFormat::Json => serde_json::to_string(&CountRecord {
            system: spec.kind(),
            rhs: spec.rhs(),
            engine,
            count,
        })
        .expect("count record serializes"),
    };
    println!("{line}");
    Ok(())
}

fn csv_header(k: usize) -> Vec<String> {
    let sep = if k > 9 { "_" } else { "" };
    (1..=k)
        .flat_map(|i| (i..=k).map(move |j| format!("a{i}{sep}{j}")))
        .collect()
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<(), CliError> {
    let spec = args.system.resolve()?;
    let stdout = io::stdout().lock();
    let result = match args.format {
        EnumerateFormat::Json => {
            let mut out = BufWriter::new(stdout);
            enumerate_solutions(&spec, args.limit)
                .try_for_each(|m| {
                    serde_json::to_writer(&mut out, &m)?;
                    out.write_all(b"\n")
                })
                .and_then(|_| out.flush())
        }
        EnumerateFormat::Csv => {
            let mut out = csv::Writer::from_writer(stdout);
            (|| -> csv::Result<()> {
                out.write_record(csv_header(spec.k()))?;
                for m in enumerate_solutions(&spec, args.limit) {
                    out.write_record(m.upper_triangle().iter().map(u64::to_string))?;
                }
                out.flush()?;
                Ok(())
            })()
            .map_err(io::Error::from)
        }
    };
    match result {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(CliError::stdout),
    }
}

fn cmd_verify(args: &VerifyArgs, gf: &GfConfig) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    let mut failed = 0;
    let mut passed = 0;
    for suite in args.suite.expand() {
        let checks = verify::run(suite, args.max_l, gf)?;
        for c in &checks {
            writeln!(stdout, "{c}").map_err(CliError::stdout)?;
        }
        let bad = checks.iter().filter(|c| !c.passed).count();
        writeln!(
            stdout,
            "suite {}: {} passed, {} failed",
            suite.name(),
            checks.len() - bad,
            bad
        )
        .map_err(CliError::stdout)?;
        failed += bad;
        passed += checks.len() - bad;
    }
    writeln!(stdout, "summary: {passed} passed, {failed} failed").map_err(CliError::stdout)?;
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}

fn write_table(rows: &[TableRow], format: TableFormat, out: impl Write) -> io::Result<()> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["l", "count"])?;
            for r in rows {
                w.write_record([r.l.to_string(), r.count.to_string()])?;
            }
            w.flush()
        }
        TableFormat::Json => {
            let mut out = BufWriter::new(out);
            serde_json::to_writer(&mut out, rows)?;
            out.write_all(b"\n")?;
            out.flush()
        }
    }
}

fn cmd_table(args: &TableArgs, gf: &GfConfig) -> Result<(), CliError> {
    let max_l = u64::try_from(args.max_l).map_err(|_| {
        CliError::Usage(format!(
            "--max-l must be nonnegative, got {} (empty range)",
            args.max_l
        ))
    })?;
    let kind = SystemKind::from(args.system);
    let k = arity(kind, args.k)?;
    let counts = engine::uniform_table(args.engine, kind, k, max_l, gf)?;
    let rows: Vec<TableRow> = counts
        .into_iter()
        .enumerate()
        .map(|(l, count)| TableRow { l: l as u64, count })
        .collect();
    match &args.out {
        Some(path) => {
            let io_err = |source| CliError::Io {
                path: path.display().to_string(),
                source,
            };
            let file = File::create(path).map_err(io_err)?;
            write_table(&rows, args.format, file).map_err(io_err)
        }
        None => match write_table(&rows, args.format, io::stdout().lock()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            other => other.map_err(CliError::stdout),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let gf = GfConfig {
        max_cells: cli.max_cells,
    };
    let result = match &cli.command {
        Command::Count(a) => cmd_count(a, &gf),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a, &gf),
        Command::Table(a) => cmd_table(a, &gf),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dioph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
