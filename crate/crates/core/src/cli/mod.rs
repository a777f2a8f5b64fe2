//! Command-line batch runner.
//!
//! ```text
//! qlayer <command> --config <path> [--out <dir>] [--strict] [--jobs N]
//! qlayer compare <dir_a> <dir_b> [--rel-tol X] [--abs-tol Y] [--only PREFIX]
//! ```
//!
//! Exit codes: 0 success (possibly with `warnings.txt`), 1 I/O or internal
//! failure, 2 config or input error, 3 numerical failure under `--strict`.
//! `compare` exits 1 when some observable differs beyond tolerance.
//!
//! `QLAYER_JOBS` sets the default for `--jobs`; 1 selects the sequential
//! schedule, unset means one worker per core.

pub mod compare;
pub mod config;
pub mod output;
pub mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use compare::{compare_runs, CompareTol, DiffEntry, DiffReport};
pub use config::{canonical, config_hash, load_config, parse_config, Command, ExperimentConfig, LoadedConfig};
pub use output::{RunRecord, RECORD_FILE, REPORT_FILE, RESULTS_FILE, WARNINGS_FILE};
pub use run::{execute, ResultRow, RunContext, RunOutput};

use crate::{Error, Result, Schedule};

pub const JOBS_ENV: &str = "QLAYER_JOBS";

#[derive(Debug, Parser)]
#[command(name = "qlayer", version, about = "Trapped modes of deformed quantum layers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Negative spectrum of a radial 2D Schrödinger operator.
    #[command(name = "spectrum2d")]
    Spectrum2d(RunArgs),
    /// Trapped modes of the deformed layer.
    Layer(RunArgs),
    /// Logarithmic Lieb-Thirring bound for 2D potentials.
    Bound(RunArgs),
    /// Bound through radial majorants of the profile.
    MajorantBound(RunArgs),
    /// Weak-coupling sweep of the ground trapped mode.
    Sweep(RunArgs),
    /// Chart of the weighted Hardy-type form.
    Hardy(RunArgs),
    /// Compare the results of two runs.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `[output] dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fail with exit code 3 on unconverged eigenvalues.
    #[arg(long)]
    pub strict: bool,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    pub dir_a: PathBuf,
    pub dir_b: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 0.0)]
    pub abs_tol: f64,
    /// Compare only observables whose name starts with this prefix.
    #[arg(long)]
    pub only: Option<String>,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Convergence(_) | Error::DomainSize(_) => 3,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn resolve_jobs(flag: Option<usize>) -> Result<Option<usize>> {
    let jobs = match flag {
        Some(j) => Some(j),
        None => match std::env::var(JOBS_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::config(None, format!("{JOBS_ENV}: expected a positive integer, got {v:?}")))?,
            ),
            Err(_) => None,
        },
    };
    if jobs == Some(0) {
        return Err(Error::config(None, "--jobs must be positive"));
    }
    Ok(jobs)
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce(Schedule) -> Result<T> + Send) -> Result<T> {
    match jobs {
        Some(1) => f(Schedule::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?
            .install(|| f(Schedule::Parallel)),
        _ => f(Schedule::Parallel),
    }
}

/// Runs `command` as configured and writes its output directory.
pub fn run_command(command: Command, args: &RunArgs) -> Result<(PathBuf, RunRecord)> {
    let loaded = load_config(&args.config)?;
    if loaded.config.command != command {
        return Err(loaded.error_at(
            None,
            "command",
            format!("config is for `{}`, invoked as `{command}`", loaded.config.command),
        ));
    }
    let jobs = resolve_jobs(args.jobs)?;
    let strict = args.strict || loaded.config.numerics.strict;
    let output = with_jobs(jobs, |schedule| execute(&loaded, RunContext { strict, schedule }))?;
    let dir = args.out.clone().unwrap_or_else(|| loaded.resolve(&loaded.config.output.dir));
    let hash = config_hash(&loaded.config);
    let threads = match jobs {
        Some(n) => n,
        None => crate::par::current_threads(),
    };
    let record = output::write_run(&dir, &loaded, &hash, threads, &output)?;
    Ok((dir, record))
}

fn compare(args: &CompareArgs) -> Result<DiffReport> {
    let tol = CompareTol {
        rel: args.rel_tol,
        abs: args.abs_tol,
    };
    compare_runs(&args.dir_a, &args.dir_b, tol, args.only.as_deref())
}

/// Entry point of the binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        CliCommand::Spectrum2d(a) => (Command::Spectrum2d, a),
        CliCommand::Layer(a) => (Command::Layer, a),
        CliCommand::Bound(a) => (Command::Bound, a),
        CliCommand::MajorantBound(a) => (Command::MajorantBound, a),
        CliCommand::Sweep(a) => (Command::Sweep, a),
        CliCommand::Hardy(a) => (Command::Hardy, a),
        CliCommand::Compare(a) => {
            return match compare(&a) {
                Ok(report) => {
                    for e in &report.entries {
                        let show = |v: Option<f64>| v.map(output::format_value).unwrap_or_else(|| "-".into());
                        println!(
                            "{}{} {} {} {} rel {:.3e}",
                            if e.exceeds { "! " } else { "  " },
                            e.case,
                            e.observable,
                            show(e.a),
                            show(e.b),
                            e.rel
                        );
                    }
                    println!("{} differing, {} beyond tolerance", report.entries.len(), report.exceeded());
                    if report.exceeded() > 0 {
                        ExitCode::from(1)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
    };
    match run_command(command, &args) {
        Ok((dir, record)) => {
            eprintln!("wrote {} ({})", dir.display(), record.files.join(", "));
            if !record.warnings.is_empty() {
                eprintln!("{} warning(s), see {}", record.warnings.len(), WARNINGS_FILE);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
