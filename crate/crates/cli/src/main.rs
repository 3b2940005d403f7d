use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use micz_core::micz::Mode;
use micz_core::runner::{parse_mu, parse_suites, run_suite, SuiteConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

/// Verify the symmetry algebra, spectrum and representation content of the
/// even-dimensional generalized MICZ-Kepler problem.
#[derive(Debug, Parser)]
#[command(name = "micz", version)]
struct Args {
    /// Half the dimension, D = 2n.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Magnetic charge: 0, 1/2, or 1 (falsifier; gauge suite only).
    #[arg(long, default_value = "0")]
    mu: String,
    /// Comma-separated suites: gauge, closed-forms, commutation, quadratic,
    /// radial, full-scalar, reps, abstract, all.
    #[arg(long, default_value = "all")]
    suites: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Sample points; defaults to 20 exact, 200 float.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    kmax: u32,
    #[arg(long, default_value_t = 4)]
    lmax: u32,
    #[arg(long, default_value_t = 6)]
    imax: u32,
    /// Generator pairs sampled for pointwise checks when n = 3.
    #[arg(long, default_value_t = 60)]
    pairs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record per-item wall time (makes reports nondeterministic).
    #[arg(long)]
    timings: bool,
}

fn config(args: &Args) -> micz_core::Result<SuiteConfig> {
    let two_mu = parse_mu(&args.mu)?;
    let mut cfg = SuiteConfig::new(args.n, two_mu, parse_suites(&args.suites, two_mu)?);
    cfg.mode = match args.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    };
    cfg.points = args.points.unwrap_or(if cfg.mode == Mode::Float { 200 } else { 20 });
    cfg.seed = args.seed;
    cfg.kmax = args.kmax;
    cfg.lmax = args.lmax;
    cfg.imax = args.imax;
    cfg.pairs = args.pairs;
    cfg.timings = args.timings;
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let out = match args.format {
        Format::Text => report.to_string(),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
    };
    // a closed pipe is not a verification failure
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        for it in report.failures() {
            eprintln!("FAIL {} {}: {}", it.suite, it.id, it.residual.as_deref().unwrap_or(""));
        }
        ExitCode::from(1)
    }
}
