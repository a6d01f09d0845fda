use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use stabilab::harness::{emit_report, run_experiment, EmitFormat, ExperimentConfig, ExperimentKind, RunLock};
use stabilab::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Experiment {
    Coverage,
    Rate,
    Stability,
    EfronStein,
    BoundsTable,
}

impl Experiment {
    fn kind(self) -> ExperimentKind {
        match self {
            Experiment::Coverage => ExperimentKind::Coverage,
            Experiment::Rate => ExperimentKind::Rate,
            Experiment::Stability => ExperimentKind::StabilitySweep,
            Experiment::EfronStein => ExperimentKind::EfronStein,
            Experiment::BoundsTable => ExperimentKind::BoundsTable,
        }
    }
}

/// Run a seeded Monte Carlo experiment and write its report.
///
/// Exit status: 0 on success, 2 for a bad config, 3 when a precondition
/// fails, 4 when the run finds an inequality broken beyond Monte Carlo slack.
#[derive(Debug, Parser)]
#[command(name = "stabilab", version)]
struct Cli {
    experiment: Experiment,
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `out_dir` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `base_seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `reps`.
    #[arg(long)]
    reps: Option<usize>,
    /// Comma-separated output formats: csv, json, svg.
    #[arg(long, default_value = "csv,json")]
    emit: String,
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("STABILAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Config(format!("STABILAB_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot size the worker pool: {e}")))
}

fn run(cli: Cli) -> Result<u8> {
    configure_threads()?;
    let formats = EmitFormat::parse_list(&cli.emit)?;
    let mut cfg = ExperimentConfig::from_path(&cli.config)?;
    if cfg.kind != cli.experiment.kind() {
        return Err(Error::Config(format!(
            "config describes a {} experiment but {:?} was requested",
            cfg.kind.as_str(),
            cli.experiment
        )));
    }
    if let Some(out) = cli.out {
        cfg.out_dir = out;
    }
    if let Some(seed) = cli.seed {
        cfg.base_seed = seed;
    }
    if let Some(reps) = cli.reps {
        cfg.reps = reps;
    }
    cfg.validate()?;

    let _lock = RunLock::acquire(&cfg.out_dir)?;
    let report = run_experiment(&cfg)?;
    for path in emit_report(&report, &formats, &cfg.out_dir)? {
        println!("{}", path.display());
    }
    let violations = report.invariant_violations();
    for v in &violations {
        eprintln!("violation: {v}");
    }
    Ok(if violations.is_empty() { 0 } else { 4 })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("stabilab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
