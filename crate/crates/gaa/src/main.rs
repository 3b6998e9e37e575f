use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gaa::config::{parse_config_as, ExperimentKind};
use gaa::Error;

/// Quench dynamics of the generalized Aubry-André chain.
#[derive(Parser)]
#[command(name = "gaa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenenergies, IPRs and extended/localized labels.
    Spectrum(RunArgs),
    /// Half-chain entanglement entropy against time.
    Ee(RunArgs),
    /// Early-time entanglement growth velocity.
    Velocity(RunArgs),
    /// Steady-state half-chain entropy.
    Saturation(RunArgs),
    /// Finite-size scaling exponent of the saturation entropy.
    Scaling(RunArgs),
    /// Steady-state subsystem information capacity profile.
    SicProfile(RunArgs),
    /// Information capacity at |A| = 5 across a sweep.
    SicJump(RunArgs),
    /// Fractions of extended and localized eigenstates.
    Fractions(RunArgs),
    /// Gaussian-state results against exact many-body evolution.
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment description (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to `output` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
}

fn split(command: Command) -> (ExperimentKind, RunArgs) {
    match command {
        Command::Spectrum(a) => (ExperimentKind::Spectrum, a),
        Command::Ee(a) => (ExperimentKind::Ee, a),
        Command::Velocity(a) => (ExperimentKind::Velocity, a),
        Command::Saturation(a) => (ExperimentKind::Saturation, a),
        Command::Scaling(a) => (ExperimentKind::Scaling, a),
        Command::SicProfile(a) => (ExperimentKind::SicProfile, a),
        Command::SicJump(a) => (ExperimentKind::SicJump, a),
        Command::Fractions(a) => (ExperimentKind::Fractions, a),
        Command::Verify(a) => (ExperimentKind::Verify, a),
    }
}

fn execute(kind: ExperimentKind, args: RunArgs) -> Result<(), Error> {
    let text =
        std::fs::read_to_string(&args.config).map_err(|source| Error::Io { path: args.config.clone(), source })?;
    let mut config = parse_config_as(&text, kind)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(workers) = args.workers {
        if workers == 0 {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        config.workers = Some(workers);
    }
    let out = args
        .out
        .or_else(|| config.output.as_ref().map(PathBuf::from))
        .ok_or_else(|| Error::Config("no output directory: pass --out or set `output`".into()))?;

    let report = gaa::run(&config, &out)?;
    for f in &report.failures {
        eprintln!("warning: {}: {}", f.point, f.error);
    }
    eprintln!(
        "{}: {} points, {} failed, {} workers, {:.2} s -> {}",
        kind,
        config.points().len(),
        report.failures.len(),
        report.workers,
        report.wall_time.as_secs_f64(),
        out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = split(cli.command);
    match execute(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
