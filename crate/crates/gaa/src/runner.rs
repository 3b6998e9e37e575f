//! Sweep execution and file emission.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use gaa_core::gaussian::QuenchSetup;
use gaa_core::observables::{
    ee_timeseries, fit_scaling, mean, pearson, realizations, saturation_value, sic_jump, sic_profile, velocity,
    SamplingProtocol, SicProfile,
};
use gaa_core::oracle::{cross_check_entropy, cross_check_mutual_information, MAX_MODES};
use gaa_core::spectral::{SpectrumData, StateLabel};
use gaa_core::{Boundary, Executor};
use serde::Serialize;

use crate::config::{CouplingKind, ExperimentConfig, ExperimentKind, Point};
use crate::output::{Cell, Table};
use crate::pool::{default_workers, Pool};
use crate::Error;

/// A sweep point that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointFailure {
    pub point: String,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub failures: Vec<PointFailure>,
    pub wall_time: Duration,
    pub workers: usize,
}

#[derive(Serialize)]
struct Manifest<'a> {
    experiment: &'a str,
    version: &'a str,
    seed: u64,
    workers: usize,
    points: usize,
    files: Vec<String>,
    failures: &'a [PointFailure],
    wall_time_seconds: f64,
    config: &'a ExperimentConfig,
}

/// Runs `config` on a pool of `config.workers` threads (default: one per core)
/// and writes the tables plus `manifest.json` into `out`.
pub fn run(config: &ExperimentConfig, out: &Path) -> Result<RunReport, Error> {
    let pool = Pool::new(config.workers.unwrap_or_else(default_workers))?;
    run_with(config, out, &pool)
}

pub fn run_with<X: Executor>(config: &ExperimentConfig, out: &Path, exec: &X) -> Result<RunReport, Error> {
    let started = Instant::now();
    let (tables, failures) = evaluate(config, exec);
    std::fs::create_dir_all(out).map_err(|source| Error::Io { path: out.to_path_buf(), source })?;
    let mut files = Vec::with_capacity(tables.len() + 1);
    for table in &tables {
        files.push(table.write(out)?);
    }
    let wall_time = started.elapsed();
    let workers = config.workers.unwrap_or_else(default_workers);
    let manifest = Manifest {
        experiment: config.experiment.name(),
        version: env!("CARGO_PKG_VERSION"),
        seed: config.seed,
        workers,
        points: config.points().len(),
        files: tables.iter().map(|t| t.name.to_owned()).collect(),
        failures: &failures,
        wall_time_seconds: wall_time.as_secs_f64(),
        config,
    };
    let path = out.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|source| Error::Io { path: path.clone(), source })?;
    files.push(path);
    Ok(RunReport { files, failures, wall_time, workers })
}

/// Evaluates every sweep point and assembles the output tables in sweep-key
/// order. Failed points are reported instead of aborting the sweep.
pub fn evaluate<X: Executor>(config: &ExperimentConfig, exec: &X) -> (Vec<Table>, Vec<PointFailure>) {
    let points = config.points();
    let protocol = config.sampling();
    let results = exec.map(points.len(), |k| evaluate_point(config, &points[k], &protocol, exec));

    let mut failures = Vec::new();
    let mut outcomes = Vec::with_capacity(points.len());
    for (point, result) in points.iter().zip(results) {
        match result {
            Ok(o) => outcomes.push((*point, o)),
            Err(e) => failures.push(PointFailure { point: point.to_string(), error: e.to_string() }),
        }
    }
    let tables = assemble(config, &outcomes, &mut failures);
    (tables, failures)
}

enum Outcome {
    Spectrum(SpectrumData),
    Series { times: Vec<f64>, entropies: Vec<f64> },
    Scalar(f64),
    Saturation { s_sat: f64, n_e: f64, n_l: f64 },
    Scaling { alpha: f64, stderr: f64, sizes: Vec<usize>, saturation: Vec<f64> },
    Profile { profile: SicProfile, n_e: f64, n_l: f64 },
    Fractions { n_e: f64, n_l: f64 },
    Verify(Vec<(&'static str, f64)>),
}

/// Mean of `f` over the initial-state realizations of `setup`.
fn averaged<F>(setup: &QuenchSetup, count: usize, f: F) -> gaa_core::Result<f64>
where
    F: Fn(&QuenchSetup) -> gaa_core::Result<f64>,
{
    let values = realizations(setup, count)?.iter().map(f).collect::<gaa_core::Result<Vec<_>>>()?;
    Ok(mean(&values))
}

fn evaluate_point<X: Executor>(
    config: &ExperimentConfig,
    point: &Point,
    protocol: &SamplingProtocol,
    exec: &X,
) -> gaa_core::Result<Outcome> {
    let count = config.realizations;
    Ok(match config.experiment {
        ExperimentKind::Spectrum => Outcome::Spectrum(SpectrumData::compute(&config.spec(point)?)?),
        ExperimentKind::Fractions => {
            let s = SpectrumData::compute(&config.spec(point)?)?;
            Outcome::Fractions { n_e: s.n_e, n_l: s.n_l }
        }
        ExperimentKind::Ee => {
            let setups = realizations(&config.setup(point)?, count)?;
            let mut entropies = vec![0.0; config.times.len()];
            for s in &setups {
                for (acc, v) in entropies.iter_mut().zip(ee_timeseries(s, &config.times, exec)?.entropies) {
                    *acc += v;
                }
            }
            let n = setups.len() as f64;
            Outcome::Series { times: config.times.clone(), entropies: entropies.into_iter().map(|v| v / n).collect() }
        }
        ExperimentKind::Velocity => {
            Outcome::Scalar(averaged(&config.setup(point)?, count, |s| velocity(s, protocol, exec))?)
        }
        ExperimentKind::Saturation => {
            let s_sat = averaged(&config.setup(point)?, count, |s| saturation_value(s, protocol, exec))?;
            let spectrum = SpectrumData::compute(&config.spec(point)?)?;
            Outcome::Saturation { s_sat, n_e: spectrum.n_e, n_l: spectrum.n_l }
        }
        ExperimentKind::Scaling => {
            let saturation = config
                .sizes
                .iter()
                .map(|&l| {
                    let p = Point { sites: l, ..*point };
                    averaged(&config.setup(&p)?, count, |s| saturation_value(s, protocol, exec))
                })
                .collect::<gaa_core::Result<Vec<_>>>()?;
            let fit = fit_scaling(&config.sizes, &saturation)?;
            Outcome::Scaling { alpha: fit.alpha, stderr: fit.stderr, sizes: config.sizes.clone(), saturation }
        }
        ExperimentKind::SicProfile | ExperimentKind::SicJump => {
            let coupling = config.coupling.into();
            let setups = realizations(&config.setup(point)?, count)?;
            let mut profile: Option<SicProfile> = None;
            for s in &setups {
                let p = sic_profile(s, &config.sizes, coupling, protocol, exec)?;
                match profile.as_mut() {
                    None => profile = Some(p),
                    Some(acc) => acc.mi.iter_mut().zip(&p.mi).for_each(|(x, y)| *x += y),
                }
            }
            let mut profile = profile.expect("at least one realization");
            let n = setups.len() as f64;
            profile.mi.iter_mut().for_each(|x| *x /= n);
            let spectrum = SpectrumData::compute(&config.spec(point)?)?;
            Outcome::Profile { profile, n_e: spectrum.n_e, n_l: spectrum.n_l }
        }
        ExperimentKind::Verify => {
            let setup = QuenchSetup::new(config.spec(point)?, config.initial_state(), None)?;
            let mut checks = vec![("entropy", cross_check_entropy(&setup, &config.times)?.max_abs_diff())];
            if point.sites < MAX_MODES {
                let e = (point.sites / 2).max(1);
                let with_ref = QuenchSetup::new(config.spec(point)?, config.initial_state(), Some(e))?;
                let mi = cross_check_mutual_information(&with_ref, &config.times, config.coupling.into())?;
                checks.push(("mutual_information", mi.max_abs_diff()));
            }
            Outcome::Verify(checks)
        }
    })
}

fn label(l: StateLabel) -> &'static str {
    match l {
        StateLabel::Extended => "extended",
        StateLabel::Localized => "localized",
        StateLabel::Undefined => "undefined",
    }
}

fn boundary_name(b: Boundary) -> &'static str {
    match b {
        Boundary::Open => "open",
        Boundary::Periodic => "periodic",
    }
}

fn keys(p: &Point) -> Vec<Cell> {
    vec![p.a.into(), p.lambda.into(), p.sites.into()]
}

fn assemble(config: &ExperimentConfig, outcomes: &[(Point, Outcome)], failures: &mut Vec<PointFailure>) -> Vec<Table> {
    let mut tables = Vec::new();
    match config.experiment {
        ExperimentKind::Spectrum => {
            let mut t = Table::new("spectrum.csv", &["a", "lambda", "L", "index", "energy", "ipr", "label"]);
            for (p, o) in outcomes {
                if let Outcome::Spectrum(s) = o {
                    for k in 0..s.energies.len() {
                        let mut row = keys(p);
                        row.extend([k.into(), s.energies[k].into(), s.ipr[k].into(), label(s.labels[k]).into()]);
                        t.push(row);
                    }
                }
            }
            tables.push(t);
        }
        ExperimentKind::Ee => {
            let mut t = Table::new("ee_timeseries.csv", &["a", "lambda", "L", "time", "entropy_nats"]);
            for (p, o) in outcomes {
                if let Outcome::Series { times, entropies } = o {
                    for (&time, &s) in times.iter().zip(entropies) {
                        let mut row = keys(p);
                        row.extend([time.into(), s.into()]);
                        t.push(row);
                    }
                }
            }
            tables.push(t);
        }
        ExperimentKind::Velocity => {
            let mut t = Table::new("velocity.csv", &["a", "lambda", "v_s"]);
            for (p, o) in outcomes {
                if let Outcome::Scalar(v) = o {
                    t.push(vec![p.a.into(), p.lambda.into(), (*v).into()]);
                }
            }
            tables.push(t);
        }
        ExperimentKind::Saturation => {
            let mut t = Table::new("saturation.csv", &["a", "lambda", "L", "s_sat"]);
            for (p, o) in outcomes {
                if let Outcome::Saturation { s_sat, .. } = o {
                    t.push(vec![p.a.into(), p.lambda.into(), p.sites.into(), (*s_sat).into()]);
                }
            }
            tables.push(t);
            if config.sites.len() == 1 {
                let rows: Vec<_> = outcomes
                    .iter()
                    .filter_map(|(p, o)| match o {
                        Outcome::Saturation { s_sat, n_e, n_l } => Some((*p, *s_sat, *n_e, *n_l)),
                        _ => None,
                    })
                    .collect();
                tables.push(fractions_table(rows.iter().map(|r| (r.0, r.2, r.3))));
                tables.push(correlation_table(&rows, "s_sat_vs_n_e", |r| (r.1, r.2), failures));
            }
        }
        ExperimentKind::Scaling => {
            let mut t = Table::new("scaling.csv", &["a", "lambda", "alpha", "stderr"]);
            let mut s = Table::new("saturation.csv", &["a", "lambda", "L", "s_sat"]);
            for (p, o) in outcomes {
                if let Outcome::Scaling { alpha, stderr, sizes, saturation } = o {
                    t.push(vec![p.a.into(), p.lambda.into(), (*alpha).into(), (*stderr).into()]);
                    for (&l, &v) in sizes.iter().zip(saturation) {
                        s.push(vec![p.a.into(), p.lambda.into(), l.into(), v.into()]);
                    }
                }
            }
            tables.push(t);
            tables.push(s);
        }
        ExperimentKind::SicProfile | ExperimentKind::SicJump => {
            let mut t = Table::new("sic_profile.csv", &["coupling", "boundary", "a", "lambda", "size_A", "mi_bits"]);
            let mut rows = Vec::new();
            for (p, o) in outcomes {
                if let Outcome::Profile { profile, n_e, n_l } = o {
                    let coupling = match config.coupling {
                        CouplingKind::Center => "center",
                        CouplingKind::Edge => "edge",
                    };
                    for (&n, &mi) in profile.sizes.iter().zip(&profile.mi) {
                        t.push(vec![
                            coupling.into(),
                            boundary_name(profile.boundary).into(),
                            p.a.into(),
                            p.lambda.into(),
                            n.into(),
                            mi.into(),
                        ]);
                    }
                    if config.experiment == ExperimentKind::SicJump {
                        match sic_jump(profile) {
                            Ok(j) => rows.push((*p, j, *n_e, *n_l)),
                            Err(e) => failures.push(PointFailure { point: p.to_string(), error: e.to_string() }),
                        }
                    }
                }
            }
            tables.push(t);
            if config.experiment == ExperimentKind::SicJump {
                tables.push(fractions_table(rows.iter().map(|r| (r.0, r.2, r.3))));
                tables.push(correlation_table(&rows, "sic_jump_vs_n_l", |r| (r.1, r.3), failures));
            }
        }
        ExperimentKind::Fractions => {
            tables.push(fractions_table(outcomes.iter().filter_map(|(p, o)| match o {
                Outcome::Fractions { n_e, n_l } => Some((*p, *n_e, *n_l)),
                _ => None,
            })));
        }
        ExperimentKind::Verify => {
            let mut t = Table::new("verify.csv", &["check", "a", "lambda", "L", "max_abs_diff"]);
            for (p, o) in outcomes {
                if let Outcome::Verify(checks) = o {
                    for &(name, diff) in checks {
                        t.push(vec![name.into(), p.a.into(), p.lambda.into(), p.sites.into(), diff.into()]);
                    }
                }
            }
            tables.push(t);
        }
    }
    tables
}

/// Sweep point with an observable, `n_e` and `n_l`.
type SweepRow = (Point, f64, f64, f64);

fn fractions_table(rows: impl Iterator<Item = (Point, f64, f64)>) -> Table {
    let mut t = Table::new("fractions.csv", &["a", "lambda", "n_e", "n_l"]);
    for (p, n_e, n_l) in rows {
        t.push(vec![p.a.into(), p.lambda.into(), n_e.into(), n_l.into()]);
    }
    t
}

/// One Pearson coefficient per `a`, taken over the `lambda` sweep (skipped for
/// fewer than three points).
fn correlation_table<F>(rows: &[SweepRow], figure: &str, pick: F, failures: &mut Vec<PointFailure>) -> Table
where
    F: Fn(&SweepRow) -> (f64, f64),
{
    let mut t = Table::new("correlation.csv", &["figure", "pearson_r"]);
    let mut start = 0;
    while start < rows.len() {
        let a = rows[start].0.a;
        let end = start + rows[start..].iter().take_while(|r| r.0.a == a).count();
        if end - start < 3 {
            start = end;
            continue;
        }
        let (x, y): (Vec<f64>, Vec<f64>) = rows[start..end].iter().map(&pick).unzip();
        let name = format!("{figure} a={}", crate::output::format_g12(a));
        match pearson(&x, &y) {
            Ok(r) => t.push(vec![name.into(), r.into()]),
            Err(e) => failures.push(PointFailure { point: name, error: e.to_string() }),
        }
        start = end;
    }
    t
}
