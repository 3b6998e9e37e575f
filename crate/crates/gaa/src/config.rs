//! Experiment descriptions.
//!
//! A run is described by a TOML document. Parsing is strict (unknown keys are
//! fatal), sweeps are expanded to explicit value lists and every default is
//! filled in, so the resolved [`ExperimentConfig`] serializes back to a document
//! that parses to the same value.

use std::fmt;

use gaa_core::gaussian::{InitialState, QuenchSetup};
use gaa_core::model::{Boundary, LatticeParams, LatticeSpec, Modulation};
use gaa_core::observables::{Coupling, SamplingProtocol, SIC_JUMP_SIZE};
use serde::{Deserialize, Serialize, Serializer};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Spectrum,
    Ee,
    Velocity,
    Saturation,
    Scaling,
    SicProfile,
    SicJump,
    Fractions,
    Verify,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Spectrum => "spectrum",
            ExperimentKind::Ee => "ee",
            ExperimentKind::Velocity => "velocity",
            ExperimentKind::Saturation => "saturation",
            ExperimentKind::Scaling => "scaling",
            ExperimentKind::SicProfile => "sic_profile",
            ExperimentKind::SicJump => "sic_jump",
            ExperimentKind::Fractions => "fractions",
            ExperimentKind::Verify => "verify",
        }
    }

    /// Experiments that attach a reference mode (odd chains allowed).
    pub fn uses_reference(self) -> bool {
        matches!(self, ExperimentKind::SicProfile | ExperimentKind::SicJump)
    }

    fn single_size(self) -> bool {
        matches!(
            self,
            ExperimentKind::Velocity | ExperimentKind::Fractions | ExperimentKind::SicProfile | ExperimentKind::SicJump
        )
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Open,
    Periodic,
}

impl From<BoundaryKind> for Boundary {
    fn from(b: BoundaryKind) -> Self {
        match b {
            BoundaryKind::Open => Boundary::Open,
            BoundaryKind::Periodic => Boundary::Periodic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    Neel,
    DomainWall,
    Random,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingKind {
    Center,
    Edge,
}

impl From<CouplingKind> for Coupling {
    fn from(c: CouplingKind) -> Self {
        match c {
            CouplingKind::Center => Coupling::Center,
            CouplingKind::Edge => Coupling::Edge,
        }
    }
}

/// Modulation frequency `b`: a float, or an exact ratio written `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency {
    Value(f64),
    Ratio { p: u64, q: u64 },
}

impl Frequency {
    pub fn modulation(self) -> Modulation {
        match self {
            Frequency::Value(b) => Modulation::Irrational(b),
            Frequency::Ratio { p, q } => Modulation::Rational { p, q },
        }
    }

    fn parse_ratio(text: &str) -> Result<Self, Error> {
        let bad = || Error::Config(format!("`b` must be a number or a \"p/q\" ratio, got {text:?}"));
        let (p, q) = text.split_once('/').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::Config("`b` ratio has a zero denominator".into()));
        }
        Ok(Frequency::Ratio { p, q })
    }
}

impl Serialize for Frequency {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Frequency::Value(b) => s.serialize_f64(b),
            Frequency::Ratio { p, q } => s.serialize_str(&format!("{p}/{q}")),
        }
    }
}

/// Resolved sampling protocol (the seed lives on the config).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolConfig {
    pub fit_window: [f64; 2],
    pub fit_dt: f64,
    pub burn_in: f64,
    pub n_samples: usize,
    pub mean_interval: f64,
    pub jitter: f64,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        let p = SamplingProtocol::default();
        ProtocolConfig {
            fit_window: [p.fit_window.0, p.fit_window.1],
            fit_dt: p.fit_dt,
            burn_in: p.burn_in,
            n_samples: p.n_samples,
            mean_interval: p.mean_interval,
            jitter: p.jitter,
        }
    }
}

/// Fully resolved experiment description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    /// Chain lengths; empty for `scaling`, which uses `sizes`.
    #[serde(rename = "L", skip_serializing_if = "Vec::is_empty")]
    pub sites: Vec<usize>,
    pub lambda: Vec<f64>,
    pub a: Vec<f64>,
    pub t: f64,
    pub b: Frequency,
    pub phi: f64,
    pub boundary: BoundaryKind,
    pub initial: InitialKind,
    /// Occupation string such as `"1010"` for `initial = "custom"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    /// Random configurations averaged over when `initial = "random"`.
    pub realizations: usize,
    pub coupling: CouplingKind,
    /// 1-based site entangled with the reference mode (SIC experiments).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_site: Option<usize>,
    /// Subsystem sizes (SIC) or chain lengths (scaling).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sizes: Vec<usize>,
    /// Evaluation times (`ee` and `verify`).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub times: Vec<f64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub protocol: ProtocolConfig,
}

/// One sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub a: f64,
    pub lambda: f64,
    pub sites: usize,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} lambda={} L={}", self.a, self.lambda, self.sites)
    }
}

pub const DEFAULT_SCALING_SIZES: [usize; 5] = [80, 120, 160, 200, 240];
pub const DEFAULT_REALIZATIONS: usize = 20;
pub const DEFAULT_VERIFY_TIMES: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

impl ExperimentConfig {
    /// Serializes to a TOML document accepted by [`parse_config`].
    pub fn to_toml(&self) -> Result<String, Error> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn sampling(&self) -> SamplingProtocol {
        let p = &self.protocol;
        SamplingProtocol {
            fit_window: (p.fit_window[0], p.fit_window[1]),
            fit_dt: p.fit_dt,
            burn_in: p.burn_in,
            n_samples: p.n_samples,
            mean_interval: p.mean_interval,
            jitter: p.jitter,
            seed: self.seed,
        }
    }

    /// Sweep points sorted by `(a, lambda, L)`. For `scaling` the chain length is
    /// the first entry of `sizes`.
    pub fn points(&self) -> Vec<Point> {
        let sites: &[usize] = if self.experiment == ExperimentKind::Scaling { &self.sizes[..1] } else { &self.sites };
        let mut a = self.a.clone();
        let mut lambda = self.lambda.clone();
        let mut sites = sites.to_vec();
        a.sort_by(f64::total_cmp);
        a.dedup();
        lambda.sort_by(f64::total_cmp);
        lambda.dedup();
        sites.sort_unstable();
        sites.dedup();
        let mut out = Vec::with_capacity(a.len() * lambda.len() * sites.len());
        for &a in &a {
            for &lambda in &lambda {
                for &l in &sites {
                    out.push(Point { a, lambda, sites: l });
                }
            }
        }
        out
    }

    pub fn spec(&self, point: &Point) -> gaa_core::Result<LatticeSpec> {
        LatticeParams {
            sites: point.sites,
            hopping: self.t,
            lambda: point.lambda,
            deformation: point.a,
            modulation: self.b.modulation(),
            phase: self.phi,
            boundary: self.boundary.into(),
        }
        .build()
    }

    pub fn initial_state(&self) -> InitialState {
        match self.initial {
            InitialKind::Neel => InitialState::Neel,
            InitialKind::DomainWall => InitialState::DomainWall,
            InitialKind::Random => InitialState::RandomProduct { seed: self.seed },
            InitialKind::Custom => {
                InitialState::Custom(self.pattern.as_deref().unwrap_or("").chars().map(|c| c == '1').collect())
            }
        }
    }

    /// Quench setup at `point`, with the reference mode for SIC experiments.
    pub fn setup(&self, point: &Point) -> gaa_core::Result<QuenchSetup> {
        let reference = if self.experiment.uses_reference() { self.reference_site } else { None };
        QuenchSetup::new(self.spec(point)?, self.initial_state(), reference)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: Option<ExperimentKind>,
    #[serde(rename = "L")]
    sites: Option<Sweep>,
    lambda: Option<Sweep>,
    a: Option<Sweep>,
    t: Option<f64>,
    b: Option<RawFrequency>,
    phi: Option<f64>,
    boundary: Option<BoundaryKind>,
    initial: Option<InitialKind>,
    pattern: Option<String>,
    realizations: Option<usize>,
    coupling: Option<CouplingKind>,
    reference_site: Option<usize>,
    sizes: Option<Vec<usize>>,
    times: Option<Sweep>,
    seed: Option<u64>,
    workers: Option<usize>,
    output: Option<String>,
    protocol: Option<RawProtocol>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProtocol {
    fit_window: Option<[f64; 2]>,
    fit_dt: Option<f64>,
    burn_in: Option<f64>,
    n_samples: Option<usize>,
    mean_interval: Option<f64>,
    jitter: Option<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawFrequency {
    Value(f64),
    Ratio(String),
}

/// A scalar, an explicit list, or an inclusive `{ start, stop, step }` range.
#[derive(Deserialize)]
#[serde(untagged)]
enum Sweep {
    Value(f64),
    List(Vec<f64>),
    Range(Range),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Range {
    start: f64,
    stop: f64,
    step: f64,
}

/// Rounds to 12 significant digits so that `0.1 * 3` reads back as `0.3`.
fn tidy(v: f64) -> f64 {
    format!("{v:.11e}").parse().unwrap_or(v)
}

impl Sweep {
    fn expand(self, key: &str) -> Result<Vec<f64>, Error> {
        let values = match self {
            Sweep::Value(v) => vec![v],
            Sweep::List(v) => v,
            Sweep::Range(Range { start, stop, step }) => {
                if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
                    return Err(Error::Config(format!("`{key}` range must be finite")));
                }
                if !(step > 0.0) || stop < start {
                    return Err(Error::Config(format!("`{key}` range needs step > 0 and stop >= start")));
                }
                let count = ((stop - start) / step).round() as usize + 1;
                (0..count).map(|k| tidy(start + k as f64 * step)).collect()
            }
        };
        if values.is_empty() {
            return Err(Error::Config(format!("`{key}` sweep is empty")));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Config(format!("`{key}` contains a non-finite value {v}")));
        }
        Ok(values)
    }
}

fn as_sizes(values: Vec<f64>, key: &str) -> Result<Vec<usize>, Error> {
    values
        .into_iter()
        .map(|v| {
            if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as usize)
            } else {
                Err(Error::Config(format!("`{key}` must hold non-negative integers, got {v}")))
            }
        })
        .collect()
}

/// Parses and resolves a TOML experiment description. The `experiment` key is
/// required.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, Error> {
    resolve(toml::from_str(text)?, None)
}

/// Like [`parse_config`], but the experiment kind comes from the caller; a
/// conflicting `experiment` key is an error.
pub fn parse_config_as(text: &str, kind: ExperimentKind) -> Result<ExperimentConfig, Error> {
    resolve(toml::from_str(text)?, Some(kind))
}

fn resolve(raw: RawConfig, kind: Option<ExperimentKind>) -> Result<ExperimentConfig, Error> {
    let experiment = match (raw.experiment, kind) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Config(format!("config describes a `{a}` experiment, not `{b}`")));
        }
        (Some(k), _) | (None, Some(k)) => k,
        (None, None) => return Err(Error::Config("missing key `experiment`".into())),
    };
    let missing = |key: &str| Error::Config(format!("missing key `{key}`"));

    let lambda = raw.lambda.ok_or_else(|| missing("lambda"))?.expand("lambda")?;
    let a = raw.a.ok_or_else(|| missing("a"))?.expand("a")?;

    let sites = match (experiment, raw.sites) {
        (ExperimentKind::Scaling, Some(_)) => {
            return Err(Error::Config("`scaling` takes chain lengths from `sizes`, not `L`".into()));
        }
        (ExperimentKind::Scaling, None) => Vec::new(),
        (_, Some(s)) => as_sizes(s.expand("L")?, "L")?,
        (_, None) => return Err(missing("L")),
    };
    for &l in &sites {
        if l < 2 {
            return Err(Error::Config(format!("`L` must be at least 2, got {l}")));
        }
        if l % 2 != 0 && !experiment.uses_reference() {
            return Err(Error::Config(format!("`L` must be even for `{experiment}` (half filling), got {l}")));
        }
    }
    if experiment.single_size() && sites.len() > 1 {
        return Err(Error::Config(format!("`{experiment}` takes a single `L`")));
    }

    let initial = raw.initial.unwrap_or(InitialKind::Neel);
    let pattern = match (initial, raw.pattern) {
        (InitialKind::Custom, Some(p)) => {
            if !p.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Config("`pattern` may only contain '0' and '1'".into()));
            }
            if let Some(&l) = sites.iter().find(|&&l| l != p.len()) {
                return Err(Error::Config(format!("`pattern` has {} sites but L = {l}", p.len())));
            }
            Some(p)
        }
        (InitialKind::Custom, None) => return Err(Error::Config("`initial = \"custom\"` needs `pattern`".into())),
        (_, Some(_)) => return Err(Error::Config("`pattern` is only used with `initial = \"custom\"`".into())),
        (_, None) => None,
    };

    let realizations = raw.realizations.unwrap_or(DEFAULT_REALIZATIONS);
    if realizations == 0 {
        return Err(Error::Config("`realizations` must be at least 1".into()));
    }
    let coupling = raw.coupling.unwrap_or(CouplingKind::Center);

    let reference_site = if experiment.uses_reference() {
        let l = sites[0];
        let e = raw.reference_site.unwrap_or(match coupling {
            CouplingKind::Center => l / 2,
            CouplingKind::Edge => 1,
        });
        if e == 0 || e > l {
            return Err(Error::Config(format!("`reference_site` must lie in 1..={l}, got {e}")));
        }
        Some(e)
    } else if raw.reference_site.is_some() {
        return Err(Error::Config(format!("`reference_site` is not used by `{experiment}`")));
    } else {
        None
    };

    let sizes = match experiment {
        ExperimentKind::Scaling => {
            let sizes = raw.sizes.unwrap_or_else(|| DEFAULT_SCALING_SIZES.to_vec());
            if sizes.len() < 3 {
                return Err(Error::Config("`sizes` needs at least 3 chain lengths".into()));
            }
            if let Some(l) = sizes.iter().find(|&&l| l < 2 || l % 2 != 0) {
                return Err(Error::Config(format!("`sizes` must be even chain lengths, got {l}")));
            }
            sizes
        }
        ExperimentKind::SicProfile | ExperimentKind::SicJump => {
            let l = sites[0];
            let default =
                if experiment == ExperimentKind::SicJump { vec![0, SIC_JUMP_SIZE, l] } else { (0..=l).collect() };
            let mut sizes = raw.sizes.unwrap_or(default);
            sizes.sort_unstable();
            sizes.dedup();
            if let Some(n) = sizes.iter().find(|&&n| n > l) {
                return Err(Error::Config(format!("subsystem size {n} exceeds L = {l}")));
            }
            if experiment == ExperimentKind::SicJump && !sizes.contains(&SIC_JUMP_SIZE) {
                return Err(Error::Config(format!("`sic_jump` needs size {SIC_JUMP_SIZE} in `sizes`")));
            }
            sizes
        }
        _ if raw.sizes.is_some() => return Err(Error::Config(format!("`sizes` is not used by `{experiment}`"))),
        _ => Vec::new(),
    };

    let base = ProtocolConfig::default();
    let protocol = match raw.protocol {
        None => base,
        Some(p) => ProtocolConfig {
            fit_window: p.fit_window.unwrap_or(base.fit_window),
            fit_dt: p.fit_dt.unwrap_or(base.fit_dt),
            burn_in: p.burn_in.unwrap_or(base.burn_in),
            n_samples: p.n_samples.unwrap_or(base.n_samples),
            mean_interval: p.mean_interval.unwrap_or(base.mean_interval),
            jitter: p.jitter.unwrap_or(base.jitter),
        },
    };

    let times = match (experiment, raw.times) {
        (ExperimentKind::Ee | ExperimentKind::Verify, Some(t)) => t.expand("times")?,
        (ExperimentKind::Ee, None) => Vec::new(),
        (ExperimentKind::Verify, None) => DEFAULT_VERIFY_TIMES.to_vec(),
        (_, Some(_)) => return Err(Error::Config(format!("`times` is not used by `{experiment}`"))),
        (_, None) => Vec::new(),
    };

    if raw.workers == Some(0) {
        return Err(Error::Config("`workers` must be at least 1".into()));
    }

    let b = match raw.b {
        None => Frequency::Value(Modulation::golden().value()),
        Some(RawFrequency::Value(v)) => Frequency::Value(v),
        Some(RawFrequency::Ratio(s)) => Frequency::parse_ratio(&s)?,
    };

    let mut config = ExperimentConfig {
        experiment,
        sites,
        lambda,
        a,
        t: raw.t.unwrap_or(1.0),
        b,
        phi: raw.phi.unwrap_or(0.0),
        boundary: raw.boundary.unwrap_or(BoundaryKind::Open),
        initial,
        pattern,
        realizations,
        coupling,
        reference_site,
        sizes,
        times,
        seed: raw.seed.unwrap_or(0),
        workers: raw.workers,
        output: raw.output,
        protocol,
    };
    if experiment == ExperimentKind::Ee && config.times.is_empty() {
        config.times = config.sampling().fit_times();
    }
    validate(&config)?;
    Ok(config)
}

fn validate(config: &ExperimentConfig) -> Result<(), Error> {
    config.sampling().validate()?;
    let lengths: &[usize] = if config.experiment == ExperimentKind::Scaling { &config.sizes } else { &config.sites };
    for &a in &config.a {
        for &lambda in &config.lambda {
            for &l in lengths {
                config.spec(&Point { a, lambda, sites: l })?;
            }
        }
    }
    Ok(())
}
