use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("site {site} outside 1..={sites}")]
    SiteOutOfRange { site: usize, sites: usize },
    #[error("mode {index} outside 0..{dim}")]
    ModeOutOfRange { index: usize, dim: usize },
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not a valid correlation matrix: {0}")]
    InvalidCorrelation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no participation ratio")]
    ZeroVector,
    #[error("invalid initial state: {0}")]
    InvalidState(String),
    #[error("no reference mode attached")]
    MissingReference,
    #[error("subsystem contains the reference mode")]
    ReferenceInSubsystem,
    #[error("invalid sampling protocol: {0}")]
    InvalidProtocol(&'static str),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("degenerate variance")]
    DegenerateVariance,
    #[error("saturation entropy {value} at L = {sites} is not positive; no power law can be fitted")]
    Unfittable { sites: usize, value: f64 },
    #[error("subsystem size {size} exceeds chain length {sites}")]
    SizeExceedsChain { size: usize, sites: usize },
    #[error("profile has no |A| = {0} entry")]
    SizeAbsent(usize),
    #[error("{modes} modes exceed the exact-diagonalization limit of {limit}")]
    TooManyModes { modes: usize, limit: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
