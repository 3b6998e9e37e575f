//! Free-fermion (Gaussian) quench states.
//!
//! A number-conserving Gaussian state is fully described by its correlation
//! matrix `C[i][j] = <c_i^dag c_j>`. Under `H = sum h_ij c_i^dag c_j` it evolves as
//! `C(t) = exp(+i h t) C(0) exp(-i h t)`, and the entropy of a set of modes
//! follows from the eigenvalues of the corresponding principal submatrix.
//!
//! The reference qubit of the information-capacity setup is one extra fermionic
//! mode `R`, appended after the chain sites and never coupled to the chain.
//! The Bell pair between site `E` and `R` is the one-particle Gaussian state
//! `(c_E^dag + c_R^dag)/sqrt(2) |vac>`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{hermitian_eigenvalues, max_non_hermiticity, principal, require_square};
use crate::model::{build_hamiltonian, LatticeSpec};
use crate::spectral::diagonalize;
use crate::{Complex64, Error, Result};

/// Eigenvalues are clamped to `[DELTA, 1 - DELTA]` before `x log x` is evaluated.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;

const HERMITIAN_TOL: f64 = 1e-10;
const SPECTRUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogBase {
    Natural,
    Two,
}

impl LogBase {
    fn ln_scale(self) -> f64 {
        match self {
            LogBase::Natural => 1.0,
            LogBase::Two => core::f64::consts::LN_2,
        }
    }
}

/// `-sum [nu log nu + (1 - nu) log(1 - nu)]` over correlation eigenvalues.
pub fn entropy_from_occupations(nus: &[f64], base: LogBase) -> f64 {
    let mut s = 0.0;
    for &nu in nus {
        let x = nu.clamp(EIGENVALUE_CLAMP, 1.0 - EIGENVALUE_CLAMP);
        s -= x * libm::log(x) + (1.0 - x) * libm::log(1.0 - x);
    }
    s / base.ln_scale()
}

/// Entropy of the Gaussian state restricted to `block` (already a principal
/// submatrix of a correlation matrix).
pub fn block_entropy(block: DMatrix<Complex64>, base: LogBase) -> f64 {
    entropy_from_occupations(&hermitian_eigenvalues(block), base)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: DMatrix<Complex64>,
    reference: Option<usize>,
}

impl CorrelationMatrix {
    /// Validates Hermiticity (`1e-10`), the eigenvalue range `[-1e-9, 1 + 1e-9]`
    /// and the reference index.
    pub fn new(entries: DMatrix<Complex64>, reference: Option<usize>) -> Result<Self> {
        require_square(entries.nrows(), entries.ncols())?;
        let dim = entries.nrows();
        if let Some(r) = reference {
            if r >= dim {
                return Err(Error::ModeOutOfRange { index: r, dim });
            }
        }
        let asym = max_non_hermiticity(&entries);
        if asym > HERMITIAN_TOL {
            return Err(Error::InvalidCorrelation(format!("not Hermitian (deviation {asym:e})")));
        }
        for nu in hermitian_eigenvalues(entries.clone()) {
            if !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(&nu) {
                return Err(Error::InvalidCorrelation(format!("eigenvalue {nu} outside [0, 1]")));
            }
        }
        Ok(CorrelationMatrix { entries, reference })
    }

    pub(crate) fn new_unchecked(entries: DMatrix<Complex64>, reference: Option<usize>) -> Self {
        CorrelationMatrix { entries, reference }
    }

    /// Mode count `M`.
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn reference(&self) -> Option<usize> {
        self.reference
    }

    /// Expected particle number.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).sum()
    }

    pub fn max_non_hermiticity(&self) -> f64 {
        max_non_hermiticity(&self.entries)
    }

    /// Eigenvalues of the full matrix (unsorted).
    pub fn occupations(&self) -> Vec<f64> {
        hermitian_eigenvalues(self.entries.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InitialState {
    /// `|1010...>`: site `i` occupied iff `i` is odd (1-based).
    Neel,
    /// `|11..100..0>`: the left half occupied.
    DomainWall,
    /// `L/2` fermions on uniformly random sites.
    RandomProduct { seed: u64 },
    /// Explicit occupations, `occupied[i - 1]` for site `i`.
    Custom(Vec<bool>),
}

impl InitialState {
    fn is_half_filled_pattern(&self) -> bool {
        !matches!(self, InitialState::Custom(_))
    }
}

/// Initial product state, optionally with a reference mode entangled with the
/// 1-based site `reference_site`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuenchSetup {
    spec: LatticeSpec,
    initial: InitialState,
    reference_site: Option<usize>,
}

impl QuenchSetup {
    pub fn new(spec: LatticeSpec, initial: InitialState, reference_site: Option<usize>) -> Result<Self> {
        let l = spec.sites();
        if let Some(e) = reference_site {
            if e == 0 || e > l {
                return Err(Error::SiteOutOfRange { site: e, sites: l });
            }
        }
        match &initial {
            InitialState::Custom(occ) => {
                if occ.len() != l {
                    return Err(Error::DimensionMismatch { expected: l, found: occ.len() });
                }
                let n = occ.iter().filter(|&&o| o).count();
                if reference_site.is_none() && (!l.is_multiple_of(2) || n != l / 2) {
                    return Err(Error::InvalidState(format!("{n} particles on {l} sites is not half filling")));
                }
            }
            _ if reference_site.is_none() && !l.is_multiple_of(2) => {
                return Err(Error::InvalidState(format!("half filling needs an even chain, got L = {l}")));
            }
            _ => {}
        }
        Ok(QuenchSetup { spec, initial, reference_site })
    }

    pub fn neel(spec: LatticeSpec) -> Result<Self> {
        QuenchSetup::new(spec, InitialState::Neel, None)
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn initial(&self) -> &InitialState {
        &self.initial
    }

    pub fn reference_site(&self) -> Option<usize> {
        self.reference_site
    }

    pub fn sites(&self) -> usize {
        self.spec.sites()
    }

    /// `L`, or `L + 1` with a reference mode.
    pub fn modes(&self) -> usize {
        self.sites() + usize::from(self.reference_site.is_some())
    }

    /// 0-based index of the reference mode (always the last mode).
    pub fn reference_mode(&self) -> Option<usize> {
        self.reference_site.map(|_| self.sites())
    }

    /// Occupation pattern of the product state before the Bell pair replaces
    /// the reference site.
    pub fn occupations(&self) -> Vec<bool> {
        let l = self.sites();
        match &self.initial {
            InitialState::Neel => (0..l).map(|i| i % 2 == 0).collect(),
            InitialState::DomainWall => (0..l).map(|i| i < l / 2).collect(),
            InitialState::RandomProduct { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut occ = vec![false; l];
                for i in rand::seq::index::sample(&mut rng, l, l / 2) {
                    occ[i] = true;
                }
                occ
            }
            InitialState::Custom(occ) => occ.clone(),
        }
    }

    /// Single-particle Hamiltonian on all modes; the reference row and column
    /// are zero.
    pub fn hamiltonian(&self) -> DMatrix<f64> {
        let h = build_hamiltonian(&self.spec);
        match self.reference_site {
            Some(_) => embed_reference(&h),
            None => h,
        }
    }

    pub fn half_filled_pattern(&self) -> bool {
        self.initial.is_half_filled_pattern()
    }
}

/// Correlation matrix of the initial product state (plus Bell pair).
pub fn initial_correlation(setup: &QuenchSetup) -> CorrelationMatrix {
    let m = setup.modes();
    let mut c = DMatrix::<Complex64>::zeros(m, m);
    for (i, occ) in setup.occupations().into_iter().enumerate() {
        if occ {
            c[(i, i)] = Complex64::new(1.0, 0.0);
        }
    }
    if let (Some(e), Some(r)) = (setup.reference_site(), setup.reference_mode()) {
        let half = Complex64::new(0.5, 0.0);
        let e = e - 1;
        c[(e, e)] = half;
        c[(r, r)] = half;
        c[(e, r)] = half;
        c[(r, e)] = half;
    }
    CorrelationMatrix::new_unchecked(c, setup.reference_mode())
}

/// Pads `h` with a zero row and column for a decoupled reference mode.
pub fn embed_reference(h: &DMatrix<f64>) -> DMatrix<f64> {
    let n = h.nrows();
    let mut out = DMatrix::zeros(n + 1, n + 1);
    out.view_mut((0, 0), (n, n)).copy_from(h);
    out
}

/// Exact propagator `exp(-i h t)` through the eigendecomposition of `h`.
#[derive(Debug, Clone)]
pub struct Propagator {
    energies: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(h: &DMatrix<f64>) -> Result<Self> {
        let es = diagonalize(h)?;
        Ok(Propagator { energies: es.energies, vectors: es.vectors })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `exp(-i h t)`.
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut scaled_re = self.vectors.clone();
        let mut scaled_im = self.vectors.clone();
        for (k, &e) in self.energies.iter().enumerate() {
            let (s, c) = libm::sincos(-e * t);
            scaled_re.column_mut(k).scale_mut(c);
            scaled_im.column_mut(k).scale_mut(s);
        }
        let re = &scaled_re * self.vectors.transpose();
        let im = &scaled_im * self.vectors.transpose();
        DMatrix::from_fn(n, n, |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
    }

    /// `C(t) = exp(+i h t) C exp(-i h t)`.
    pub fn evolve(&self, c0: &CorrelationMatrix, t: f64) -> Result<CorrelationMatrix> {
        if c0.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: c0.dim() });
        }
        let u = self.unitary(t);
        let c = u.adjoint() * c0.entries() * &u;
        Ok(CorrelationMatrix::new_unchecked(c, c0.reference()))
    }
}

/// Evolves `c0` for time `t` under `h`. A chain Hamiltonian one mode smaller
/// than a correlation matrix carrying a reference mode is embedded first.
pub fn evolve(c0: &CorrelationMatrix, h: &DMatrix<f64>, t: f64) -> Result<CorrelationMatrix> {
    let embedded;
    let h = if c0.reference().is_some() && h.nrows() + 1 == c0.dim() {
        embedded = embed_reference(h);
        &embedded
    } else {
        h
    };
    if h.nrows() != c0.dim() {
        return Err(Error::DimensionMismatch { expected: c0.dim(), found: h.nrows() });
    }
    Propagator::new(h)?.evolve(c0, t)
}

fn check_modes(modes: &[usize], dim: usize) -> Result<()> {
    match modes.iter().find(|&&i| i >= dim) {
        Some(&index) => Err(Error::ModeOutOfRange { index, dim }),
        None => Ok(()),
    }
}

/// Von Neumann entropy of the 0-based mode set `modes`.
pub fn subsystem_entropy(c: &CorrelationMatrix, modes: &[usize], base: LogBase) -> Result<f64> {
    check_modes(modes, c.dim())?;
    Ok(block_entropy(principal(c.entries(), modes), base))
}

/// `I(A:R) = S(A) + S(R) - S(AR)` in bits for chain modes `a`.
pub fn mutual_information(c: &CorrelationMatrix, a: &[usize]) -> Result<f64> {
    let r = c.reference().ok_or(Error::MissingReference)?;
    mutual_information_in(c.entries(), a, r)
}

pub(crate) fn mutual_information_in(c: &DMatrix<Complex64>, a: &[usize], r: usize) -> Result<f64> {
    check_modes(a, c.nrows())?;
    if a.contains(&r) {
        return Err(Error::ReferenceInSubsystem);
    }
    let mut ar = a.to_vec();
    ar.push(r);
    let s_a = block_entropy(principal(c, a), LogBase::Two);
    let s_r = block_entropy(principal(c, &[r]), LogBase::Two);
    let s_ar = block_entropy(principal(c, &ar), LogBase::Two);
    Ok(s_a + s_r - s_ar)
}

/// Fast path for repeated evaluation of one quench at many times.
///
/// With `C(0) = W diag(nu) W^dag` and `h = V diag(E) V^T`, the block of `C(t)` on
/// modes `S` is `X X^dag` where `X = V[S, :] diag(exp(i E t)) Q` and
/// `Q = V^T W diag(sqrt(nu))` is time independent. Only the occupied
/// directions of `C(0)` enter `Q`, so a product state at half filling costs
/// half of a dense propagation.
#[derive(Debug, Clone)]
pub struct QuenchDynamics {
    energies: Vec<f64>,
    vectors: DMatrix<f64>,
    orbitals_re: DMatrix<f64>,
    orbitals_im: DMatrix<f64>,
    reference: Option<usize>,
    trace: f64,
}

impl QuenchDynamics {
    pub fn new(h: &DMatrix<f64>, c0: &CorrelationMatrix) -> Result<Self> {
        if h.nrows() != c0.dim() {
            return Err(Error::DimensionMismatch { expected: c0.dim(), found: h.nrows() });
        }
        let es = diagonalize(h)?;
        let m = c0.dim();
        // eigen-decompose C(0); diagonal states skip the solver
        let (nus, w) = if is_diagonal(c0.entries()) {
            let nus: Vec<f64> = (0..m).map(|i| c0.entries()[(i, i)].re).collect();
            (nus, DMatrix::<Complex64>::identity(m, m))
        } else {
            let eig = c0.entries().clone().symmetric_eigen();
            (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
        };
        let kept: Vec<usize> = (0..m).filter(|&k| nus[k] > EIGENVALUE_CLAMP).collect();
        let r = kept.len();
        let mut w_kept = DMatrix::<Complex64>::zeros(m, r);
        for (col, &k) in kept.iter().enumerate() {
            let amp = libm::sqrt(nus[k].min(1.0));
            for i in 0..m {
                w_kept[(i, col)] = w[(i, k)] * amp;
            }
        }
        let w_re = w_kept.map(|z| z.re);
        let w_im = w_kept.map(|z| z.im);
        let vt = es.vectors.transpose();
        Ok(QuenchDynamics {
            orbitals_re: &vt * w_re,
            orbitals_im: &vt * w_im,
            energies: es.energies,
            vectors: es.vectors,
            reference: c0.reference(),
            trace: c0.trace(),
        })
    }

    pub fn from_setup(setup: &QuenchSetup) -> Result<Self> {
        QuenchDynamics::new(&setup.hamiltonian(), &initial_correlation(setup))
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn reference(&self) -> Option<usize> {
        self.reference
    }

    /// Particle number of the initial state.
    pub fn initial_trace(&self) -> f64 {
        self.trace
    }

    /// Principal block of `C(t)` on the 0-based `modes`.
    pub fn correlation_block(&self, t: f64, modes: &[usize]) -> Result<DMatrix<Complex64>> {
        check_modes(modes, self.dim())?;
        let m = self.dim();
        let r = self.orbitals_re.ncols();
        // D = diag(exp(i E t)) Q
        let mut d_re = DMatrix::<f64>::zeros(m, r);
        let mut d_im = DMatrix::<f64>::zeros(m, r);
        for (k, &e) in self.energies.iter().enumerate() {
            let (s, c) = libm::sincos(e * t);
            for j in 0..r {
                let (qr, qi) = (self.orbitals_re[(k, j)], self.orbitals_im[(k, j)]);
                d_re[(k, j)] = c * qr - s * qi;
                d_im[(k, j)] = s * qr + c * qi;
            }
        }
        let vs = self.vectors.select_rows(modes);
        let x_re = &vs * d_re;
        let x_im = &vs * d_im;
        let x_re_t = x_re.transpose();
        let x_im_t = x_im.transpose();
        let c_re = &x_re * &x_re_t + &x_im * &x_im_t;
        let c_im = &x_im * &x_re_t - &x_re * &x_im_t;
        let n = modes.len();
        Ok(DMatrix::from_fn(n, n, |i, j| Complex64::new(c_re[(i, j)], c_im[(i, j)])))
    }

    /// Full `C(t)`.
    pub fn correlation(&self, t: f64) -> CorrelationMatrix {
        let all: Vec<usize> = (0..self.dim()).collect();
        let c = self.correlation_block(t, &all).expect("all modes are in range");
        CorrelationMatrix::new_unchecked(c, self.reference)
    }

    pub fn entropy(&self, t: f64, modes: &[usize], base: LogBase) -> Result<f64> {
        Ok(block_entropy(self.correlation_block(t, modes)?, base))
    }

    /// `I(A:R)` in bits at time `t`.
    pub fn mutual_information(&self, t: f64, a: &[usize]) -> Result<f64> {
        let r = self.reference.ok_or(Error::MissingReference)?;
        if a.contains(&r) {
            return Err(Error::ReferenceInSubsystem);
        }
        let mut modes = a.to_vec();
        modes.push(r);
        let block = self.correlation_block(t, &modes)?;
        let local: Vec<usize> = (0..a.len()).collect();
        mutual_information_in(&block, &local, a.len())
    }
}

fn is_diagonal(m: &DMatrix<Complex64>) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == Complex64::new(0.0, 0.0)))
}
