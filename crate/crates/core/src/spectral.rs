//! Single-particle spectrum: eigensolve, inverse participation ratio and the
//! mobility-edge classification of eigenstates.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::linalg::{max_asymmetry, require_square};
use crate::model::{build_hamiltonian, LatticeSpec};
use crate::{Error, Result};

/// Eigenpairs sorted by ascending energy; column `n` of `vectors` belongs to
/// `energies[n]`.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub energies: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Dense symmetric eigendecomposition with ascending eigenvalues.
///
/// Inputs whose asymmetry exceeds `1e-12 * max(1, max|h|)` are rejected.
pub fn diagonalize(h: &DMatrix<f64>) -> Result<Eigensystem> {
    require_square(h.nrows(), h.ncols())?;
    let scale = h.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let asym = max_asymmetry(h);
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }
    let n = h.nrows();
    if n == 0 {
        return Ok(Eigensystem { energies: Vec::new(), vectors: DMatrix::zeros(0, 0) });
    }
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, c| eig.eigenvectors[(i, order[c])]);
    Ok(Eigensystem { energies, vectors })
}

/// Inverse participation ratio `sum |psi|^4 / (sum |psi|^2)^2`.
pub fn ipr(psi: &[f64]) -> Result<f64> {
    let (mut p2, mut p4) = (0.0, 0.0);
    for &x in psi {
        let w = x * x;
        p2 += w;
        p4 += w * w;
    }
    if p2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(p4 / (p2 * p2))
}

/// Diagnostic IPR threshold `2 / sqrt(L)` separating extended from localized
/// states; only used to break ties at the mobility edge.
pub fn ipr_threshold(sites: usize) -> f64 {
    2.0 / libm::sqrt(sites as f64)
}

/// Analytic mobility edge `E_c = 2 sgn(lambda) (|t| - |lambda|) / a`.
///
/// Returns `None` for `a = 0` (no mobility edge, the Aubry-André criterion
/// applies) and for `lambda = 0` (no potential, every state extended).
pub fn mobility_edge(spec: &LatticeSpec) -> Option<f64> {
    let (a, lambda, t) = (spec.deformation(), spec.lambda(), spec.hopping());
    if a == 0.0 || lambda == 0.0 {
        return None;
    }
    Some(2.0 * lambda.signum() * (t.abs() - lambda.abs()) / a)
}

/// How the spectrum splits into extended and localized states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// States below the edge are extended, states above it localized.
    Edge(f64),
    Extended,
    Localized,
    /// Self-dual point `|lambda| = |t|` at `a = 0`.
    Critical,
}

pub fn regime(spec: &LatticeSpec) -> Regime {
    if let Some(ec) = mobility_edge(spec) {
        return Regime::Edge(ec);
    }
    let (lambda, t) = (spec.lambda().abs(), spec.hopping().abs());
    if lambda < t {
        Regime::Extended
    } else if lambda > t {
        Regime::Localized
    } else {
        Regime::Critical
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateLabel {
    Extended,
    Localized,
    Undefined,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub labels: Vec<StateLabel>,
    /// Fraction of extended states `N_e / L`.
    pub n_e: f64,
    /// Fraction of localized states `N_l / L`.
    pub n_l: f64,
}

/// Labels every state. `iprs` is only consulted for states sitting exactly on
/// the mobility edge.
pub fn classify(energies: &[f64], iprs: &[f64], regime: Regime) -> Classification {
    let len = energies.len();
    let threshold = ipr_threshold(len.max(1));
    let labels: Vec<StateLabel> = energies
        .iter()
        .enumerate()
        .map(|(n, &e)| match regime {
            Regime::Edge(ec) if e < ec => StateLabel::Extended,
            Regime::Edge(ec) if e > ec => StateLabel::Localized,
            Regime::Edge(_) => match iprs.get(n) {
                Some(&p) if p < threshold => StateLabel::Extended,
                Some(_) => StateLabel::Localized,
                None => StateLabel::Undefined,
            },
            Regime::Extended => StateLabel::Extended,
            Regime::Localized => StateLabel::Localized,
            Regime::Critical => StateLabel::Undefined,
        })
        .collect();
    let count = |l| labels.iter().filter(|&&x| x == l).count() as f64;
    let denom = len.max(1) as f64;
    Classification { n_e: count(StateLabel::Extended) / denom, n_l: count(StateLabel::Localized) / denom, labels }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseRegion {
    Extended,
    Intermediate,
    Localized,
    Critical,
}

/// Intermediate whenever the mobility edge lies strictly inside the spectrum;
/// otherwise decided by the labels.
pub fn phase_region(regime: Regime, energies: &[f64], labels: &[StateLabel]) -> PhaseRegion {
    if let (Regime::Edge(ec), Some(lo), Some(hi)) = (regime, energies.first(), energies.last()) {
        if *lo < ec && ec < *hi {
            return PhaseRegion::Intermediate;
        }
    }
    let all = |l| labels.iter().all(|&x| x == l);
    if all(StateLabel::Extended) {
        PhaseRegion::Extended
    } else if all(StateLabel::Localized) {
        PhaseRegion::Localized
    } else if all(StateLabel::Undefined) {
        PhaseRegion::Critical
    } else {
        PhaseRegion::Intermediate
    }
}

/// Full single-particle spectral data of one lattice.
#[derive(Debug, Clone)]
pub struct SpectrumData {
    pub energies: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub ipr: Vec<f64>,
    pub mobility_edge: Option<f64>,
    pub regime: Regime,
    pub labels: Vec<StateLabel>,
    pub n_e: f64,
    pub n_l: f64,
}

impl SpectrumData {
    pub fn compute(spec: &LatticeSpec) -> Result<Self> {
        let Eigensystem { energies, vectors } = diagonalize(&build_hamiltonian(spec))?;
        let ipr = vectors.column_iter().map(|c| ipr(c.as_slice())).collect::<Result<Vec<_>>>()?;
        let regime = regime(spec);
        let Classification { labels, n_e, n_l } = classify(&energies, &ipr, regime);
        Ok(SpectrumData { energies, vectors, ipr, mobility_edge: mobility_edge(spec), regime, labels, n_e, n_l })
    }

    pub fn phase_region(&self) -> PhaseRegion {
        phase_region(self.regime, &self.energies, &self.labels)
    }
}
