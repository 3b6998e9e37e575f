//! Brute-force Fock-space reference for small chains.
//!
//! Modes are ordered for the Jordan-Wigner signs as chain sites in ascending
//! order followed by the reference mode. Bit `i` of a basis pattern is the
//! occupation of mode `i`, and a pattern stands for
//! `c_{i1}^dag c_{i2}^dag ... |vac>` with `i1 < i2 < ...`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::gaussian::{LogBase, QuenchDynamics, QuenchSetup};
use crate::linalg::{hermitian_eigenvalues, max_asymmetry, require_square};
use crate::observables::{sic_window, Coupling};
use crate::{Complex64, Error, Result};

/// Largest supported mode count (full space of 4096 states).
pub const MAX_MODES: usize = 12;

const ABSENT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct FockBasis {
    modes: usize,
    particles: Option<usize>,
    states: Vec<u32>,
    lookup: Vec<usize>,
}

impl FockBasis {
    /// All `2^modes` patterns.
    pub fn full(modes: usize) -> Result<Self> {
        guard(modes)?;
        Ok(Self::from_states(modes, None, (0..1u32 << modes).collect()))
    }

    /// Patterns with exactly `particles` fermions.
    pub fn fixed(modes: usize, particles: usize) -> Result<Self> {
        guard(modes)?;
        if particles > modes {
            return Err(Error::InvalidState(alloc::format!("{particles} particles on {modes} modes")));
        }
        let states = (0..1u32 << modes).filter(|s| s.count_ones() as usize == particles).collect();
        Ok(Self::from_states(modes, Some(particles), states))
    }

    fn from_states(modes: usize, particles: Option<usize>, states: Vec<u32>) -> Self {
        let mut lookup = vec![ABSENT; 1 << modes];
        for (k, &s) in states.iter().enumerate() {
            lookup[s as usize] = k;
        }
        FockBasis { modes, particles, states, lookup }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn particles(&self) -> Option<usize> {
        self.particles
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn index_of(&self, pattern: u32) -> Option<usize> {
        match self.lookup.get(pattern as usize) {
            Some(&k) if k != ABSENT => Some(k),
            _ => None,
        }
    }
}

fn guard(modes: usize) -> Result<()> {
    if modes > MAX_MODES {
        return Err(Error::TooManyModes { modes, limit: MAX_MODES });
    }
    Ok(())
}

/// `(-1)^(number of occupied modes below `mode`)`.
fn jw_sign(pattern: u32, mode: usize) -> f64 {
    if (pattern & ((1u32 << mode) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Matrix of `sum_ij h_ij c_i^dag c_j` in `basis`.
pub fn many_body_hamiltonian(h: &DMatrix<f64>, basis: &FockBasis) -> Result<DMatrix<f64>> {
    require_square(h.nrows(), h.ncols())?;
    if h.nrows() != basis.modes() {
        return Err(Error::DimensionMismatch { expected: basis.modes(), found: h.nrows() });
    }
    let asym = max_asymmetry(h);
    if asym > 0.0 {
        return Err(Error::NotSymmetric(asym));
    }
    let m = basis.modes();
    let dim = basis.len();
    let mut out = DMatrix::zeros(dim, dim);
    for (k, &n) in basis.states().iter().enumerate() {
        for j in 0..m {
            if n & (1 << j) == 0 {
                continue;
            }
            out[(k, k)] += h[(j, j)];
            let removed = n ^ (1 << j);
            let s_j = jw_sign(n, j);
            for i in 0..m {
                if i == j || removed & (1 << i) != 0 || h[(i, j)] == 0.0 {
                    continue;
                }
                let target = removed | (1 << i);
                let idx = basis.index_of(target).expect("hopping conserves particle number");
                out[(idx, k)] += h[(i, j)] * s_j * jw_sign(removed, i);
            }
        }
    }
    Ok(out)
}

/// Basis vector of the given occupation pattern (`occupied[i]` for mode `i`).
pub fn product_state(basis: &FockBasis, occupied: &[bool]) -> Result<DVector<Complex64>> {
    if occupied.len() != basis.modes() {
        return Err(Error::DimensionMismatch { expected: basis.modes(), found: occupied.len() });
    }
    let pattern = occupied.iter().enumerate().fold(0u32, |p, (i, &o)| p | (u32::from(o) << i));
    let k =
        basis.index_of(pattern).ok_or_else(|| Error::InvalidState("occupation pattern is outside the basis".into()))?;
    let mut v = DVector::zeros(basis.len());
    v[k] = Complex64::new(1.0, 0.0);
    Ok(v)
}

/// `c_mode^dag |state>`.
pub fn apply_creation(basis: &FockBasis, state: &DVector<Complex64>, mode: usize) -> Result<DVector<Complex64>> {
    if mode >= basis.modes() {
        return Err(Error::ModeOutOfRange { index: mode, dim: basis.modes() });
    }
    let mut out = DVector::zeros(basis.len());
    for (k, &n) in basis.states().iter().enumerate() {
        let amp = state[k];
        if amp == Complex64::new(0.0, 0.0) || n & (1 << mode) != 0 {
            continue;
        }
        let idx =
            basis.index_of(n | (1 << mode)).ok_or_else(|| Error::InvalidState("creation leaves the basis".into()))?;
        out[idx] += amp * jw_sign(n, mode);
    }
    Ok(out)
}

/// Basis suited to a quench setup: the fixed-`N` sector without a reference,
/// the full space with one.
pub fn basis_for(setup: &QuenchSetup) -> Result<FockBasis> {
    match setup.reference_site() {
        Some(_) => FockBasis::full(setup.modes()),
        None => {
            let n = setup.occupations().iter().filter(|&&o| o).count();
            FockBasis::fixed(setup.modes(), n)
        }
    }
}

/// Many-body initial state of a quench setup. With a reference the state is
/// `(c_E^dag + c_R^dag)/sqrt(2)` applied to the pattern with site `E` emptied.
pub fn initial_state(setup: &QuenchSetup, basis: &FockBasis) -> Result<DVector<Complex64>> {
    let mut occ = setup.occupations();
    match (setup.reference_site(), setup.reference_mode()) {
        (Some(e), Some(r)) => {
            occ[e - 1] = false;
            occ.push(false);
            let base = product_state(basis, &occ)?;
            let bell = apply_creation(basis, &base, e - 1)? + apply_creation(basis, &base, r)?;
            Ok(bell * Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0))
        }
        _ => product_state(basis, &occ),
    }
}

/// `exp(-i H t)` through the full eigendecomposition of a real symmetric `H`.
#[derive(Debug, Clone)]
pub struct ExactPropagator {
    energies: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl ExactPropagator {
    pub fn new(hamiltonian: &DMatrix<f64>) -> Result<Self> {
        require_square(hamiltonian.nrows(), hamiltonian.ncols())?;
        if hamiltonian.nrows() > 1 << MAX_MODES {
            return Err(Error::TooManyModes { modes: hamiltonian.nrows(), limit: 1 << MAX_MODES });
        }
        let eig = hamiltonian.clone().symmetric_eigen();
        Ok(ExactPropagator { energies: eig.eigenvalues.iter().copied().collect(), vectors: eig.eigenvectors })
    }

    pub fn evolve(&self, state: &DVector<Complex64>, t: f64) -> Result<DVector<Complex64>> {
        let n = self.energies.len();
        if state.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: state.len() });
        }
        let vt = self.vectors.transpose();
        let re = &vt * state.map(|z| z.re);
        let im = &vt * state.map(|z| z.im);
        let mut rot_re = DVector::zeros(n);
        let mut rot_im = DVector::zeros(n);
        for (k, &e) in self.energies.iter().enumerate() {
            let (s, c) = libm::sincos(-e * t);
            rot_re[k] = c * re[k] - s * im[k];
            rot_im[k] = s * re[k] + c * im[k];
        }
        let out_re = &self.vectors * rot_re;
        let out_im = &self.vectors * rot_im;
        Ok(DVector::from_fn(n, |i, _| Complex64::new(out_re[i], out_im[i])))
    }
}

pub fn exact_evolve(state: &DVector<Complex64>, hamiltonian: &DMatrix<f64>, t: f64) -> Result<DVector<Complex64>> {
    ExactPropagator::new(hamiltonian)?.evolve(state, t)
}

fn check_state(basis: &FockBasis, state: &DVector<Complex64>) -> Result<()> {
    if state.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: state.len() });
    }
    Ok(())
}

/// Amplitude matrix `Psi[s][s']` after reordering the modes of `subset` in
/// front of the remaining ones.
fn split_amplitudes(basis: &FockBasis, state: &DVector<Complex64>, subset: &[usize]) -> Result<DMatrix<Complex64>> {
    check_state(basis, state)?;
    let m = basis.modes();
    if let Some(&index) = subset.iter().find(|&&i| i >= m) {
        return Err(Error::ModeOutOfRange { index, dim: m });
    }
    let mut in_subset = vec![false; m];
    for &i in subset {
        in_subset[i] = true;
    }
    let inside: Vec<usize> = (0..m).filter(|&i| in_subset[i]).collect();
    let outside: Vec<usize> = (0..m).filter(|&i| !in_subset[i]).collect();
    let compress = |n: u32, modes: &[usize]| {
        modes.iter().enumerate().fold(0usize, |acc, (k, &i)| acc | (((n >> i) & 1) as usize) << k)
    };
    let mut psi = DMatrix::zeros(1 << inside.len(), 1 << outside.len());
    for (k, &n) in basis.states().iter().enumerate() {
        // swaps needed to move every occupied subset mode past the occupied
        // complement modes preceding it
        let mut swaps = 0u32;
        let mut seen_outside = 0u32;
        for (i, &member) in in_subset.iter().enumerate().take(m) {
            if n & (1 << i) == 0 {
                continue;
            }
            if member {
                swaps += seen_outside;
            } else {
                seen_outside += 1;
            }
        }
        let sign = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
        psi[(compress(n, &inside), compress(n, &outside))] += state[k] * sign;
    }
    Ok(psi)
}

/// Reduced density matrix of the modes in `subset`, in the order of
/// increasing mode index.
pub fn reduced_density_matrix(
    basis: &FockBasis,
    state: &DVector<Complex64>,
    subset: &[usize],
) -> Result<DMatrix<Complex64>> {
    let psi = split_amplitudes(basis, state, subset)?;
    Ok(&psi * psi.adjoint())
}

/// Von Neumann entropy of `subset` from an explicit partial trace.
pub fn exact_entropy(basis: &FockBasis, state: &DVector<Complex64>, subset: &[usize], base: LogBase) -> Result<f64> {
    let psi = split_amplitudes(basis, state, subset)?;
    // the smaller of the two Gram matrices carries the same nonzero spectrum
    let rho = if psi.nrows() <= psi.ncols() { &psi * psi.adjoint() } else { psi.adjoint() * &psi };
    let scale = match base {
        LogBase::Natural => 1.0,
        LogBase::Two => core::f64::consts::LN_2,
    };
    let s: f64 = hermitian_eigenvalues(rho).into_iter().filter(|&p| p > 0.0).map(|p| -p * libm::log(p)).sum();
    Ok(s / scale)
}

/// `<n_mode>`.
pub fn occupation(basis: &FockBasis, state: &DVector<Complex64>, mode: usize) -> Result<f64> {
    check_state(basis, state)?;
    if mode >= basis.modes() {
        return Err(Error::ModeOutOfRange { index: mode, dim: basis.modes() });
    }
    Ok(basis.states().iter().zip(state.iter()).filter(|(&n, _)| n & (1 << mode) != 0).map(|(_, a)| a.norm_sqr()).sum())
}

/// Paired Gaussian and exact values of one quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub gaussian: Vec<f64>,
    pub exact: Vec<f64>,
}

impl CrossCheck {
    pub fn max_abs_diff(&self) -> f64 {
        self.gaussian.iter().zip(&self.exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.gaussian.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaussian.is_empty()
    }
}

/// Half-chain entropy (nats) from both routes at every time.
pub fn cross_check_entropy(setup: &QuenchSetup, times: &[f64]) -> Result<CrossCheck> {
    if setup.reference_site().is_some() || !setup.sites().is_multiple_of(2) {
        return Err(Error::InvalidState("half-chain cross-check needs an even chain without reference".into()));
    }
    let half: Vec<usize> = (0..setup.sites() / 2).collect();
    let dynamics = QuenchDynamics::from_setup(setup)?;
    let basis = basis_for(setup)?;
    let psi0 = initial_state(setup, &basis)?;
    let exact = ExactPropagator::new(&many_body_hamiltonian(&setup.hamiltonian(), &basis)?)?;
    let mut out = CrossCheck { gaussian: Vec::new(), exact: Vec::new() };
    for &t in times {
        out.gaussian.push(dynamics.entropy(t, &half, LogBase::Natural)?);
        out.exact.push(exact_entropy(&basis, &exact.evolve(&psi0, t)?, &half, LogBase::Natural)?);
    }
    Ok(out)
}

/// `I(A:R)` in bits from both routes for every time and every window size in
/// `0..=L`.
pub fn cross_check_mutual_information(setup: &QuenchSetup, times: &[f64], coupling: Coupling) -> Result<CrossCheck> {
    let e = setup.reference_site().ok_or(Error::MissingReference)?;
    let r = setup.reference_mode().ok_or(Error::MissingReference)?;
    let l = setup.sites();
    let dynamics = QuenchDynamics::from_setup(setup)?;
    let basis = basis_for(setup)?;
    let psi0 = initial_state(setup, &basis)?;
    let exact = ExactPropagator::new(&many_body_hamiltonian(&setup.hamiltonian(), &basis)?)?;
    let mut out = CrossCheck { gaussian: Vec::new(), exact: Vec::new() };
    for &t in times {
        let psi = exact.evolve(&psi0, t)?;
        let s_r = exact_entropy(&basis, &psi, &[r], LogBase::Two)?;
        for size in 0..=l {
            let a = sic_window(coupling, e, size, l)?;
            let mut ar = a.clone();
            ar.push(r);
            let s_a = exact_entropy(&basis, &psi, &a, LogBase::Two)?;
            let s_ar = exact_entropy(&basis, &psi, &ar, LogBase::Two)?;
            out.gaussian.push(dynamics.mutual_information(t, &a)?);
            out.exact.push(s_a + s_r - s_ar);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::InitialState;
    use crate::model::{build_hamiltonian, LatticeParams};
    use crate::spectral::diagonalize;
    use approx::assert_abs_diff_eq;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn basis_sizes() {
        for m in 1..=10 {
            for n in 0..=m {
                let b = FockBasis::fixed(m, n).unwrap();
                assert_eq!(b.len(), binomial(m, n));
                for (k, &s) in b.states().iter().enumerate() {
                    assert_eq!(b.index_of(s), Some(k));
                }
            }
        }
        assert_eq!(FockBasis::full(5).unwrap().len(), 32);
        assert!(FockBasis::full(13).is_err());
        assert_eq!(FockBasis::fixed(4, 2).unwrap().index_of(0b0111), None);
    }

    #[test]
    fn single_particle_sector_is_h() {
        let h = build_hamiltonian(&LatticeParams::new(2, 0.0, 0.0).build().unwrap());
        let basis = FockBasis::fixed(2, 1).unwrap();
        assert_eq!(many_body_hamiltonian(&h, &basis).unwrap(), h);
        // also for a generic chain
        let h = build_hamiltonian(&LatticeParams::new(6, 1.1, 0.3).build().unwrap());
        assert_eq!(many_body_hamiltonian(&h, &FockBasis::fixed(6, 1).unwrap()).unwrap(), h);
    }

    #[test]
    fn diagonal_h_gives_occupation_sums() {
        let mu = [0.3, -1.0, 2.5, 0.7];
        let h = DMatrix::from_diagonal(&DVector::from_row_slice(&mu));
        let basis = FockBasis::full(4).unwrap();
        let big = many_body_hamiltonian(&h, &basis).unwrap();
        for (k, &n) in basis.states().iter().enumerate() {
            let expected: f64 = (0..4).filter(|&i| n & (1 << i) != 0).map(|i| mu[i]).sum();
            assert_abs_diff_eq!(big[(k, k)], expected, epsilon = 1e-15);
        }
        let off_diagonal = (0..16).flat_map(|a| (0..16).map(move |b| (a, b))).filter(|(a, b)| a != b);
        assert!(off_diagonal.into_iter().all(|(a, b)| big[(a, b)] == 0.0));
    }

    #[test]
    fn three_particle_spectrum_is_subset_sums() {
        let h = build_hamiltonian(&LatticeParams::new(6, 1.0, 0.3).build().unwrap());
        let eps = diagonalize(&h).unwrap().energies;
        let mut sums = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    sums.push(eps[i] + eps[j] + eps[k]);
                }
            }
        }
        sums.sort_by(f64::total_cmp);
        let big = many_body_hamiltonian(&h, &FockBasis::fixed(6, 3).unwrap()).unwrap();
        let many = diagonalize(&big).unwrap().energies;
        assert_eq!(many.len(), 20);
        for (a, b) in many.iter().zip(&sums) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn evolution_basics() {
        let setup = QuenchSetup::neel(LatticeParams::new(6, 1.0, 0.3).build().unwrap()).unwrap();
        let basis = basis_for(&setup).unwrap();
        let big = many_body_hamiltonian(&setup.hamiltonian(), &basis).unwrap();
        let psi0 = initial_state(&setup, &basis).unwrap();
        let prop = ExactPropagator::new(&big).unwrap();
        let same = prop.evolve(&psi0, 0.0).unwrap();
        assert!((same - &psi0).norm() < 1e-12);
        let later = prop.evolve(&psi0, 37.0).unwrap();
        assert_abs_diff_eq!(later.norm(), 1.0, epsilon = 1e-10);
        // eigenstates only pick up a phase
        let eig = big.clone().symmetric_eigen();
        let v = eig.eigenvectors.column(3).map(|x| Complex64::new(x, 0.0));
        let vt = prop.evolve(&v, 5.0).unwrap();
        assert_abs_diff_eq!(crate::linalg::cabs(vt.dotc(&v)), 1.0, epsilon = 1e-10);
        let half = [0usize, 1, 2];
        assert_abs_diff_eq!(
            exact_entropy(&basis, &vt, &half, LogBase::Natural).unwrap(),
            exact_entropy(&basis, &v, &half, LogBase::Natural).unwrap(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn dimer_occupancy() {
        let setup = QuenchSetup::neel(LatticeParams::new(2, 0.0, 0.0).build().unwrap()).unwrap();
        let basis = basis_for(&setup).unwrap();
        let big = many_body_hamiltonian(&setup.hamiltonian(), &basis).unwrap();
        let psi0 = initial_state(&setup, &basis).unwrap();
        for t in [0.2, 1.0, 3.3] {
            let psi = exact_evolve(&psi0, &big, t).unwrap();
            assert_abs_diff_eq!(occupation(&basis, &psi, 0).unwrap(), libm::cos(t).powi(2), epsilon = 1e-12);
        }
    }

    #[test]
    fn entropies_of_simple_states() {
        let basis = FockBasis::fixed(4, 2).unwrap();
        let prod = product_state(&basis, &[true, false, true, false]).unwrap();
        for subset in [&[0usize][..], &[1, 2], &[0, 1, 3]] {
            assert_abs_diff_eq!(exact_entropy(&basis, &prod, subset, LogBase::Two).unwrap(), 0.0, epsilon = 1e-12);
        }
        // Bell pair between site E and the reference
        let spec = LatticeParams::new(4, 0.5, 0.0).build().unwrap();
        let setup = QuenchSetup::new(spec, InitialState::Neel, Some(2)).unwrap();
        let basis = basis_for(&setup).unwrap();
        let psi = initial_state(&setup, &basis).unwrap();
        assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(exact_entropy(&basis, &psi, &[1], LogBase::Two).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(exact_entropy(&basis, &psi, &[4], LogBase::Two).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(exact_entropy(&basis, &psi, &[1, 4], LogBase::Two).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn reduced_density_matrices_are_states() {
        let spec = LatticeParams::new(5, 0.8, 0.2).build().unwrap();
        let setup = QuenchSetup::new(spec, InitialState::Neel, Some(3)).unwrap();
        let basis = basis_for(&setup).unwrap();
        let big = many_body_hamiltonian(&setup.hamiltonian(), &basis).unwrap();
        let psi = exact_evolve(&initial_state(&setup, &basis).unwrap(), &big, 2.7).unwrap();
        for subset in [&[0usize, 2][..], &[1, 3, 5], &[4]] {
            let rho = reduced_density_matrix(&basis, &psi, subset).unwrap();
            let tr: Complex64 = rho.diagonal().iter().sum();
            assert_abs_diff_eq!(tr.re, 1.0, epsilon = 1e-10);
            assert!(crate::linalg::max_non_hermiticity(&rho) < 1e-12);
            for p in hermitian_eigenvalues(rho) {
                assert!(p > -1e-10);
            }
            let complement: Vec<usize> = (0..6).filter(|i| !subset.contains(i)).collect();
            assert_abs_diff_eq!(
                exact_entropy(&basis, &psi, subset, LogBase::Natural).unwrap(),
                exact_entropy(&basis, &psi, &complement, LogBase::Natural).unwrap(),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn fixed_sector_never_leaks() {
        let h = build_hamiltonian(&LatticeParams::new(6, 1.0, 0.3).build().unwrap());
        let full = FockBasis::full(6).unwrap();
        let big = many_body_hamiltonian(&h, &full).unwrap();
        for (a, &na) in full.states().iter().enumerate() {
            for (b, &nb) in full.states().iter().enumerate() {
                if na.count_ones() != nb.count_ones() {
                    assert_eq!(big[(a, b)], 0.0);
                }
            }
        }
    }

    #[test]
    fn gaussian_agrees_at_small_size() {
        let setup = QuenchSetup::neel(LatticeParams::new(6, 1.0, 0.3).build().unwrap()).unwrap();
        let check = cross_check_entropy(&setup, &[0.0, 1.0, 4.0]).unwrap();
        assert!(check.max_abs_diff() < 1e-8, "{check:?}");
        let spec = LatticeParams::new(4, 0.5, 0.0).build().unwrap();
        let setup = QuenchSetup::new(spec, InitialState::DomainWall, Some(2)).unwrap();
        for coupling in [Coupling::Center, Coupling::Edge] {
            let check = cross_check_mutual_information(&setup, &[0.0, 2.0], coupling).unwrap();
            assert_eq!(check.len(), 10);
            assert!(check.max_abs_diff() < 1e-8, "{check:?}");
        }
    }

    #[test]
    fn size_guard() {
        let h = DMatrix::zeros(3, 3);
        assert!(many_body_hamiltonian(&h, &FockBasis::full(4).unwrap()).is_err());
        let spec = LatticeParams::new(12, 0.5, 0.0).build().unwrap();
        let setup = QuenchSetup::new(spec, InitialState::Neel, Some(6)).unwrap();
        assert_eq!(basis_for(&setup), Err(Error::TooManyModes { modes: 13, limit: MAX_MODES }));
    }
}
