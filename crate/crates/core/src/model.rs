//! Lattice parameters, the deformed quasiperiodic potential and the
//! single-particle hopping Hamiltonian.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

/// Modulation frequency `b` of the potential.
///
/// Rational values are kept exact so that `(p * i) mod q` can be reduced in
/// integers before the phase is formed; the potential is then exactly periodic
/// with period `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Modulation {
    Irrational(f64),
    Rational { p: u64, q: u64 },
}

impl Modulation {
    /// The inverse golden ratio `(sqrt(5) - 1) / 2`.
    pub fn golden() -> Self {
        Modulation::Irrational((libm::sqrt(5.0) - 1.0) / 2.0)
    }

    pub fn value(&self) -> f64 {
        match *self {
            Modulation::Irrational(b) => b,
            Modulation::Rational { p, q } => p as f64 / q as f64,
        }
    }

    /// Phase `2 pi b i` for a 1-based site `i`.
    fn phase(&self, site: usize) -> f64 {
        match *self {
            Modulation::Irrational(b) => 2.0 * PI * b * site as f64,
            Modulation::Rational { p, q } => {
                let r = ((p as u128 * site as u128) % q as u128) as f64;
                2.0 * PI * r / q as f64
            }
        }
    }
}

impl Default for Modulation {
    fn default() -> Self {
        Modulation::golden()
    }
}

/// Unvalidated model parameters. Call [`LatticeParams::build`] to obtain a
/// [`LatticeSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeParams {
    /// Number of sites `L`.
    pub sites: usize,
    /// Hopping amplitude `t`.
    pub hopping: f64,
    /// Potential strength `lambda`.
    pub lambda: f64,
    /// Deformation `a`; `a = 0` is the standard Aubry-André model.
    pub deformation: f64,
    pub modulation: Modulation,
    /// Global phase `phi`.
    pub phase: f64,
    pub boundary: Boundary,
}

impl LatticeParams {
    /// Open chain with `t = 1`, `phi = 0` and the golden-ratio modulation.
    pub fn new(sites: usize, lambda: f64, deformation: f64) -> Self {
        LatticeParams {
            sites,
            hopping: 1.0,
            lambda,
            deformation,
            modulation: Modulation::golden(),
            phase: 0.0,
            boundary: Boundary::Open,
        }
    }

    pub fn build(self) -> Result<LatticeSpec> {
        LatticeSpec::new(self)
    }
}

/// Validated lattice parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    params: LatticeParams,
}

impl LatticeSpec {
    pub fn new(params: LatticeParams) -> Result<Self> {
        let invalid = |msg: alloc::string::String| Err(Error::InvalidLattice(msg));
        if params.sites < 2 {
            return invalid(format!("L = {} but at least 2 sites are required", params.sites));
        }
        if !params.hopping.is_finite() || params.hopping == 0.0 {
            return invalid(format!("hopping t = {} must be finite and nonzero", params.hopping));
        }
        if !params.lambda.is_finite() || !params.phase.is_finite() {
            return invalid("lambda and phi must be finite".into());
        }
        if !(params.deformation.abs() < 1.0) {
            return invalid(format!("|a| = {} must be below 1", params.deformation.abs()));
        }
        match params.modulation {
            Modulation::Irrational(b) if !b.is_finite() => {
                return invalid(format!("modulation b = {b} must be finite"));
            }
            Modulation::Rational { q: 0, .. } => {
                return invalid("rational modulation needs a nonzero denominator".into());
            }
            _ => {}
        }
        if params.boundary == Boundary::Periodic {
            match params.modulation {
                Modulation::Rational { q, .. } if q as usize == params.sites => {}
                Modulation::Rational { p, q } => {
                    return invalid(format!("periodic chain of L = {} needs b = p/L, got {p}/{q}", params.sites));
                }
                Modulation::Irrational(_) => {
                    return invalid("periodic boundaries require a rational b = p/L".into());
                }
            }
        }
        Ok(LatticeSpec { params })
    }

    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn sites(&self) -> usize {
        self.params.sites
    }

    pub fn hopping(&self) -> f64 {
        self.params.hopping
    }

    pub fn lambda(&self) -> f64 {
        self.params.lambda
    }

    pub fn deformation(&self) -> f64 {
        self.params.deformation
    }

    pub fn modulation(&self) -> Modulation {
        self.params.modulation
    }

    pub fn phase(&self) -> f64 {
        self.params.phase
    }

    pub fn boundary(&self) -> Boundary {
        self.params.boundary
    }

    /// Same parameters with a different chain length. Periodic chains keep `p`
    /// and take `q = sites`.
    pub fn with_sites(&self, sites: usize) -> Result<Self> {
        let mut params = self.params.clone();
        params.sites = sites;
        if let (Boundary::Periodic, Modulation::Rational { p, .. }) = (params.boundary, params.modulation) {
            params.modulation = Modulation::Rational { p, q: sites as u64 };
        }
        LatticeSpec::new(params)
    }
}

/// On-site energy `2 lambda cos(theta) / (1 - a cos(theta))` with
/// `theta = 2 pi b i + phi` at the 1-based site `i`.
pub fn potential(spec: &LatticeSpec, site: usize) -> Result<f64> {
    if site == 0 || site > spec.sites() {
        return Err(Error::SiteOutOfRange { site, sites: spec.sites() });
    }
    Ok(potential_unchecked(spec, site))
}

fn potential_unchecked(spec: &LatticeSpec, site: usize) -> f64 {
    let c = libm::cos(spec.modulation().phase(site) + spec.phase());
    2.0 * spec.lambda() * c / (1.0 - spec.deformation() * c)
}

/// Potential on every site, stored 0-based (`out[i - 1]` is site `i`).
pub fn potentials(spec: &LatticeSpec) -> Vec<f64> {
    (1..=spec.sites()).map(|i| potential_unchecked(spec, i)).collect()
}

/// Real symmetric `L x L` single-particle Hamiltonian.
pub fn build_hamiltonian(spec: &LatticeSpec) -> DMatrix<f64> {
    let n = spec.sites();
    let t = spec.hopping();
    let mut h = DMatrix::zeros(n, n);
    for (i, mu) in potentials(spec).into_iter().enumerate() {
        h[(i, i)] = mu;
    }
    for i in 0..n - 1 {
        h[(i, i + 1)] = -t;
        h[(i + 1, i)] = -t;
    }
    if spec.boundary() == Boundary::Periodic {
        h[(0, n - 1)] = -t;
        h[(n - 1, 0)] = -t;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn half(lambda: f64, a: f64) -> LatticeSpec {
        LatticeParams { modulation: Modulation::Rational { p: 1, q: 2 }, ..LatticeParams::new(4, lambda, a) }
            .build()
            .unwrap()
    }

    #[test]
    fn potential_reduces_to_cosine() {
        assert_abs_diff_eq!(potential(&half(1.0, 0.0), 2).unwrap(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn potential_extreme_phases() {
        let spec = half(1.0, 0.5);
        assert_abs_diff_eq!(potential(&spec, 2).unwrap(), 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(potential(&spec, 1).unwrap(), -4.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn potential_rejects_bad_sites() {
        let spec = half(1.0, 0.5);
        assert_eq!(potential(&spec, 0), Err(Error::SiteOutOfRange { site: 0, sites: 4 }));
        assert!(potential(&spec, 5).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(LatticeParams::new(1, 1.0, 0.0).build().is_err());
        assert!(LatticeParams::new(4, 1.0, 1.0).build().is_err());
        assert!(LatticeParams::new(4, 1.0, -1.2).build().is_err());
        assert!(LatticeParams { hopping: 0.0, ..LatticeParams::new(4, 1.0, 0.0) }.build().is_err());
        let periodic =
            |m| LatticeParams { boundary: Boundary::Periodic, modulation: m, ..LatticeParams::new(233, 1.0, 0.3) };
        assert!(periodic(Modulation::Rational { p: 144, q: 233 }).build().is_ok());
        assert!(periodic(Modulation::Rational { p: 89, q: 144 }).build().is_err());
        assert!(periodic(Modulation::golden()).build().is_err());
        // lambda = 0 with a != 0 is allowed
        let flat = LatticeParams::new(6, 0.0, 0.4).build().unwrap();
        assert!(potentials(&flat).iter().all(|&m| m == 0.0));
    }

    #[test]
    fn dimer_hamiltonian() {
        let spec = LatticeParams::new(2, 0.0, 0.0).build().unwrap();
        let h = build_hamiltonian(&spec);
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[0.0, -1.0, -1.0, 0.0]));
    }

    #[test]
    fn ring_hamiltonian() {
        let spec = LatticeParams {
            boundary: Boundary::Periodic,
            modulation: Modulation::Rational { p: 1, q: 3 },
            ..LatticeParams::new(3, 0.0, 0.0)
        }
        .build()
        .unwrap();
        let h = build_hamiltonian(&spec);
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(3, 3, &[
            0.0, -1.0, -1.0,
            -1.0, 0.0, -1.0,
            -1.0, -1.0, 0.0,
        ]);
        assert_eq!(h, expected);
    }

    #[test]
    fn diagonal_is_potential() {
        let spec = LatticeParams::new(30, 1.3, 0.3).build().unwrap();
        let h = build_hamiltonian(&spec);
        for i in 1..=30 {
            assert_eq!(h[(i - 1, i - 1)], potential(&spec, i).unwrap());
        }
        assert_eq!(h[(0, 29)], 0.0);
    }

    #[test]
    fn with_sites_tracks_denominator() {
        let spec = LatticeParams {
            boundary: Boundary::Periodic,
            modulation: Modulation::Rational { p: 3, q: 8 },
            ..LatticeParams::new(8, 1.0, 0.2)
        }
        .build()
        .unwrap();
        let bigger = spec.with_sites(10).unwrap();
        assert_eq!(bigger.modulation(), Modulation::Rational { p: 3, q: 10 });
    }

    proptest! {
        #[test]
        fn hamiltonian_exactly_symmetric(l in 2usize..40, lambda in -3.0f64..3.0, a in -0.95f64..0.95, phi in 0.0f64..6.3) {
            let spec = LatticeParams { phase: phi, ..LatticeParams::new(l, lambda, a) }.build().unwrap();
            let h = build_hamiltonian(&spec);
            prop_assert_eq!(&h, &h.transpose());
        }

        #[test]
        fn potential_bounded(l in 2usize..60, lambda in -3.0f64..3.0, a in -0.95f64..0.95) {
            let spec = LatticeParams::new(l, lambda, a).build().unwrap();
            let bound = 2.0 * lambda.abs() / (1.0 - a.abs());
            for mu in potentials(&spec) {
                prop_assert!(mu.abs() <= bound * (1.0 + 1e-12));
            }
        }

        #[test]
        fn undeformed_potential_is_cosine(l in 2usize..60, lambda in -3.0f64..3.0, phi in 0.0f64..6.3) {
            let spec = LatticeParams { phase: phi, ..LatticeParams::new(l, lambda, 0.0) }.build().unwrap();
            let b = spec.modulation().value();
            for i in 1..=l {
                let expected = 2.0 * lambda * libm::cos(2.0 * PI * b * i as f64 + phi);
                prop_assert_eq!(potential(&spec, i).unwrap(), expected);
            }
        }

        #[test]
        fn rational_potential_periodic(p in 1u64..20, q in 2u64..25, lambda in -2.0f64..2.0, a in -0.9f64..0.9) {
            let l = 3 * q as usize;
            let spec = LatticeParams {
                modulation: Modulation::Rational { p, q },
                ..LatticeParams::new(l, lambda, a)
            }
            .build()
            .unwrap();
            let v = potentials(&spec);
            for i in 0..l - q as usize {
                prop_assert_eq!(v[i], v[i + q as usize]);
            }
        }
    }
}
