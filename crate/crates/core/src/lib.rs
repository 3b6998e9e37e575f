//! Quench dynamics of the generalized Aubry-André chain.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure numerics:
//!
//! * [`model`]: on-site quasiperiodic potential and the single-particle Hamiltonian.
//! * [`spectral`]: dense eigensolve, inverse participation ratio, analytic mobility
//!   edge and the extended/localized classification of eigenstates.
//! * [`gaussian`]: free-fermion correlation matrices, exact propagation and
//!   subsystem entropies, including the reference-mode construction used for the
//!   subsystem information capacity.
//! * [`observables`]: measurement protocols built on top of the Gaussian fast path
//!   (early-time velocity, saturation entropy, finite-size scaling, SIC profiles).
//! * [`oracle`]: brute-force Fock-space reference for small chains.
//!
//! File formats, sweeps and the command line live in the `gaa` crate.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod exec;
pub mod gaussian;
mod linalg;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod spectral;

pub use error::{Error, Result};
pub use exec::{Executor, Serial};
pub use model::{Boundary, LatticeParams, LatticeSpec, Modulation};

/// Complex scalar used for correlation matrices and many-body amplitudes.
pub type Complex64 = nalgebra::Complex<f64>;
