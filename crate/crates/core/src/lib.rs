//! Spectral analysis of one-dimensional non-Hermitian tight-binding chains
//! with balanced gain/loss impurities.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: lattice parameterisations and dense single-particle
//!   Hamiltonians (off-diagonal Aubry-André, its next-nearest-neighbour
//!   extension and the diagonal Aubry-André chain).
//! - [`eig`]: dense complex eigensolver (balancing, Hessenberg reduction,
//!   shifted QR, triangular back-substitution) and a characteristic
//!   polynomial oracle for small matrices.
//! - [`analysis`]: spectrum reality, zero-mode detection, localization
//!   metrics, the PT test and the Majorana decomposition of the impurity
//!   term.
//! - [`sweep`]: Φ sweeps, bisection for the critical non-Hermitian degree,
//!   phase diagrams, size scans and localization scans.
//!
//! Site indices are 1-based in every public report; matrices are stored
//! 0-based.

pub mod analysis;
pub mod eig;
pub mod matrix;
pub mod model;
pub mod sweep;

pub use num_complex::Complex64;

pub use analysis::{EdgeStateReport, MajoranaForm, ZeroModeGates};
pub use eig::{Spectrum, eigendecompose, eigenvalues};
pub use matrix::ComplexMatrix;
pub use model::{Beta, ImpurityPlacement, ModelSpec, RationalBeta, Variant};
pub use sweep::{CriticalGammaResult, RealityPolicy, SweepOptions, SweepResult};
