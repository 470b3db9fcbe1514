//! Diagnostics on one spectrum or one Hamiltonian.

mod majorana;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eig::{Spectrum, spectral_order};
use crate::matrix::ComplexMatrix;
use crate::model::{ModelError, Variant};

pub use majorana::{MajoranaBilinear, MajoranaForm, Species, deltas, majorana_form};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("Majorana decomposition needs beta = 1/2, got {beta}")]
    MajoranaNeedsHalf { beta: String },
    #[error("Majorana decomposition needs the off-diagonal-aa variant, got {variant}")]
    MajoranaVariant { variant: Variant },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Default reality tolerance, in units of `t`.
pub const DEFAULT_EPS_REAL: f64 = 1e-8;

/// Largest `|Im E|` in the spectrum.
pub fn max_imag(s: &Spectrum) -> f64 {
    max_imag_of(&s.eigenvalues)
}

pub fn max_imag_of(eigenvalues: &[Complex64]) -> f64 {
    eigenvalues.iter().map(|e| e.im.abs()).fold(0.0, f64::max)
}

pub fn is_spectrum_real(s: &Spectrum, eps_real: f64) -> bool {
    max_imag(s) <= eps_real
}

/// Inverse participation ratio `Σ|v_n|⁴ / (Σ|v_n|²)²`.
pub fn ipr(v: &[Complex64]) -> f64 {
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm2 == 0.0 {
        return 0.0;
    }
    v.iter().map(|z| z.norm_sqr().powi(2)).sum::<f64>() / (norm2 * norm2)
}

/// Number of sites counted at each end for a given edge fraction.
pub fn edge_sites(n: usize, fraction: f64) -> usize {
    ((fraction * n as f64).ceil() as usize).min(n)
}

/// Probability weight on the first and last `⌈fraction·N⌉` sites.
pub fn edge_weight(v: &[Complex64], fraction: f64) -> f64 {
    let n = v.len();
    let m = edge_sites(n, fraction);
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm2 == 0.0 {
        return 0.0;
    }
    let weight: f64 = if 2 * m >= n {
        norm2
    } else {
        v[..m].iter().chain(&v[n - m..]).map(|z| z.norm_sqr()).sum()
    };
    weight / norm2
}

/// Energy and localization gates for zero-mode detection, in units of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroModeGates {
    pub eps_zero: f64,
    pub w_min: f64,
    pub fraction: f64,
}

impl Default for ZeroModeGates {
    fn default() -> Self {
        Self {
            eps_zero: 1e-3,
            w_min: 0.5,
            fraction: 0.1,
        }
    }
}

impl ZeroModeGates {
    /// Gates with the energy threshold expressed in absolute energy units.
    pub fn scaled(self, t: f64) -> Self {
        Self {
            eps_zero: self.eps_zero * t,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroMode {
    /// Position in the spectrum's canonical order (0-based).
    pub index: usize,
    pub energy: Complex64,
    pub ipr: f64,
    pub edge_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeStateReport {
    pub zero_modes: Vec<ZeroMode>,
    pub count: usize,
    /// Smallest `|Re E|` among the remaining states; `None` when every state
    /// passed the gates.
    pub bulk_gap: Option<f64>,
    pub gates: ZeroModeGates,
}

/// Eigenpairs with `|Re E| ≤ eps_zero` and edge weight `≥ w_min`.
pub fn find_zero_modes(s: &Spectrum, gates: ZeroModeGates) -> EdgeStateReport {
    let mut zero_modes = Vec::new();
    let mut bulk_gap: Option<f64> = None;
    for (index, (&energy, v)) in s.eigenvalues.iter().zip(&s.eigenvectors).enumerate() {
        let weight = edge_weight(v, gates.fraction);
        if energy.re.abs() <= gates.eps_zero && weight >= gates.w_min {
            zero_modes.push(ZeroMode {
                index,
                energy,
                ipr: ipr(v),
                edge_weight: weight,
            });
        } else {
            let gap = energy.re.abs();
            bulk_gap = Some(bulk_gap.map_or(gap, |g| g.min(gap)));
        }
    }
    zero_modes.sort_by(|a, b| spectral_order(&a.energy, &b.energy).then(a.edge_weight.total_cmp(&b.edge_weight)));
    EdgeStateReport {
        count: zero_modes.len(),
        zero_modes,
        bulk_gap,
        gates,
    }
}

/// Default PT tolerance `1e−12·‖H‖_F`.
pub fn default_pt_eps(h: &ComplexMatrix) -> f64 {
    1e-12 * h.frobenius_norm().max(f64::MIN_POSITIVE)
}

/// `‖P·conj(H)·P − H‖_max` with `P` the site reversal.
pub fn pt_defect(h: &ComplexMatrix) -> f64 {
    h.conj().reversed().max_abs_diff(h)
}

/// True iff `H` commutes with site reversal combined with complex
/// conjugation, to within `eps`.
pub fn check_pt(h: &ComplexMatrix, eps: f64) -> bool {
    pt_defect(h) <= eps
}
