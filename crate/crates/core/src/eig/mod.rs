//! Dense complex eigendecomposition for non-Hermitian matrices.
//!
//! The pipeline is: power-of-two balancing, Householder reduction to upper
//! Hessenberg form, single-shift QR to the complex Schur form `T`, then
//! back-substitution on `T` for the right eigenvectors. Every returned
//! eigenpair carries its residual `‖H·v − E·v‖₂` against the input matrix.

mod oracle;
mod schur;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::ComplexMatrix;

pub use oracle::{MAX_ORACLE_DIM, charpoly_coefficients, charpoly_roots, polynomial_roots};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigError {
    #[error("QR iteration on a {n}×{n} matrix did not converge after {sweeps} sweeps")]
    NoConvergence { n: usize, sweeps: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("characteristic polynomial oracle supports N <= {max}, got N = {n}")]
    OracleOutOfRange { n: usize, max: usize },
    #[error("polynomial root finder did not converge after {iterations} iterations")]
    RootFinder { iterations: usize },
}

/// QR sweep budget per matrix dimension.
pub const SWEEPS_PER_DIM: usize = 30;

/// Eigenvalues, unit-norm right eigenvectors and residuals of one matrix,
/// sorted by real part and then imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<Complex64>>,
    pub residuals: Vec<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn eigenvalue_sum(&self) -> Complex64 {
        self.eigenvalues.iter().sum()
    }
}

/// Canonical order: real part ascending, ties by imaginary part.
pub fn spectral_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn check_input(h: &ComplexMatrix) -> Result<(), EigError> {
    if h.dim() == 0 {
        return Err(EigError::Empty);
    }
    if !h.is_finite() {
        return Err(EigError::NonFinite);
    }
    Ok(())
}

fn budget(n: usize) -> usize {
    SWEEPS_PER_DIM * n
}

/// All eigenvalues of `h`, without eigenvectors. Cheaper than
/// [`eigendecompose`]; used by predicates that only need the spectrum.
pub fn eigenvalues(h: &ComplexMatrix) -> Result<Vec<Complex64>, EigError> {
    check_input(h)?;
    let n = h.dim();
    let mut t = h.clone();
    schur::balance(&mut t);
    schur::hessenberg(&mut t, None);
    schur::hessenberg_qr(&mut t, None, false, budget(n))
        .map_err(|e| EigError::NoConvergence { n, sweeps: e.sweeps })?;
    let mut vals: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    vals.sort_by(spectral_order);
    Ok(vals)
}

/// Full eigendecomposition with right eigenvectors and residuals.
pub fn eigendecompose(h: &ComplexMatrix) -> Result<Spectrum, EigError> {
    check_input(h)?;
    let n = h.dim();
    let mut t = h.clone();
    let scale = schur::balance(&mut t);
    let mut z = ComplexMatrix::identity(n);
    schur::hessenberg(&mut t, Some(&mut z));
    schur::hessenberg_qr(&mut t, Some(&mut z), true, budget(n))
        .map_err(|e| EigError::NoConvergence { n, sweeps: e.sweeps })?;

    let schur_vectors = schur::triangular_eigenvectors(&t);
    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = schur_vectors
        .into_iter()
        .enumerate()
        .map(|(k, x)| {
            // v = D·Z·x; x is zero below index k
            let mut v: Vec<Complex64> = (0..n)
                .map(|r| (0..=k).map(|c| z[(r, c)] * x[c]).sum::<Complex64>() * scale[r])
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for vi in &mut v {
                *vi /= norm;
            }
            (t[(k, k)], v)
        })
        .collect();
    pairs.sort_by(|a, b| spectral_order(&a.0, &b.0));

    let residuals = pairs.iter().map(|(e, v)| residual(h, *e, v)).collect();
    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residuals,
    })
}

/// `‖H·v − E·v‖₂`.
pub fn residual(h: &ComplexMatrix, e: Complex64, v: &[Complex64]) -> f64 {
    h.mul_vec(v)
        .iter()
        .zip(v)
        .map(|(hv, vi)| (hv - e * vi).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
