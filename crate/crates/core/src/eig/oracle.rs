//! Characteristic-polynomial route to the spectrum of small matrices.
//!
//! Shares no code with the QR path: coefficients come from the
//! Faddeev-LeVerrier recursion and roots from Durand-Kerner iteration.

use num_complex::Complex64;

use super::{EigError, spectral_order};
use crate::matrix::ComplexMatrix;

/// Largest dimension the oracle accepts.
pub const MAX_ORACLE_DIM: usize = 8;

const DK_MAX_ITERATIONS: usize = 5000;

/// Coefficients `[c₀, c₁, …, c_N]` of `det(λI − H) = Σ c_k λ^k`, `c_N = 1`.
pub fn charpoly_coefficients(h: &ComplexMatrix) -> Vec<Complex64> {
    let n = h.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    // M₀ = 0; M_k = H·M_{k−1} + c_{n−k+1}·I; c_{n−k} = −tr(H·M_k)/k
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let mut next = h.matmul(&m);
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        m = next;
        coeffs[n - k] = -h.matmul(&m).trace() / k as f64;
    }
    coeffs
}

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn horner_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Roots of the polynomial `Σ coeffs[k]·x^k`, sorted in spectral order.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, EigError> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();

    // Cauchy bound on root moduli
    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    // starts spread on a circle, rotated off the real axis
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..DK_MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let xi = roots[i];
            let denom: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| xi - roots[j])
                .product();
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-10 * radius, 1e-10 * radius);
                max_step = f64::INFINITY;
                continue;
            }
            let step = horner(&monic, xi) / denom;
            roots[i] = xi - step;
            max_step = max_step.max(step.norm() / (1.0 + roots[i].norm()));
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged && roots.iter().any(|r| !(r.re.is_finite() && r.im.is_finite())) {
        return Err(EigError::RootFinder {
            iterations: DK_MAX_ITERATIONS,
        });
    }

    // Newton polish; keep a step only if it lowers |p|
    for r in &mut roots {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(&monic, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let candidate = *r - p / dp;
            if horner(&monic, candidate).norm() < p.norm() {
                *r = candidate;
            } else {
                break;
            }
        }
    }
    roots.sort_by(spectral_order);
    Ok(roots)
}

/// Eigenvalues of a matrix with `N <= 8` as roots of its characteristic
/// polynomial.
pub fn charpoly_roots(h: &ComplexMatrix) -> Result<Vec<Complex64>, EigError> {
    let n = h.dim();
    if n > MAX_ORACLE_DIM {
        return Err(EigError::OracleOutOfRange {
            n,
            max: MAX_ORACLE_DIM,
        });
    }
    if n == 0 {
        return Err(EigError::Empty);
    }
    if !h.is_finite() {
        return Err(EigError::NonFinite);
    }
    polynomial_roots(&charpoly_coefficients(h))
}
