//! Dense square complex matrix in row-major storage.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

/// Dense `n × n` complex matrix.
///
/// Indexing is 0-based: `m[(r, c)]` is the coefficient of `a†_{r+1} a_{c+1}`
/// in the second-quantised Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from rows. Returns `None` if the rows are ragged or
    /// the shape is not square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    /// Matrix dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 1-based site indices, matching the lattice labelling.
    pub fn site_entry(&self, row: usize, col: usize) -> Complex64 {
        self[(row - 1, col - 1)]
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    /// `P·M·Pᵀ` for the permutation sending basis vector `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut out = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out[(perm[r], perm[c])] = self[(r, c)];
            }
        }
        out
    }

    /// Site reversal `n → N+1−n` applied on both sides.
    pub fn reversed(&self) -> Self {
        let n = self.n;
        Self::from_fn(n, |r, c| self[(n - 1 - r, n - 1 - c)])
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.n).all(|r| (r..self.n).all(|c| (self[(r, c)] - self[(c, r)].conj()).norm() <= tol))
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        (0..self.n)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.n + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![]]).is_none());
        assert!(ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)]]).is_none());
    }

    #[test]
    fn permutation_and_reversal_agree() {
        let m = ComplexMatrix::from_fn(3, |r, c| Complex64::new(r as f64, c as f64 * 2.0));
        let rev = m.reversed();
        assert_eq!(rev, m.permuted(&[2, 1, 0]));
        assert_eq!(rev[(0, 1)], m[(2, 1)]);
    }

    #[test]
    fn adjoint_of_hermitian_is_itself() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 2.0)], vec![c(0.0, -2.0), c(3.0, 0.0)]])
            .unwrap();
        assert!(m.is_hermitian(0.0));
        assert_eq!(m.adjoint(), m);
        assert_eq!(m.trace(), c(4.0, 0.0));
    }
}
