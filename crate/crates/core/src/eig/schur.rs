//! Complex Schur decomposition `A = Z·T·Z*` by Householder reduction to
//! Hessenberg form followed by single-shift QR with Givens rotations.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[inline]
pub(crate) fn cabs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Diagonal similarity scaling `D⁻¹·A·D` with powers of two, so the
/// balanced matrix has comparable row and column norms. Returns `D`.
pub(crate) fn balance(a: &mut ComplexMatrix) -> Vec<f64> {
    const RADIX: f64 = 2.0;
    let n = a.dim();
    let mut d = vec![1.0; n];
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        converged = true;
        sweeps += 1;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for k in 0..n {
                if k != i {
                    col += cabs1(a[(k, i)]);
                    row += cabs1(a[(i, k)]);
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut g = row / RADIX;
            while col < g {
                f *= RADIX;
                col *= RADIX * RADIX;
            }
            g = row * RADIX;
            while col >= g {
                f /= RADIX;
                col /= RADIX * RADIX;
            }
            if (col + row) / f < 0.95 * total {
                converged = false;
                d[i] *= f;
                for k in 0..n {
                    a[(i, k)] /= f;
                    a[(k, i)] *= f;
                }
            }
        }
    }
    d
}

/// Reduces `a` to upper Hessenberg form in place. If `q` is given it is
/// post-multiplied by the accumulated unitary transform.
pub(crate) fn hessenberg(a: &mut ComplexMatrix, mut q: Option<&mut ComplexMatrix>) {
    let n = a.dim();
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        // v = x − α·e₁, normalised; reflector I − 2vv*
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in &mut v[k + 1..n] {
            *vi /= vnorm;
        }
        // rows: A ← (I − 2vv*)·A
        for c in k..n {
            let s: Complex64 = (k + 1..n).map(|i| v[i].conj() * a[(i, c)]).sum();
            let s2 = s * 2.0;
            for i in k + 1..n {
                a[(i, c)] -= v[i] * s2;
            }
        }
        // columns: A ← A·(I − 2vv*)
        for r in 0..n {
            let s: Complex64 = (k + 1..n).map(|i| a[(r, i)] * v[i]).sum();
            let s2 = s * 2.0;
            for i in k + 1..n {
                a[(r, i)] -= s2 * v[i].conj();
            }
        }
        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                let s: Complex64 = (k + 1..n).map(|i| q[(r, i)] * v[i]).sum();
                let s2 = s * 2.0;
                for i in k + 1..n {
                    q[(r, i)] -= s2 * v[i].conj();
                }
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Rotation `G = [c s; −s̄ c]` with `G·[a; b] = [r; 0]`.
#[derive(Clone, Copy, Debug)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    fn new(a: Complex64, b: Complex64) -> Self {
        let bn = b.norm();
        if bn == 0.0 {
            return Self { c: 1.0, s: ZERO };
        }
        let an = a.norm();
        if an == 0.0 {
            return Self { c: 0.0, s: ONE };
        }
        let norm = an.hypot(bn);
        let phase = a / an;
        Self {
            c: an / norm,
            s: phase * b.conj() / norm,
        }
    }

    /// Rows `k`, `k+1` of `m`, columns `cols`.
    #[inline]
    fn rows(self, m: &mut ComplexMatrix, k: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(k, j)];
            let y = m[(k + 1, j)];
            m[(k, j)] = x * self.c + self.s * y;
            m[(k + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// `m ← m·G*` on columns `k`, `k+1`, rows `rows`.
    #[inline]
    fn cols(self, m: &mut ComplexMatrix, k: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let x = m[(i, k)];
            let y = m[(i, k + 1)];
            m[(i, k)] = x * self.c + y * self.s.conj();
            m[(i, k + 1)] = -x * self.s + y * self.c;
        }
    }
}

/// Shifted QR did not converge within the sweep budget.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NoConvergence {
    pub sweeps: usize,
}

/// Wilkinson shift from the trailing 2×2 block `[a b; c d]`: the eigenvalue
/// nearer to `d`.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let e1 = mean + disc;
    let e2 = mean - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// Reduces an upper Hessenberg matrix to upper triangular Schur form.
///
/// With `full = true` the whole matrix is updated (needed for eigenvectors)
/// and `z`, when present, accumulates the rotations. With `full = false`
/// only the active window is touched, which is enough for eigenvalues.
pub(crate) fn hessenberg_qr(
    h: &mut ComplexMatrix,
    mut z: Option<&mut ComplexMatrix>,
    full: bool,
    max_sweeps: usize,
) -> Result<usize, NoConvergence> {
    let n = h.dim();
    if n <= 1 {
        return Ok(0);
    }
    let ulp = f64::EPSILON;
    let safe_min = f64::MIN_POSITIVE;
    let small = safe_min * (n as f64 / ulp);
    let hnorm = h.max_abs().max(small);

    let mut rotations: Vec<Givens> = Vec::with_capacity(n);
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    while hi > 0 {
        // locate the top of the unreduced block ending at hi
        let mut lo = hi;
        while lo > 0 {
            let sub = cabs1(h[(lo, lo - 1)]);
            let mut diag = cabs1(h[(lo - 1, lo - 1)]) + cabs1(h[(lo, lo)]);
            if diag == 0.0 {
                diag = hnorm;
            }
            if sub <= small.max(ulp * diag) {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        total += 1;
        since_deflation += 1;
        if total > max_sweeps {
            return Err(NoConvergence { sweeps: total - 1 });
        }

        let shift = if since_deflation.is_multiple_of(10) {
            // exceptional shift breaks cycles
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].re.abs(), 0.0)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let (col_end, row_start) = if full { (n, 0) } else { (hi + 1, lo) };
        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        rotations.clear();
        for k in lo..hi {
            let g = Givens::new(h[(k, k)], h[(k + 1, k)]);
            g.rows(h, k, k..col_end);
            h[(k + 1, k)] = ZERO;
            rotations.push(g);
        }
        for (offset, g) in rotations.iter().enumerate() {
            let k = lo + offset;
            g.cols(h, k, row_start..k + 2);
            if let Some(z) = z.as_deref_mut() {
                g.cols(z, k, 0..n);
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(total)
}

/// Right eigenvectors of an upper triangular `t`, one per column, by
/// back-substitution. Near-zero pivots are replaced by a floor so the
/// solve stays finite for repeated eigenvalues.
pub(crate) fn triangular_eigenvectors(t: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    let n = t.dim();
    let ulp = f64::EPSILON;
    let tnorm = t.max_abs();
    let smin = (ulp * tnorm).max(f64::MIN_POSITIVE * 1e4);
    const BIG: f64 = 1e150;

    (0..n)
        .map(|k| {
            let lambda = t[(k, k)];
            let mut x = vec![ZERO; n];
            x[k] = ONE;
            for i in (0..k).rev() {
                let s: Complex64 = (i + 1..=k).map(|j| t[(i, j)] * x[j]).sum();
                let mut d = t[(i, i)] - lambda;
                if d.norm() < smin {
                    d = Complex64::new(smin, 0.0);
                }
                x[i] = -s / d;
                if x[i].norm() > BIG {
                    let scale = 1.0 / x[i].norm();
                    for xj in &mut x[i..=k] {
                        *xj *= scale;
                    }
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> ComplexMatrix {
        ComplexMatrix::from_fn(6, |r, col| c((r * 7 + col * 3) as f64 % 5.0 - 2.0, ((r + 2 * col) % 3) as f64 - 1.0))
    }

    #[test]
    fn hessenberg_is_a_unitary_similarity() {
        let a = sample();
        let mut h = a.clone();
        let mut q = ComplexMatrix::identity(6);
        hessenberg(&mut h, Some(&mut q));
        for r in 2..6 {
            for col in 0..r - 1 {
                assert_eq!(h[(r, col)], ZERO);
            }
        }
        let back = q.matmul(&h).matmul(&q.adjoint());
        assert!(back.max_abs_diff(&a) < 1e-13);
        assert!(q.matmul(&q.adjoint()).max_abs_diff(&ComplexMatrix::identity(6)) < 1e-14);
    }

    #[test]
    fn schur_form_is_triangular_and_similar() {
        let a = sample();
        let mut t = a.clone();
        let mut z = ComplexMatrix::identity(6);
        hessenberg(&mut t, Some(&mut z));
        hessenberg_qr(&mut t, Some(&mut z), true, 180).unwrap();
        for r in 1..6 {
            for col in 0..r {
                assert_eq!(t[(r, col)], ZERO);
            }
        }
        let back = z.matmul(&t).matmul(&z.adjoint());
        assert!(back.max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn balancing_preserves_trace_and_evens_norms() {
        let mut a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1e6, 0.0)],
            vec![c(1e-6, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let d = balance(&mut a);
        assert_eq!(a.trace(), c(3.0, 0.0));
        assert!(a[(0, 1)].norm() < 10.0 && a[(1, 0)].norm() < 10.0);
        assert!(d.iter().all(|x| x.log2().fract() == 0.0));
    }

    #[test]
    fn givens_zeroes_second_component() {
        let g = Givens::new(c(1.0, 2.0), c(-3.0, 0.5));
        let mut m = ComplexMatrix::from_rows(&[vec![c(1.0, 2.0), ZERO], vec![c(-3.0, 0.5), ZERO]]).unwrap();
        g.rows(&mut m, 0, 0..1);
        assert!(m[(1, 0)].norm() < 1e-15);
        assert!((m[(0, 0)].norm() - (5.0f64 + 9.25).sqrt()).abs() < 1e-14);
    }
}
