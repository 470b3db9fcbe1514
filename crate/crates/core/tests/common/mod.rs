#![allow(dead_code)]

use ptlat_core::{Complex64, ComplexMatrix};
use rand::Rng;

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest over all pairings of the largest pairwise distance.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    if a.len() <= 8 {
        return permutations(a.len())
            .into_iter()
            .map(|p| p.iter().enumerate().map(|(i, &j)| (a[i] - b[j]).norm()).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min);
    }
    // greedy matching is enough for well-separated spectra
    let mut used = vec![false; b.len()];
    a.iter()
        .map(|x| {
            let (j, d) = b
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, y)| (j, (x - y).norm()))
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .unwrap();
            used[j] = true;
            d
        })
        .fold(0.0, f64::max)
}

/// Distance between a multiset and its complex conjugate.
pub fn conjugation_defect(vals: &[Complex64]) -> f64 {
    let conj: Vec<Complex64> = vals.iter().map(|z| z.conj()).collect();
    multiset_distance(vals, &conj)
}
