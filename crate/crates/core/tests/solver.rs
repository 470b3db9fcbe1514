mod common;

use common::{multiset_distance, random_matrix};
use ptlat_core::eig::{MAX_ORACLE_DIM, charpoly_roots, eigendecompose, eigenvalues};
use ptlat_core::{Beta, ComplexMatrix, ModelSpec, RationalBeta};
use rand::SeedableRng;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

#[test]
fn oracle_agrees_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let n = 2 + trial % 5;
        let h = random_matrix(&mut rng, n);
        let qr = eigendecompose(&h).unwrap().eigenvalues;
        let oracle = charpoly_roots(&h).unwrap();
        worst = worst.max(multiset_distance(&qr, &oracle));
    }
    assert!(worst <= 1e-8, "worst oracle distance {worst:e}");
}

#[test]
fn oracle_agrees_on_model_matrices() {
    let third = Beta::Rational(RationalBeta::inverse_of(3).unwrap());
    for n in 2..=MAX_ORACLE_DIM {
        for j in 1..=n {
            let h = ModelSpec::off_diagonal(n, 0.4, third).gamma(0.35).site(j).phi(0.9).build().unwrap();
            let d = multiset_distance(&eigenvalues(&h).unwrap(), &charpoly_roots(&h).unwrap());
            assert!(d <= 1e-8, "n={n} j={j} distance {d:e}");
        }
    }
}

#[test]
fn permutation_similarity_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3, 8, 20, 40] {
        let h = random_matrix(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let a = eigenvalues(&h).unwrap();
        let b = eigenvalues(&h.permuted(&perm)).unwrap();
        let d = multiset_distance(&a, &b);
        assert!(d <= 1e-10, "n={n}: {d:e}");
    }
    let h = ModelSpec::off_diagonal(50, 0.4, Beta::half()).gamma(0.3).site(2).build().unwrap();
    let mut perm: Vec<usize> = (0..50).collect();
    perm.shuffle(&mut rng);
    let d = multiset_distance(&eigenvalues(&h).unwrap(), &eigenvalues(&h.permuted(&perm)).unwrap());
    assert!(d <= 1e-10, "{d:e}");
}

#[test]
fn conjugate_matrix_has_conjugate_spectrum() {
    for (j, phi) in [(1, 0.0), (2, 1.3), (3, 2.2)] {
        let h = ModelSpec::off_diagonal(30, 0.4, Beta::half()).gamma(0.7).site(j).phi(phi).build().unwrap();
        let a: Vec<_> = eigenvalues(&h).unwrap().into_iter().map(|z| z.conj()).collect();
        let b = eigenvalues(&h.conj()).unwrap();
        assert!(multiset_distance(&a, &b) <= 1e-10);
    }
}

#[test]
fn residuals_and_norms_at_two_hundred_sites() {
    let h = ModelSpec::off_diagonal(200, 0.4, Beta::half()).gamma(0.3).site(2).phi(0.5).build().unwrap();
    let s = eigendecompose(&h).unwrap();
    assert_eq!(s.len(), 200);
    let bound = 1e-10 * h.frobenius_norm();
    assert!(s.max_residual() <= bound, "{:e} > {bound:e}", s.max_residual());
    for v in &s.eigenvectors {
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() <= 1e-12);
    }
    assert!((s.eigenvalue_sum() - h.trace()).norm() <= 1e-9 * h.frobenius_norm());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = random_matrix(&mut rng, 200);
    let s = eigendecompose(&r).unwrap();
    assert!(s.max_residual() <= 1e-10 * r.frobenius_norm());
}

#[test]
fn hermitian_inputs_give_real_spectra() {
    let h = ModelSpec::diagonal(120, 2.5, Beta::Irrational((5f64.sqrt() - 1.0) / 2.0)).phi(0.3).build().unwrap();
    let s = eigendecompose(&h).unwrap();
    assert!(s.eigenvalues.iter().all(|z| z.im.abs() <= 1e-12));
    assert!(s.eigenvalues.windows(2).all(|w| w[0].re <= w[1].re));
}

#[test]
fn degenerate_spectrum() {
    let s = eigendecompose(&ComplexMatrix::identity(5)).unwrap();
    assert!(s.eigenvalues.iter().all(|z| (z.re - 1.0).abs() < 1e-15 && z.im == 0.0));
    assert!(s.max_residual() < 1e-15);
}
