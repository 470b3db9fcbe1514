//! Criterion benchmarks for the eigensolver and the sweep engine live in
//! `benches/`. This library only provides shared fixtures.

use ptlat_core::{Beta, ComplexMatrix, ModelSpec};

/// β = 1/2 chain with impurities next to the edges, away from any
/// exceptional point.
pub fn ssh_fixture(n: usize) -> ComplexMatrix {
    ModelSpec::off_diagonal(n, 0.4, Beta::half())
        .gamma(0.3)
        .site(2)
        .phi(0.4)
        .build()
        .expect("fixture spec is valid")
}
