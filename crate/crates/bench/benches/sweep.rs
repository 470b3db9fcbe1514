use criterion::{Criterion, criterion_group, criterion_main};
use ptlat_core::sweep::{self, RealityPolicy, SweepOptions};
use ptlat_core::{Beta, ModelSpec};

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);

    let template = ModelSpec::off_diagonal(50, 0.4, Beta::half()).site(2);
    let grid = sweep::linspace(0.0, 2.0 * std::f64::consts::PI, 201);
    for (label, opts) in [("serial", SweepOptions::default().serial()), ("parallel", SweepOptions::default())] {
        group.bench_function(format!("sweep_phi_n50_201/{label}"), |b| {
            b.iter(|| sweep::sweep_phi(&template, &grid, &opts).unwrap())
        });
    }
    group.bench_function("critical_gamma_n50_allphi", |b| {
        b.iter(|| sweep::critical_gamma(&template, RealityPolicy::default(), 2.0, 1e-4, &SweepOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
