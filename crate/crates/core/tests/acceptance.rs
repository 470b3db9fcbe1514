//! Exit criteria for the toolkit. Each test prints one `[PASS]`/`[FAIL]`
//! line; run with `--nocapture --test-threads=1` for a readable report.

mod common;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use common::{multiset_distance, random_matrix};
use ptlat_core::analysis::{self, DEFAULT_EPS_REAL, Species, ZeroModeGates, check_pt, default_pt_eps};
use ptlat_core::eig::{charpoly_roots, eigendecompose, eigenvalues};
use ptlat_core::sweep::{self, RealityPolicy, SweepOptions, SweepResult};
use ptlat_core::{Beta, Complex64, ModelSpec, RationalBeta};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GAMMA_MAX: f64 = 2.0;
const TOL_BISECT: f64 = 1e-4;
const SWEEP_POINTS: usize = 201;

fn verdict(id: &str, pass: bool, detail: impl AsRef<str>) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id}: {}", detail.as_ref());
    assert!(pass, "{id} failed: {}", detail.as_ref());
}

fn beta_p(p: u32) -> Beta {
    Beta::Rational(RationalBeta::inverse_of(p).unwrap())
}

fn off(n: usize, beta: Beta) -> ModelSpec {
    ModelSpec::off_diagonal(n, 0.4, beta)
}

fn gamma_c(spec: &ModelSpec) -> f64 {
    sweep::critical_gamma(spec, RealityPolicy::AllPhi { points: 64 }, GAMMA_MAX, TOL_BISECT, &SweepOptions::default())
        .unwrap()
        .gamma_c
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

#[test]
fn ac01_critical_gamma_next_to_edges() {
    let start = Instant::now();
    let g49 = gamma_c(&off(49, Beta::half()).site(2));
    let g50 = gamma_c(&off(50, Beta::half()).site(2));
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "AC1 gamma_c(j=2) = 0.56 ± 0.02",
        within(g49, 0.56, 0.02) && within(g50, 0.56, 0.02) && secs < 60.0,
        format!("N=49 -> {g49:.4}, N=50 -> {g50:.4}, {secs:.1}s"),
    );
}

#[test]
fn ac02_critical_gamma_next_to_centre() {
    let g49 = gamma_c(&off(49, Beta::half()).site(24));
    let g50 = gamma_c(&off(50, Beta::half()).site(25));
    verdict(
        "AC2 centre-neighbour gamma_c: 0.43 ± 0.02 (N=49), 0.60 ± 0.03 (N=50)",
        within(g49, 0.43, 0.02) && within(g50, 0.60, 0.03),
        format!("N=49 j=24 -> {g49:.4}, N=50 j=25 -> {g50:.4}"),
    );
}

fn ssh_sweep(n: usize) -> SweepResult {
    let grid = sweep::linspace(0.0, 2.0 * PI, SWEEP_POINTS);
    sweep::sweep_phi(&off(n, Beta::half()), &grid, &SweepOptions::default()).unwrap()
}

#[test]
fn ac03_hermitian_topology() {
    let step = 2.0 * PI / (SWEEP_POINTS - 1) as f64;
    let r50 = ssh_sweep(50);
    let scan = sweep::transition_phis(&r50);
    let near = |target: f64| {
        scan.intervals
            .iter()
            .any(|&(a, b)| a - step <= target && target <= b + step)
    };
    let brackets_ok = scan.intervals.len() == 2 && near(PI / 2.0) && near(1.5 * PI);

    let r49 = ssh_sweep(49);
    let empty_points: Vec<f64> = r49.records.iter().filter(|r| r.zero_modes == 0).map(|r| r.value).collect();

    let mut weakest = f64::INFINITY;
    for r in [&r50, &r49] {
        for &phi in &r.grid {
            let s = eigendecompose(&r.template.clone().phi(phi).build().unwrap()).unwrap();
            for m in analysis::find_zero_modes(&s, ZeroModeGates::default()).zero_modes {
                weakest = weakest.min(m.edge_weight);
            }
        }
    }
    let edge_ok = weakest >= 0.9;

    let mut detail = format!("N=50 toggles at {:?}; ", scan.intervals.iter().map(|(a, b)| format!("({a:.4}, {b:.4})")).collect::<Vec<_>>());
    let _ = write!(
        detail,
        "N=49 grid points without a zero mode: {} {:?}; weakest accepted edge weight {weakest:.3}",
        empty_points.len(),
        empty_points.iter().map(|p| format!("{p:.3}")).collect::<Vec<_>>(),
    );
    verdict(
        "AC3 transitions bracket π/2, 3π/2 within one step (N=50); zero mode at every Φ (N=49); edge weight >= 0.9",
        brackets_ok && empty_points.is_empty() && edge_ok,
        detail,
    );
}

#[test]
fn ac04_edge_placement_breaks_everywhere() {
    let spec = off(49, Beta::half()).site(1).gamma(0.5);
    let grid = sweep::periodic_phi_grid(64);
    let real_at: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|&phi| {
            let vals = eigenvalues(&spec.clone().phi(phi).build().unwrap()).unwrap();
            analysis::max_imag_of(&vals) <= DEFAULT_EPS_REAL
        })
        .collect();
    verdict(
        "AC4 j=1, N=49, γ=0.5: complex at every Φ grid point",
        real_at.is_empty(),
        format!("{} of {} grid points have a real spectrum: {real_at:?}", real_at.len(), grid.len()),
    );
}

#[test]
fn ac05_third_filling_size_pattern() {
    let template = off(50, beta_p(3)).site(3);
    let verdicts = sweep::n_scan(&template, &[48, 49, 50], 0.1, RealityPolicy::default(), &SweepOptions::default()).unwrap();
    let pattern: Vec<bool> = verdicts.iter().map(|v| v.real).collect();
    let g = gamma_c(&template);
    verdict(
        "AC5 β=1/3, j=3: real only for N=50 at γ=0.1; gamma_c(N=50) = 0.45 ± 0.03",
        pattern == [false, false, true] && within(g, 0.45, 0.03),
        format!("real(N=48,49,50) = {pattern:?}, gamma_c(N=50) = {g:.4}"),
    );
}

#[test]
fn ac06_quarter_filling() {
    let g = gamma_c(&off(51, beta_p(4)).site(4));
    let verdicts =
        sweep::n_scan(&off(51, beta_p(4)).site(4), &[51, 55, 59], 0.1, RealityPolicy::default(), &SweepOptions::default())
            .unwrap();
    let all_real = verdicts.iter().all(|v| v.real);
    verdict(
        "AC6 β=1/4, j=4: gamma_c(N=51) = 0.15 ± 0.05; real at γ=0.1 for N=51,55,59",
        within(g, 0.15, 0.05) && all_real,
        format!("gamma_c = {g:.4}, max_imag = {:?}", verdicts.iter().map(|v| v.max_imag).collect::<Vec<_>>()),
    );
}

#[test]
fn ac07_nnn_perturbation_scale() {
    let spec = ModelSpec::with_nnn(50, 0.4, Beta::half(), 0.1).site(2);
    let at = |gamma: f64| {
        let s = eigendecompose(&spec.clone().gamma(gamma).build().unwrap()).unwrap();
        analysis::max_imag(&s)
    };
    let (a, b) = (at(0.2), at(0.3));
    verdict(
        "AC7 NNN max_imag in [1e-5, 1e-3] at γ=0.2 and [1e-4, 1e-2] at γ=0.3",
        (1e-5..=1e-3).contains(&a) && (1e-4..=1e-2).contains(&b),
        format!("γ=0.2 -> {a:.3e}, γ=0.3 -> {b:.3e}"),
    );
}

#[test]
fn ac08_quasi_periodic_breaking() {
    let beta = Beta::Irrational(13f64.sqrt() - 3.0);
    let grid = sweep::periodic_phi_grid(64);
    let mut smallest = f64::INFINITY;
    for j in [1, 2, 3, 5, 10, 20] {
        for spec in [off(50, beta), ModelSpec::diagonal(50, 0.4, beta)] {
            for &phi in &grid {
                let vals = eigenvalues(&spec.clone().site(j).gamma(0.1).phi(phi).build().unwrap()).unwrap();
                smallest = smallest.min(analysis::max_imag_of(&vals));
            }
        }
    }
    verdict(
        "AC8 β=√13−3, γ=0.1: complex for both chains at every tested j and Φ",
        smallest > DEFAULT_EPS_REAL,
        format!("smallest max_imag over all cases = {smallest:.3e}"),
    );
}

#[test]
fn ac09_localization_transition() {
    let spec = ModelSpec::diagonal(100, 0.0, Beta::Irrational((5f64.sqrt() - 1.0) / 2.0));
    let v_grid = sweep::linspace(0.0, 4.0, 41);
    let scan = sweep::localization_scan(&spec, &v_grid, &SweepOptions::default()).unwrap();
    let estimate = scan.transition.unwrap();
    verdict(
        "AC9 diagonal chain localization transition in [1.8, 2.2]",
        (1.8..=2.2).contains(&estimate),
        format!("steepest rise of mean IPR at V = {estimate:.3}"),
    );
}

#[test]
fn ac10_majorana_structure() {
    let mut exact = true;
    for phi in [0.0, PI / 2.0, PI] {
        let f = analysis::majorana_form(&off(50, Beta::half()).phi(phi).site(2).gamma(0.3)).unwrap();
        let minus_2it = Complex64::new(0.0, -2.0);
        exact &= f.delta_plus == minus_2it * (1.0 + phi.cos()) && f.delta_minus == minus_2it * (1.0 - phi.cos());
    }
    let edge = analysis::majorana_form(&off(50, Beta::half()).site(1).gamma(0.3)).unwrap();
    let second = analysis::majorana_form(&off(50, Beta::half()).site(2).gamma(0.3)).unwrap();
    let mut sites: Vec<usize> = second.coupling_terms.iter().map(|b| b.site).collect();
    sites.sort_unstable();
    let species_ok = second.coupling_terms.iter().all(|b| {
        let mut s = [b.first, b.second];
        s.sort_by_key(|x| *x == Species::Tau);
        s == [Species::Sigma, Species::Tau]
    });
    let terms: Vec<String> = second.coupling_terms.iter().map(|b| b.to_string()).collect();
    verdict(
        "AC10 Δ∓ = −2it(1∓cosΦ) exactly; j=1 touches unpaired modes; j=2 couples only sites 2 and N−1",
        exact && edge.touches_unpaired && !second.touches_unpaired && sites == [2, 49] && species_ok,
        format!("j=2 terms {terms:?}, j=1 touches_unpaired = {}", edge.touches_unpaired),
    );
}

#[test]
fn ac11_pt_truth_table() {
    let results: Vec<bool> = [6, 7, 8]
        .iter()
        .map(|&n| {
            let h = off(n, beta_p(3)).site(2).gamma(0.2).build().unwrap();
            check_pt(&h, default_pt_eps(&h))
        })
        .collect();
    verdict("AC11 β=1/3 PT test: N=6 true, N=7 false, N=8 false", results == [true, false, false], format!("{results:?}"));
}

fn csv_bytes(r: &SweepResult) -> String {
    let mut out = String::new();
    for rec in &r.records {
        for (k, e) in rec.eigenvalues.iter().enumerate() {
            let _ = writeln!(out, "{:.16e},{k},{:.16e},{:.16e}", rec.value, e.re, e.im);
        }
        let _ = writeln!(out, "{:.16e},{},{:?}", rec.max_imag, rec.zero_modes, rec.bulk_gap);
    }
    out
}

#[test]
fn ac12_solver_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut oracle_worst: f64 = 0.0;
    for trial in 0..200 {
        let h = random_matrix(&mut rng, 2 + trial % 5);
        oracle_worst = oracle_worst.max(multiset_distance(&eigenvalues(&h).unwrap(), &charpoly_roots(&h).unwrap()));
    }

    let h200 = off(200, Beta::half()).site(2).gamma(0.3).phi(0.7).build().unwrap();
    let s200 = eigendecompose(&h200).unwrap();
    let residual_ratio = s200.max_residual() / h200.frobenius_norm();

    let h4 = off(4, beta_p(3)).site(1).gamma(0.8).phi(1.0).build().unwrap();
    let trace_err = (eigendecompose(&h4).unwrap().eigenvalue_sum() - h4.trace()).norm();

    let s = eigendecompose(&off(50, Beta::half()).phi(0.9).build().unwrap()).unwrap();
    let mirrored: Vec<Complex64> = s.eigenvalues.iter().map(|z| -z).collect();
    let chiral = multiset_distance(&s.eigenvalues, &mirrored);

    let grid = sweep::linspace(0.0, 2.0 * PI, 65);
    let template = off(50, Beta::half()).site(2).gamma(0.3);
    let serial = sweep::sweep_phi(&template, &grid, &SweepOptions::default().serial()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let parallel = pool.install(|| sweep::sweep_phi(&template, &grid, &SweepOptions::default()).unwrap());
    let identical = csv_bytes(&serial) == csv_bytes(&parallel);

    verdict(
        "AC12 oracle <= 1e-8, residual <= 1e-10·‖H‖_F (N=200), trace 1e-10, chiral 1e-10, parallel == serial",
        oracle_worst <= 1e-8 && residual_ratio <= 1e-10 && trace_err <= 1e-10 && chiral <= 1e-10 && identical,
        format!(
            "oracle {oracle_worst:.2e}, residual/‖H‖_F {residual_ratio:.2e}, trace {trace_err:.2e}, chiral {chiral:.2e}, identical {identical}"
        ),
    );
}
