//! Parameter-space exploration over Φ, γ, N and V.
//!
//! Grid points are independent: each is evaluated on its own (optionally in
//! parallel through rayon) and results are merged back in grid order, so
//! serial and parallel runs produce identical records.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{self, DEFAULT_EPS_REAL, ZeroModeGates};
use crate::eig::{self, EigError};
use crate::model::{ModelError, ModelSpec, Variant};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid grid for {axis}: {reason}")]
    Grid { axis: Axis, reason: String },
    #[error("invalid argument `{name}`: {reason}")]
    Argument { name: &'static str, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("solver failed at {axis} = {value}: {source}")]
    Solver {
        axis: Axis,
        value: f64,
        #[source]
        source: EigError,
    },
    #[error("spectrum stays real up to gamma_max = {gamma_max}; no breaking below gamma_max")]
    NoBreaking { gamma_max: f64 },
}

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Phi,
    Gamma,
    N,
    V,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Phi => "phi",
            Axis::Gamma => "gamma",
            Axis::N => "n",
            Axis::V => "v",
        })
    }
}

/// Shared knobs for every sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepOptions {
    /// Zero-mode gates, energy threshold in units of `t`.
    pub gates: ZeroModeGates,
    /// Reality tolerance in units of `t`.
    pub eps_real: f64,
    pub parallel: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            gates: ZeroModeGates::default(),
            eps_real: DEFAULT_EPS_REAL,
            parallel: true,
        }
    }
}

impl SweepOptions {
    pub fn serial(self) -> Self {
        Self { parallel: false, ..self }
    }
}

fn map_grid<T, U, E, F>(items: &[T], parallel: bool, f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// `points` values `0, 2π/M, …, 2π(M−1)/M`.
pub fn periodic_phi_grid(points: usize) -> Vec<f64> {
    (0..points).map(|k| 2.0 * PI * k as f64 / points as f64).collect()
}

/// `points` evenly spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (points - 1) as f64;
            (0..points)
                .map(|k| if k == points - 1 { end } else { start + (end - start) * k as f64 / last })
                .collect()
        }
    }
}

fn check_grid(axis: Axis, grid: &[f64]) -> Result<(), SweepError> {
    let fail = |reason: String| Err(SweepError::Grid { axis, reason });
    if grid.is_empty() {
        return fail("grid is empty".into());
    }
    if let Some(x) = grid.iter().find(|x| !x.is_finite()) {
        return fail(format!("non-finite value {x}"));
    }
    if let Some(w) = grid.windows(2).find(|w| w[1] <= w[0]) {
        return fail(format!("not strictly increasing at {} -> {}", w[0], w[1]));
    }
    if axis == Axis::Phi && (grid[0] < 0.0 || grid[grid.len() - 1] > 2.0 * PI) {
        return fail("values must lie in [0, 2π]".into());
    }
    Ok(())
}

/// Summary of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub value: f64,
    pub eigenvalues: Vec<Complex64>,
    pub max_imag: f64,
    pub zero_modes: usize,
    pub bulk_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub axis: Axis,
    pub grid: Vec<f64>,
    /// One record per grid point, in grid order.
    pub records: Vec<SweepRecord>,
    pub template: ModelSpec,
}

fn record(spec: &ModelSpec, axis: Axis, value: f64, gates: ZeroModeGates) -> Result<SweepRecord, SweepError> {
    let h = spec.build()?;
    let spectrum = eig::eigendecompose(&h).map_err(|source| SweepError::Solver { axis, value, source })?;
    let report = analysis::find_zero_modes(&spectrum, gates.scaled(spec.t));
    Ok(SweepRecord {
        value,
        max_imag: analysis::max_imag(&spectrum),
        zero_modes: report.count,
        bulk_gap: report.bulk_gap,
        eigenvalues: spectrum.eigenvalues,
    })
}

/// Spectrum and zero-mode summary at every Φ of `grid`.
pub fn sweep_phi(template: &ModelSpec, grid: &[f64], opts: &SweepOptions) -> Result<SweepResult, SweepError> {
    check_grid(Axis::Phi, grid)?;
    template.validate()?;
    let records = map_grid(grid, opts.parallel, |&phi| {
        record(&template.clone().phi(phi), Axis::Phi, phi, opts.gates)
    })?;
    Ok(SweepResult {
        axis: Axis::Phi,
        grid: grid.to_vec(),
        records,
        template: template.clone(),
    })
}

/// Why [`transition_phis`] found nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoTransition {
    /// Bulk gap never exceeds the finite-size level spacing `2πt/N`.
    Gapless,
    /// Zero-mode count is the same at every grid point.
    Constant,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionScan {
    /// Consecutive grid values `(Φ_k, Φ_{k+1})` across which the zero-mode
    /// count changes.
    pub intervals: Vec<(f64, f64)>,
    pub flag: Option<NoTransition>,
}

pub fn transition_phis(r: &SweepResult) -> TransitionScan {
    let intervals: Vec<(f64, f64)> = r
        .records
        .windows(2)
        .filter(|w| w[0].zero_modes != w[1].zero_modes)
        .map(|w| (w[0].value, w[1].value))
        .collect();
    let flag = if !intervals.is_empty() {
        None
    } else {
        let spacing = 2.0 * PI * r.template.t / r.template.n as f64;
        let widest = r.records.iter().map(|rec| rec.bulk_gap.unwrap_or(0.0)).fold(0.0, f64::max);
        Some(if widest <= spacing { NoTransition::Gapless } else { NoTransition::Constant })
    };
    TransitionScan { intervals, flag }
}

/// Where reality of the spectrum is required.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealityPolicy {
    /// Every point of [`periodic_phi_grid`]`(points)`.
    AllPhi { points: usize },
    AtFixedPhi(f64),
}

impl Default for RealityPolicy {
    fn default() -> Self {
        RealityPolicy::AllPhi { points: 64 }
    }
}

impl RealityPolicy {
    pub fn phis(self) -> Vec<f64> {
        match self {
            RealityPolicy::AllPhi { points } => periodic_phi_grid(points),
            RealityPolicy::AtFixedPhi(phi) => vec![phi],
        }
    }

    fn resolve(self) -> Result<Vec<f64>, SweepError> {
        match self {
            RealityPolicy::AllPhi { points: 0 } => Err(SweepError::Argument {
                name: "phi_points",
                reason: "need at least one point".into(),
            }),
            _ => {
                let phis = self.phis();
                check_grid(Axis::Phi, &phis)?;
                Ok(phis)
            }
        }
    }
}

/// Largest `|Im E|` over the policy's Φ values at the template's γ.
fn max_imag_over(template: &ModelSpec, phis: &[f64], opts: &SweepOptions) -> Result<f64, SweepError> {
    let per_phi = map_grid(phis, opts.parallel, |&phi| {
        let h = template.clone().phi(phi).build()?;
        let vals = eig::eigenvalues(&h).map_err(|source| SweepError::Solver {
            axis: Axis::Phi,
            value: phi,
            source,
        })?;
        Ok::<_, SweepError>(analysis::max_imag_of(&vals))
    })?;
    Ok(per_phi.into_iter().fold(0.0, f64::max))
}

fn real_under(template: &ModelSpec, gamma: f64, phis: &[f64], opts: &SweepOptions) -> Result<bool, SweepError> {
    let spec = template.clone().gamma(gamma);
    Ok(max_imag_over(&spec, phis, opts)? <= opts.eps_real * template.t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalGammaResult {
    pub gamma_c: f64,
    /// `(γ_low, γ_high)`: real at `γ_low`, complex at `γ_high`.
    pub bracket: (f64, f64),
    /// Achieved bracket width.
    pub tolerance: f64,
    pub policy: RealityPolicy,
    pub iterations: usize,
}

/// Bisection for the largest γ keeping the spectrum real under `policy`.
///
/// The search starts at `γ = tol`: if the spectrum is already complex there
/// the result is `γ_c = 0`. If it is still real at `gamma_max` the function
/// returns [`SweepError::NoBreaking`].
pub fn critical_gamma(
    template: &ModelSpec,
    policy: RealityPolicy,
    gamma_max: f64,
    tol: f64,
    opts: &SweepOptions,
) -> Result<CriticalGammaResult, SweepError> {
    if !(gamma_max.is_finite() && gamma_max > 0.0) {
        return Err(SweepError::Argument {
            name: "gamma_max",
            reason: format!("must be finite and > 0, got {gamma_max}"),
        });
    }
    if !(tol.is_finite() && tol > 0.0 && tol < gamma_max) {
        return Err(SweepError::Argument {
            name: "tol",
            reason: format!("must lie in (0, gamma_max), got {tol}"),
        });
    }
    template.validate()?;
    let phis = policy.resolve()?;

    if !real_under(template, tol, &phis, opts)? {
        return Ok(CriticalGammaResult {
            gamma_c: 0.0,
            bracket: (0.0, tol),
            tolerance: tol,
            policy,
            iterations: 0,
        });
    }
    if real_under(template, gamma_max, &phis, opts)? {
        return Err(SweepError::NoBreaking { gamma_max });
    }
    let (mut lo, mut hi) = (tol, gamma_max);
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if real_under(template, mid, &phis, opts)? {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(CriticalGammaResult {
        gamma_c: 0.5 * (lo + hi),
        bracket: (lo, hi),
        tolerance: hi - lo,
        policy,
        iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseCell {
    pub phi: f64,
    pub gamma: f64,
    pub max_imag: f64,
    pub zero_modes: usize,
    pub real: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseDiagram {
    pub phi_grid: Vec<f64>,
    pub gamma_grid: Vec<f64>,
    /// Row-major: one row per γ, Φ varying fastest.
    pub cells: Vec<PhaseCell>,
    pub template: ModelSpec,
}

impl PhaseDiagram {
    pub fn cell(&self, gamma_index: usize, phi_index: usize) -> &PhaseCell {
        &self.cells[gamma_index * self.phi_grid.len() + phi_index]
    }
}

/// Reality and zero-mode count on the Φ × γ grid.
pub fn phase_diagram(
    template: &ModelSpec,
    phi_grid: &[f64],
    gamma_grid: &[f64],
    opts: &SweepOptions,
) -> Result<PhaseDiagram, SweepError> {
    check_grid(Axis::Phi, phi_grid)?;
    check_grid(Axis::Gamma, gamma_grid)?;
    if gamma_grid[0] < 0.0 {
        return Err(SweepError::Grid {
            axis: Axis::Gamma,
            reason: "values must be >= 0".into(),
        });
    }
    template.validate()?;
    let points: Vec<(f64, f64)> = gamma_grid
        .iter()
        .flat_map(|&g| phi_grid.iter().map(move |&p| (g, p)))
        .collect();
    let cells = map_grid(&points, opts.parallel, |&(gamma, phi)| {
        let rec = record(&template.clone().gamma(gamma).phi(phi), Axis::Phi, phi, opts.gates)?;
        Ok::<_, SweepError>(PhaseCell {
            phi,
            gamma,
            max_imag: rec.max_imag,
            zero_modes: rec.zero_modes,
            real: rec.max_imag <= opts.eps_real * template.t,
        })
    })?;
    Ok(PhaseDiagram {
        phi_grid: phi_grid.to_vec(),
        gamma_grid: gamma_grid.to_vec(),
        cells,
        template: template.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeVerdict {
    pub n: usize,
    pub real: bool,
    /// Largest `|Im E|` over the policy's Φ values.
    pub max_imag: f64,
}

/// Reality of the spectrum at `gamma_probe` for each chain length.
pub fn n_scan(
    template: &ModelSpec,
    n_values: &[usize],
    gamma_probe: f64,
    policy: RealityPolicy,
    opts: &SweepOptions,
) -> Result<Vec<SizeVerdict>, SweepError> {
    if n_values.is_empty() {
        return Err(SweepError::Grid {
            axis: Axis::N,
            reason: "no sizes given".into(),
        });
    }
    if !(gamma_probe.is_finite() && gamma_probe >= 0.0) {
        return Err(SweepError::Argument {
            name: "gamma_probe",
            reason: format!("must be finite and >= 0, got {gamma_probe}"),
        });
    }
    let phis = policy.resolve()?;
    let specs: Vec<ModelSpec> = n_values
        .iter()
        .map(|&n| {
            let spec = template.clone().sites(n).gamma(gamma_probe);
            spec.validate().map(|_| spec)
        })
        .collect::<Result<_, _>>()?;
    // parallelism lives inside the Φ loop
    specs
        .iter()
        .map(|spec| {
            let max_imag = max_imag_over(spec, &phis, opts)?;
            Ok(SizeVerdict {
                n: spec.n,
                real: max_imag <= opts.eps_real * spec.t,
                max_imag,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalizationPoint {
    pub v: f64,
    pub mean_ipr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalizationScan {
    pub points: Vec<LocalizationPoint>,
    /// Midpoint of the V interval with the steepest rise of mean IPR.
    pub transition: Option<f64>,
}

/// Mean IPR over all eigenstates of the diagonal chain at each `V`.
pub fn localization_scan(
    template: &ModelSpec,
    v_grid: &[f64],
    opts: &SweepOptions,
) -> Result<LocalizationScan, SweepError> {
    if template.variant != Variant::DiagonalAA {
        return Err(ModelError::VariantMismatch {
            expected: Variant::DiagonalAA,
            found: template.variant,
        }
        .into());
    }
    check_grid(Axis::V, v_grid)?;
    template.validate()?;
    let points = map_grid(v_grid, opts.parallel, |&v| {
        let spec = ModelSpec { v, ..template.clone() };
        let s = eig::eigendecompose(&spec.build()?).map_err(|source| SweepError::Solver {
            axis: Axis::V,
            value: v,
            source,
        })?;
        let mean_ipr = s.eigenvectors.iter().map(|vec| analysis::ipr(vec)).sum::<f64>() / s.len() as f64;
        Ok::<_, SweepError>(LocalizationPoint { v, mean_ipr })
    })?;
    Ok(LocalizationScan {
        transition: steepest_rise(&points),
        points,
    })
}

fn steepest_rise(points: &[LocalizationPoint]) -> Option<f64> {
    points
        .windows(2)
        .map(|w| ((w[1].mean_ipr - w[0].mean_ipr) / (w[1].v - w[0].v), 0.5 * (w[0].v + w[1].v)))
        .fold(None, |best: Option<(f64, f64)>, cur| match best {
            Some(b) if b.0 >= cur.0 => Some(b),
            _ => Some(cur),
        })
        .map(|(_, v)| v)
}
