//! Command dispatch. Each command reads a resolved [`RunConfig`], calls
//! into `ptlat-core` and writes `<command>.csv` (when there is per-point
//! data) plus `<command>.json` into the output directory.

use std::fs;
use std::path::{Path, PathBuf};

use ptlat_core::analysis::{self, AnalysisError};
use ptlat_core::eig::{self, EigError};
use ptlat_core::model::{ModelError, ModelSpec};
use ptlat_core::sweep::{self, SweepError};
use ptlat_core::Variant;
use serde::Serialize;
use serde_json::{Value, json};

use crate::config::{ConfigError, RunConfig};
use crate::svg::{self, Panel};
use crate::table::{self, Table, num, opt_num};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Eigenpairs of one Hamiltonian.
    Spectrum,
    /// Spectrum over a Φ grid plus a per-Φ summary.
    SweepPhi,
    /// Bisection for the largest γ with a real spectrum.
    CriticalGamma,
    /// Reality and zero-mode count on a Φ × γ grid.
    PhaseDiagram,
    /// Edge-localized modes near zero energy.
    ZeroModes,
    /// Site-reversal plus conjugation test of the Hamiltonian.
    CheckPt,
    /// Majorana form of the gain/loss term (β = 1/2 only).
    Majorana,
    /// Spectrum reality at a probe γ for several chain lengths.
    NScan,
    /// Mean inverse participation ratio against the onsite amplitude.
    Localization,
    /// Render an existing CSV file as an SVG chart.
    Plot,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::SweepPhi => "sweep-phi",
            Command::CriticalGamma => "critical-gamma",
            Command::PhaseDiagram => "phase-diagram",
            Command::ZeroModes => "zero-modes",
            Command::CheckPt => "check-pt",
            Command::Majorana => "majorana",
            Command::NScan => "n-scan",
            Command::Localization => "localization",
            Command::Plot => "plot",
        }
    }
}

/// Column order of every CSV file, as printed by `--help`.
pub const CSV_SCHEMAS: &[(&str, &[&str])] = &[
    ("spectrum.csv", &["index", "re", "im", "residual", "ipr", "edge_weight"]),
    ("sweep-phi.csv", &["phi", "index", "re", "im"]),
    ("sweep-phi-summary.csv", &["phi", "max_imag", "zero_modes", "bulk_gap"]),
    ("phase-diagram.csv", &["gamma", "phi", "max_imag", "zero_modes", "real"]),
    ("zero-modes.csv", &["index", "re", "im", "ipr", "edge_weight"]),
    ("majorana.csv", &["site", "first", "second", "sign", "coefficient_re", "coefficient_im"]),
    ("n-scan.csv", &["n", "real", "max_imag"]),
    ("localization.csv", &["v", "mean_ipr"]),
];

fn schema(file: &str) -> &'static [&'static str] {
    CSV_SCHEMAS
        .iter()
        .find(|(name, _)| *name == file)
        .map(|(_, cols)| *cols)
        .expect("every written CSV has a schema")
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solver(#[from] EigError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("plot: {0}")]
    Plot(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Model(_) => "model",
            CliError::Solver(_) => "solver",
            CliError::Sweep(_) => "sweep",
            CliError::Analysis(_) => "analysis",
            CliError::Io { .. } => "io",
            CliError::Csv { .. } => "csv",
            CliError::Plot(_) => "plot",
        }
    }

    /// Config key the error refers to, if any.
    pub fn key(&self) -> Option<String> {
        match self {
            CliError::Config(ConfigError::Invalid { key, .. }) => Some(key.clone()),
            CliError::Config(ConfigError::Missing { key }) => Some((*key).to_string()),
            CliError::Config(ConfigError::UnknownKey { key }) => Some(key.clone()),
            CliError::Model(ModelError::InvalidField { field, .. })
            | CliError::Sweep(SweepError::Model(ModelError::InvalidField { field, .. }))
            | CliError::Analysis(AnalysisError::Model(ModelError::InvalidField { field, .. })) => {
                Some((*field).to_string())
            }
            CliError::Sweep(SweepError::Argument { name, .. }) => Some((*name).to_string()),
            _ => None,
        }
    }

    /// Process exit status: 2 for bad input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Model(_) => 2,
            CliError::Sweep(SweepError::Model(_) | SweepError::Argument { .. } | SweepError::Grid { .. }) => 2,
            CliError::Analysis(_) => 2,
            _ => 1,
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind(),
                "key": self.key(),
                "message": self.to_string(),
            },
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub files: Vec<PathBuf>,
    pub summary: Value,
}

struct Out<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
}

impl Out<'_> {
    fn csv(&mut self, file: &str, rows: &[Vec<String>]) -> Result<(), CliError> {
        let path = self.dir.join(file);
        table::write(&path, schema(file), rows).map_err(|source| CliError::Io { path: path.clone(), source })?;
        self.files.push(path);
        Ok(())
    }

    fn text(&mut self, file: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(file);
        fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
        self.files.push(path);
        Ok(())
    }
}

/// Runs `command` and writes its outputs into `out_dir`, which is created
/// if needed.
pub fn run(command: Command, cfg: &RunConfig, out_dir: &Path) -> Result<Report, CliError> {
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut out = Out {
        dir: out_dir,
        files: Vec::new(),
    };
    let result = match command {
        Command::Spectrum => spectrum(cfg, &mut out)?,
        Command::SweepPhi => sweep_phi(cfg, &mut out)?,
        Command::CriticalGamma => critical_gamma(cfg)?,
        Command::PhaseDiagram => phase_diagram(cfg, &mut out)?,
        Command::ZeroModes => zero_modes(cfg, &mut out)?,
        Command::CheckPt => check_pt(cfg)?,
        Command::Majorana => majorana(cfg, &mut out)?,
        Command::NScan => n_scan(cfg, &mut out)?,
        Command::Localization => localization(cfg, &mut out)?,
        Command::Plot => plot(cfg, &mut out)?,
    };
    let summary = json!({
        "config": cfg,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary is plain data") + "\n";
    out.text(&format!("{}.json", command.name()), &text)?;
    Ok(Report {
        files: out.files,
        summary,
    })
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("results are plain data")
}

fn spectrum(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let spec = cfg.model_spec()?;
    let s = eig::eigendecompose(&spec.build()?)?;
    let rows: Vec<Vec<String>> = s
        .eigenvalues
        .iter()
        .zip(&s.eigenvectors)
        .zip(&s.residuals)
        .enumerate()
        .map(|(k, ((e, v), r))| {
            vec![
                (k + 1).to_string(),
                num(e.re),
                num(e.im),
                num(*r),
                num(analysis::ipr(v)),
                num(analysis::edge_weight(v, cfg.fraction)),
            ]
        })
        .collect();
    out.csv("spectrum.csv", &rows)?;
    let max_imag = analysis::max_imag(&s);
    Ok(json!({
        "n": s.len(),
        "max_imag": max_imag,
        "real": max_imag <= cfg.eps_real * spec.t,
        "max_residual": s.max_residual(),
        "eigenvalue_sum": to_value(s.eigenvalue_sum()),
    }))
}

fn phi_grid(cfg: &RunConfig) -> Vec<f64> {
    sweep::linspace(cfg.phi_min, cfg.phi_max, cfg.sweep_points)
}

fn sweep_phi(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let spec = cfg.model_spec()?;
    let r = sweep::sweep_phi(&spec, &phi_grid(cfg), &cfg.sweep_options())?;
    let mut rows = Vec::with_capacity(r.records.len() * spec.n);
    for rec in &r.records {
        for (k, e) in rec.eigenvalues.iter().enumerate() {
            rows.push(vec![num(rec.value), (k + 1).to_string(), num(e.re), num(e.im)]);
        }
    }
    out.csv("sweep-phi.csv", &rows)?;
    let summary: Vec<Vec<String>> = r
        .records
        .iter()
        .map(|rec| vec![num(rec.value), num(rec.max_imag), rec.zero_modes.to_string(), opt_num(rec.bulk_gap)])
        .collect();
    out.csv("sweep-phi-summary.csv", &summary)?;
    let scan = sweep::transition_phis(&r);
    let max_imag = r.records.iter().map(|rec| rec.max_imag).fold(0.0, f64::max);
    Ok(json!({
        "points": r.grid.len(),
        "max_imag": max_imag,
        "transitions": to_value(&scan.intervals),
        "no_transition": to_value(scan.flag),
    }))
}

fn critical_gamma(cfg: &RunConfig) -> Result<Value, CliError> {
    let spec = cfg.model_spec()?;
    match sweep::critical_gamma(&spec, cfg.policy(), cfg.gamma_max, cfg.tol_bisect, &cfg.sweep_options()) {
        Ok(r) => {
            let mut v = to_value(&r);
            v["status"] = json!("ok");
            Ok(v)
        }
        Err(SweepError::NoBreaking { gamma_max }) => Ok(json!({
            "status": "no-breaking",
            "gamma_c": null,
            "gamma_max": gamma_max,
            "policy": to_value(cfg.policy()),
        })),
        Err(e) => Err(e.into()),
    }
}

fn phase_diagram(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let spec = cfg.model_spec()?;
    let gammas = sweep::linspace(0.0, cfg.gamma_max, cfg.gamma_points);
    let d = sweep::phase_diagram(&spec, &phi_grid(cfg), &gammas, &cfg.sweep_options())?;
    let rows: Vec<Vec<String>> = d
        .cells
        .iter()
        .map(|c| vec![num(c.gamma), num(c.phi), num(c.max_imag), c.zero_modes.to_string(), c.real.to_string()])
        .collect();
    out.csv("phase-diagram.csv", &rows)?;
    Ok(json!({
        "phi_points": d.phi_grid.len(),
        "gamma_points": d.gamma_grid.len(),
        "real_cells": d.cells.iter().filter(|c| c.real).count(),
    }))
}

fn zero_modes(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let spec = cfg.model_spec()?;
    let s = eig::eigendecompose(&spec.build()?)?;
    let report = analysis::find_zero_modes(&s, cfg.gates().scaled(spec.t));
    let rows: Vec<Vec<String>> = report
        .zero_modes
        .iter()
        .map(|m| {
            vec![
                (m.index + 1).to_string(),
                num(m.energy.re),
                num(m.energy.im),
                num(m.ipr),
                num(m.edge_weight),
            ]
        })
        .collect();
    out.csv("zero-modes.csv", &rows)?;
    Ok(json!({
        "count": report.count,
        "bulk_gap": report.bulk_gap,
        "gates": to_value(report.gates),
    }))
}

fn check_pt(cfg: &RunConfig) -> Result<Value, CliError> {
    let h = cfg.model_spec()?.build()?;
    let eps = analysis::default_pt_eps(&h);
    let defect = analysis::pt_defect(&h);
    Ok(json!({
        "pt_symmetric": defect <= eps,
        "defect": defect,
        "eps": eps,
    }))
}

fn majorana(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let form = analysis::majorana_form(&cfg.model_spec()?)?;
    let rows: Vec<Vec<String>> = form
        .coupling_terms
        .iter()
        .map(|b| {
            vec![
                b.site.to_string(),
                b.first.to_string(),
                b.second.to_string(),
                b.sign.to_string(),
                num(b.coefficient.re),
                num(b.coefficient.im),
            ]
        })
        .collect();
    out.csv("majorana.csv", &rows)?;
    let mut v = to_value(&form);
    v["terms"] = json!(form.coupling_terms.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(v)
}

fn n_scan(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let first = *cfg.n_values.first().ok_or(ConfigError::Missing { key: "n_values" })?;
    let template = match cfg.n {
        Some(_) => cfg.model_spec()?,
        None => {
            let mut with_n = cfg.clone();
            with_n.n = Some(first);
            with_n.model_spec()?
        }
    };
    let verdicts = sweep::n_scan(&template, &cfg.n_values, cfg.gamma_probe, cfg.policy(), &cfg.sweep_options())?;
    let rows: Vec<Vec<String>> = verdicts
        .iter()
        .map(|v| vec![v.n.to_string(), v.real.to_string(), num(v.max_imag)])
        .collect();
    out.csv("n-scan.csv", &rows)?;
    Ok(json!({
        "gamma_probe": cfg.gamma_probe,
        "real_sizes": verdicts.iter().filter(|v| v.real).map(|v| v.n).collect::<Vec<_>>(),
    }))
}

fn localization(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let spec: ModelSpec = cfg.model_spec()?;
    if spec.variant != Variant::DiagonalAA {
        return Err(ConfigError::Invalid {
            key: "variant".into(),
            reason: format!("localization needs diagonal-aa, got {}", spec.variant),
        }
        .into());
    }
    let grid = sweep::linspace(cfg.v_min, cfg.v_max, cfg.v_points);
    let scan = sweep::localization_scan(&spec, &grid, &cfg.sweep_options())?;
    let rows: Vec<Vec<String>> = scan.points.iter().map(|p| vec![num(p.v), num(p.mean_ipr)]).collect();
    out.csv("localization.csv", &rows)?;
    Ok(json!({ "transition": scan.transition }))
}

/// Default y columns: real and imaginary parts when present, otherwise
/// every column except x.
fn default_y(t: &Table, x: &str) -> Vec<String> {
    if t.column_index("re").is_some() && t.column_index("im").is_some() {
        return vec!["re".into(), "im".into()];
    }
    t.header.iter().filter(|h| *h != x).cloned().collect()
}

fn plot(cfg: &RunConfig, out: &mut Out) -> Result<Value, CliError> {
    let input = cfg.input.as_deref().ok_or(ConfigError::Missing { key: "input" })?;
    let path = PathBuf::from(input);
    let t = Table::read(&path).map_err(|source| CliError::Csv { path: path.clone(), source })?;
    let x = cfg.plot_x.clone().or_else(|| t.header.first().cloned()).ok_or_else(|| CliError::Plot("empty header".into()))?;
    let ys = if cfg.plot_y.is_empty() { default_y(&t, &x) } else { cfg.plot_y.clone() };
    let column = |name: &str, key: &str| {
        t.column_index(name).ok_or_else(|| {
            CliError::from(ConfigError::Invalid {
                key: key.into(),
                reason: format!("no column `{name}` in {input}; columns are {}", t.header.join(",")),
            })
        })
    };
    let xs = t.column(column(&x, "plot_x")?);
    let mut panels = Vec::with_capacity(ys.len());
    for y in &ys {
        let vals = t.column(column(y, "plot_y")?);
        let points: Vec<(f64, f64)> = xs.iter().zip(&vals).filter_map(|(a, b)| Some(((*a)?, (*b)?))).collect();
        panels.push(Panel {
            label: y.clone(),
            points,
        });
    }
    if panels.is_empty() {
        return Err(CliError::Plot("nothing to plot".into()));
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("plot");
    let title = cfg.title.clone().unwrap_or_else(|| stem.to_string());
    let file = format!("{stem}.svg");
    out.text(&file, &svg::render(&title, &x, &panels))?;
    Ok(json!({
        "svg": file,
        "x": x,
        "y": ys,
        "points": panels.iter().map(|p| p.points.len()).sum::<usize>(),
    }))
}
