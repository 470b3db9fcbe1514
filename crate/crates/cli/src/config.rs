//! Run configuration: a flat TOML document (or the `config` block of a
//! previous JSON summary) with defaults applied and validated.

use std::f64::consts::PI;

use ptlat_core::model::{Beta, ModelSpec, RationalBeta, Variant};
use ptlat_core::sweep::{RealityPolicy, SweepOptions};
use ptlat_core::ZeroModeGates;
use serde::{Deserialize, Serialize};

use crate::expr;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("unknown key `{key}`")]
    UnknownKey { key: String },
    #[error("`{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error("`{key}` is required for this command")]
    Missing { key: &'static str },
}

fn invalid(key: impl Into<String>, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.into(),
        reason: reason.into(),
    }
}

/// Maps serde's unknown-field message onto [`ConfigError::UnknownKey`].
fn syntax(message: String) -> ConfigError {
    message
        .split_once("unknown field `")
        .and_then(|(_, rest)| rest.split_once('`'))
        .map_or(ConfigError::Syntax(message.clone()), |(key, _)| ConfigError::UnknownKey { key: key.to_string() })
}

/// A number written either as a literal or as an expression string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Expr(String),
}

impl Scalar {
    fn resolve(&self, key: &str) -> Result<f64, ConfigError> {
        match self {
            Scalar::Number(x) if x.is_finite() => Ok(*x),
            Scalar::Number(x) => Err(invalid(key, format!("{x} is not finite"))),
            Scalar::Expr(s) => expr::evaluate(s).map_err(|e| invalid(key, e.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyName {
    AllPhi,
    FixedPhi,
}

/// The document as written: every key optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    variant: Option<Variant>,
    n: Option<usize>,
    t: Option<f64>,
    lambda: Option<f64>,
    v: Option<f64>,
    beta: Option<Scalar>,
    phi: Option<Scalar>,
    gamma: Option<f64>,
    j: Option<i64>,
    t_prime: Option<f64>,

    eps_real: Option<f64>,
    eps_zero: Option<f64>,
    w_min: Option<f64>,
    fraction: Option<f64>,
    tol_bisect: Option<f64>,
    phi_points: Option<usize>,
    policy: Option<PolicyName>,
    gamma_max: Option<f64>,

    sweep_points: Option<usize>,
    phi_min: Option<Scalar>,
    phi_max: Option<Scalar>,
    gamma_points: Option<usize>,
    n_values: Option<Vec<usize>>,
    gamma_probe: Option<f64>,
    v_min: Option<f64>,
    v_max: Option<f64>,
    v_points: Option<usize>,

    input: Option<String>,
    plot_x: Option<String>,
    plot_y: Option<Vec<String>>,
    title: Option<String>,
}

/// Fully resolved configuration. Serialising it and parsing the result
/// back gives the same value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub variant: Variant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub t: f64,
    pub lambda: f64,
    pub v: f64,
    /// `"a/b"` for rational β, otherwise the literal or expression given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub phi: f64,
    pub gamma: f64,
    pub j: usize,
    pub t_prime: f64,

    pub eps_real: f64,
    pub eps_zero: f64,
    pub w_min: f64,
    pub fraction: f64,
    pub tol_bisect: f64,
    pub phi_points: usize,
    pub policy: PolicyName,
    pub gamma_max: f64,

    pub sweep_points: usize,
    pub phi_min: f64,
    pub phi_max: f64,
    pub gamma_points: usize,
    pub n_values: Vec<usize>,
    pub gamma_probe: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub v_points: usize,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plot_x: Option<String>,
    pub plot_y: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
}

/// Parses `"a/b"` as a rational β and anything else as a real value.
pub fn parse_beta(text: &str) -> Result<Beta, ConfigError> {
    if let Some((a, b)) = text.split_once('/') {
        if let (Ok(a), Ok(b)) = (a.trim().parse::<u32>(), b.trim().parse::<u32>()) {
            return RationalBeta::new(a, b)
                .map(Beta::Rational)
                .map_err(|e| invalid("beta", e.to_string()));
        }
    }
    let value = expr::evaluate(text).map_err(|e| invalid("beta", e.to_string()))?;
    let beta = Beta::Irrational(value);
    beta.validate().map_err(|e| invalid("beta", e.to_string()))?;
    Ok(beta)
}

fn positive(key: &str, x: f64) -> Result<f64, ConfigError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(invalid(key, format!("must be finite and > 0, got {x}")))
    }
}

fn finite(key: &str, x: f64) -> Result<f64, ConfigError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(key, format!("must be finite, got {x}")))
    }
}

/// Parses a config document. JSON input is accepted too; if it is a run
/// summary its `config` block is used.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = if text.trim_start().starts_with('{') {
        let mut value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        if let Some(inner) = value.get_mut("config") {
            value = inner.take();
        }
        serde_json::from_value(value).map_err(|e| syntax(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| syntax(e.to_string()))?
    };
    resolve(raw)
}

fn resolve(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let beta = match &raw.beta {
        None => None,
        Some(Scalar::Expr(s)) => {
            let parsed = parse_beta(s)?;
            Some(match parsed {
                Beta::Rational(r) => r.to_string(),
                Beta::Irrational(_) => s.trim().to_string(),
            })
        }
        Some(Scalar::Number(x)) => {
            let b = Beta::Irrational(*x);
            b.validate().map_err(|e| invalid("beta", e.to_string()))?;
            Some(format!("{x:?}"))
        }
    };
    let j = match raw.j {
        None => 1,
        Some(j) if j >= 1 => j as usize,
        Some(j) => return Err(invalid("j", format!("site index must be >= 1, got {j}"))),
    };

    let cfg = RunConfig {
        variant: raw.variant.unwrap_or(Variant::OffDiagonalAA),
        n: raw.n,
        t: positive("t", raw.t.unwrap_or(1.0))?,
        lambda: finite("lambda", raw.lambda.unwrap_or(0.0))?,
        v: finite("v", raw.v.unwrap_or(0.0))?,
        beta,
        phi: raw.phi.as_ref().map_or(Ok(0.0), |s| s.resolve("phi"))?,
        gamma: raw.gamma.unwrap_or(0.0),
        j,
        t_prime: finite("t_prime", raw.t_prime.unwrap_or(0.0))?,
        eps_real: positive("eps_real", raw.eps_real.unwrap_or(1e-8))?,
        eps_zero: positive("eps_zero", raw.eps_zero.unwrap_or(1e-3))?,
        w_min: positive("w_min", raw.w_min.unwrap_or(0.5))?,
        fraction: positive("fraction", raw.fraction.unwrap_or(0.1))?,
        tol_bisect: positive("tol_bisect", raw.tol_bisect.unwrap_or(1e-4))?,
        phi_points: raw.phi_points.unwrap_or(64),
        policy: raw.policy.unwrap_or(PolicyName::AllPhi),
        gamma_max: positive("gamma_max", raw.gamma_max.unwrap_or(2.0))?,
        sweep_points: raw.sweep_points.unwrap_or(201),
        phi_min: raw.phi_min.as_ref().map_or(Ok(0.0), |s| s.resolve("phi_min"))?,
        phi_max: raw.phi_max.as_ref().map_or(Ok(2.0 * PI), |s| s.resolve("phi_max"))?,
        gamma_points: raw.gamma_points.unwrap_or(21),
        n_values: raw.n_values.unwrap_or_default(),
        gamma_probe: raw.gamma_probe.unwrap_or(0.1),
        v_min: finite("v_min", raw.v_min.unwrap_or(0.0))?,
        v_max: finite("v_max", raw.v_max.unwrap_or(4.0))?,
        v_points: raw.v_points.unwrap_or(41),
        input: raw.input,
        plot_x: raw.plot_x,
        plot_y: raw.plot_y.unwrap_or_default(),
        title: raw.title,
    };

    if cfg.fraction > 0.5 {
        return Err(invalid("fraction", format!("must be <= 0.5, got {}", cfg.fraction)));
    }
    if cfg.phi_points == 0 {
        return Err(invalid("phi_points", "must be >= 1"));
    }
    if cfg.sweep_points == 0 {
        return Err(invalid("sweep_points", "must be >= 1"));
    }
    if !(cfg.gamma_probe.is_finite() && cfg.gamma_probe >= 0.0) {
        return Err(invalid("gamma_probe", "must be finite and >= 0"));
    }
    if cfg.n.is_some() && cfg.beta.is_some() {
        cfg.model_spec()?;
    } else if let Some(n) = cfg.n {
        if cfg.j > n {
            return Err(invalid("j", format!("site {} outside 1..={n}", cfg.j)));
        }
    }
    Ok(cfg)
}

impl RunConfig {
    pub fn beta(&self) -> Result<Beta, ConfigError> {
        parse_beta(self.beta.as_deref().ok_or(ConfigError::Missing { key: "beta" })?)
    }

    pub fn model_spec(&self) -> Result<ModelSpec, ConfigError> {
        let spec = ModelSpec {
            variant: self.variant,
            n: self.n.ok_or(ConfigError::Missing { key: "n" })?,
            t: self.t,
            lambda: self.lambda,
            v: self.v,
            beta: self.beta()?,
            phi: self.phi,
            gamma: self.gamma,
            j: self.j,
            t_prime: self.t_prime,
        };
        spec.validate().map_err(|e| match e {
            ptlat_core::model::ModelError::InvalidField { field, reason } => invalid(field, reason),
            other => invalid("variant", other.to_string()),
        })?;
        Ok(spec)
    }

    pub fn gates(&self) -> ZeroModeGates {
        ZeroModeGates {
            eps_zero: self.eps_zero,
            w_min: self.w_min,
            fraction: self.fraction,
        }
    }

    pub fn sweep_options(&self) -> SweepOptions {
        SweepOptions {
            gates: self.gates(),
            eps_real: self.eps_real,
            parallel: true,
        }
    }

    pub fn policy(&self) -> RealityPolicy {
        match self.policy {
            PolicyName::AllPhi => RealityPolicy::AllPhi { points: self.phi_points },
            PolicyName::FixedPhi => RealityPolicy::AtFixedPhi(self.phi),
        }
    }
}
