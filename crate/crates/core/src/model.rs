//! Lattice parameterisations and their single-particle Hamiltonians.
//!
//! All three chains use open boundaries with sites `1..=N`. Bond `n` joins
//! sites `n` and `n+1` and its modulation phase is `2πβn + Φ` evaluated at
//! the left endpoint. Gain `+iγ` sits on site `j` and loss `−iγ` on the
//! mirror site `N−j+1`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid `{field}`: {reason}")]
    InvalidField { field: &'static str, reason: String },
    #[error("builder for {expected} called with a {found} spec")]
    VariantMismatch { expected: Variant, found: Variant },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ModelError {
    ModelError::InvalidField {
        field,
        reason: reason.into(),
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Rational modulation frequency `numerator/denominator` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct RationalBeta {
    numerator: u32,
    denominator: u32,
}

impl RationalBeta {
    /// Reduces `numerator/denominator` to lowest terms; the value must lie in
    /// the open interval (0, 1).
    pub fn new(numerator: u32, denominator: u32) -> Result<Self, ModelError> {
        if numerator == 0 || denominator == 0 || numerator >= denominator {
            return Err(invalid(
                "beta",
                format!("{numerator}/{denominator} is not in (0, 1)"),
            ));
        }
        let g = gcd(numerator, denominator);
        Ok(Self {
            numerator: numerator / g,
            denominator: denominator / g,
        })
    }

    /// `1/p`.
    pub fn inverse_of(p: u32) -> Result<Self, ModelError> {
        Self::new(1, p)
    }

    pub fn numerator(self) -> u32 {
        self.numerator
    }

    /// Period of the modulation in lattice sites.
    pub fn denominator(self) -> u32 {
        self.denominator
    }

    pub fn value(self) -> f64 {
        f64::from(self.numerator) / f64::from(self.denominator)
    }
}

impl TryFrom<(u32, u32)> for RationalBeta {
    type Error = ModelError;

    fn try_from((a, b): (u32, u32)) -> Result<Self, ModelError> {
        Self::new(a, b)
    }
}

impl From<RationalBeta> for (u32, u32) {
    fn from(b: RationalBeta) -> Self {
        (b.numerator, b.denominator)
    }
}

impl fmt::Display for RationalBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Modulation frequency: periodic (rational) or quasi-periodic (irrational).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Beta {
    Rational(RationalBeta),
    /// Stored at full precision, never rationalised.
    Irrational(f64),
}

impl Beta {
    pub fn half() -> Self {
        Beta::Rational(RationalBeta { numerator: 1, denominator: 2 })
    }

    pub fn value(self) -> f64 {
        match self {
            Beta::Rational(r) => r.value(),
            Beta::Irrational(x) => x,
        }
    }

    /// Period in sites for rational β.
    pub fn period(self) -> Option<u32> {
        match self {
            Beta::Rational(r) => Some(r.denominator()),
            Beta::Irrational(_) => None,
        }
    }

    pub fn validate(self) -> Result<(), ModelError> {
        match self {
            Beta::Rational(r) => RationalBeta::new(r.numerator, r.denominator).map(|_| ()),
            Beta::Irrational(x) if x.is_finite() && x > 0.0 && x < 1.0 => Ok(()),
            Beta::Irrational(x) => Err(invalid("beta", format!("{x} is not a finite value in (0, 1)"))),
        }
    }

    /// Phase `2πβn + Φ` of bond (or site) `n`.
    #[inline]
    pub fn phase(self, n: usize, phi: f64) -> f64 {
        2.0 * PI * self.value() * n as f64 + phi
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Rational(r) => r.fmt(f),
            Beta::Irrational(x) => write!(f, "{x}"),
        }
    }
}

/// Which Hamiltonian a [`ModelSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Cosine-modulated hopping with gain/loss impurities.
    #[serde(rename = "off-diagonal-aa")]
    OffDiagonalAA,
    /// As above plus a constant next-nearest-neighbour hopping `+t′`.
    #[serde(rename = "off-diagonal-aa-with-nnn")]
    OffDiagonalAAWithNnn,
    /// Uniform hopping with a cosine onsite potential.
    #[serde(rename = "diagonal-aa")]
    DiagonalAA,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::OffDiagonalAA => "off-diagonal-aa",
            Variant::OffDiagonalAAWithNnn => "off-diagonal-aa-with-nnn",
            Variant::DiagonalAA => "diagonal-aa",
        })
    }
}

/// Gain/loss pair, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImpurityPlacement {
    pub gain_site: usize,
    pub loss_site: usize,
    /// `j = m/β` for some positive integer `m`.
    pub aligned: bool,
}

impl ImpurityPlacement {
    pub fn new(j: usize, n: usize, beta: Beta) -> Result<Self, ModelError> {
        if j < 1 || j > n {
            return Err(invalid("j", format!("site {j} outside 1..={n}")));
        }
        let aligned = match beta {
            // j·a/q is an integer iff q divides j, since gcd(a, q) = 1
            Beta::Rational(r) => j.is_multiple_of(r.denominator() as usize),
            Beta::Irrational(_) => false,
        };
        Ok(Self {
            gain_site: j,
            loss_site: n + 1 - j,
            aligned,
        })
    }

    /// Gain and loss coincide on the centre site of an odd chain, where
    /// the two impurity terms cancel.
    pub fn is_degenerate(&self) -> bool {
        self.gain_site == self.loss_site
    }
}

/// Full parameterisation of one lattice instance. `t` is the energy unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub variant: Variant,
    /// Number of sites.
    pub n: usize,
    pub t: f64,
    /// Hopping modulation strength (off-diagonal variants).
    pub lambda: f64,
    /// Onsite amplitude (diagonal variant).
    pub v: f64,
    pub beta: Beta,
    pub phi: f64,
    /// Non-Hermitian degree.
    pub gamma: f64,
    /// Gain site, 1-based.
    pub j: usize,
    /// Next-nearest-neighbour amplitude (NNN variant).
    pub t_prime: f64,
}

impl ModelSpec {
    /// Off-diagonal chain with `t = 1`, `Φ = 0`, `γ = 0`, `j = 1`.
    pub fn off_diagonal(n: usize, lambda: f64, beta: Beta) -> Self {
        Self {
            variant: Variant::OffDiagonalAA,
            n,
            t: 1.0,
            lambda,
            v: 0.0,
            beta,
            phi: 0.0,
            gamma: 0.0,
            j: 1,
            t_prime: 0.0,
        }
    }

    pub fn with_nnn(n: usize, lambda: f64, beta: Beta, t_prime: f64) -> Self {
        Self {
            variant: Variant::OffDiagonalAAWithNnn,
            t_prime,
            ..Self::off_diagonal(n, lambda, beta)
        }
    }

    pub fn diagonal(n: usize, v: f64, beta: Beta) -> Self {
        Self {
            variant: Variant::DiagonalAA,
            v,
            ..Self::off_diagonal(n, 0.0, beta)
        }
    }

    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    pub fn site(mut self, j: usize) -> Self {
        self.j = j;
        self
    }

    pub fn sites(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn placement(&self) -> Result<ImpurityPlacement, ModelError> {
        ImpurityPlacement::new(self.j, self.n, self.beta)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.n < 2 {
            return Err(invalid("n", format!("need at least 2 sites, got {}", self.n)));
        }
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(invalid("t", format!("must be finite and > 0, got {}", self.t)));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(invalid("gamma", format!("must be finite and >= 0, got {}", self.gamma)));
        }
        if !(self.phi.is_finite() && (0.0..=2.0 * PI).contains(&self.phi)) {
            return Err(invalid("phi", format!("must lie in [0, 2π], got {}", self.phi)));
        }
        if !self.lambda.is_finite() {
            return Err(invalid("lambda", "must be finite"));
        }
        if !self.v.is_finite() {
            return Err(invalid("v", "must be finite"));
        }
        if !self.t_prime.is_finite() {
            return Err(invalid("t_prime", "must be finite"));
        }
        self.beta.validate()?;
        self.placement()?;
        Ok(())
    }

    /// Hopping amplitude of bond `n` (1-based, `1..=N−1`), before the `−t`.
    pub fn bond_modulation(&self, n: usize) -> f64 {
        match self.variant {
            Variant::DiagonalAA => 1.0,
            _ => 1.0 + self.lambda * self.beta.phase(n, self.phi).cos(),
        }
    }

    /// Builds the Hamiltonian of whichever variant the spec names.
    pub fn build(&self) -> Result<ComplexMatrix, ModelError> {
        match self.variant {
            Variant::OffDiagonalAA => build_offdiagonal_aa(self),
            Variant::OffDiagonalAAWithNnn => build_with_nnn(self),
            Variant::DiagonalAA => build_diagonal_aa(self),
        }
    }
}

fn expect_variant(spec: &ModelSpec, expected: Variant) -> Result<(), ModelError> {
    if spec.variant != expected {
        return Err(ModelError::VariantMismatch {
            expected,
            found: spec.variant,
        });
    }
    spec.validate()
}

fn add_impurities(h: &mut ComplexMatrix, spec: &ModelSpec) {
    let gain = spec.j - 1;
    let loss = spec.n - spec.j;
    h[(gain, gain)] += Complex64::new(0.0, spec.gamma);
    h[(loss, loss)] -= Complex64::new(0.0, spec.gamma);
}

fn modulated_chain(spec: &ModelSpec) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(spec.n);
    for bond in 1..spec.n {
        let amp = Complex64::new(-spec.t * (1.0 + spec.lambda * spec.beta.phase(bond, spec.phi).cos()), 0.0);
        h[(bond - 1, bond)] = amp;
        h[(bond, bond - 1)] = amp;
    }
    add_impurities(&mut h, spec);
    h
}

/// Off-diagonal Aubry-André chain with gain/loss impurities.
pub fn build_offdiagonal_aa(spec: &ModelSpec) -> Result<ComplexMatrix, ModelError> {
    expect_variant(spec, Variant::OffDiagonalAA)?;
    Ok(modulated_chain(spec))
}

/// Off-diagonal chain plus constant next-nearest-neighbour hopping `+t′`
/// (positive sign, unlike the nearest-neighbour `−t`).
pub fn build_with_nnn(spec: &ModelSpec) -> Result<ComplexMatrix, ModelError> {
    expect_variant(spec, Variant::OffDiagonalAAWithNnn)?;
    let mut h = modulated_chain(spec);
    let tp = Complex64::new(spec.t_prime, 0.0);
    for n in 0..spec.n.saturating_sub(2) {
        h[(n, n + 2)] = tp;
        h[(n + 2, n)] = tp;
    }
    Ok(h)
}

/// Diagonal Aubry-André chain: uniform `−t` hopping, onsite
/// `V·cos(2πβn + Φ)` and the impurity pair on the diagonal.
pub fn build_diagonal_aa(spec: &ModelSpec) -> Result<ComplexMatrix, ModelError> {
    expect_variant(spec, Variant::DiagonalAA)?;
    let n = spec.n;
    let mut h = ComplexMatrix::zeros(n);
    let hop = Complex64::new(-spec.t, 0.0);
    for i in 0..n - 1 {
        h[(i, i + 1)] = hop;
        h[(i + 1, i)] = hop;
    }
    for site in 1..=n {
        h[(site - 1, site - 1)] = Complex64::new(spec.v * spec.beta.phase(site, spec.phi).cos(), 0.0);
    }
    add_impurities(&mut h, spec);
    Ok(h)
}
