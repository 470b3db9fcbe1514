//! Majorana rewrite of the two-band (β = 1/2) chain.
//!
//! Each fermion is split into two Majorana species with the site-parity
//! dependent convention `a_{2n} = σ_{2n} + iτ_{2n}` and
//! `a_{2n+1} = τ_{2n+1} + iσ_{2n+1}` (unnormalised).

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::AnalysisError;
use crate::model::{Beta, ModelSpec, RationalBeta, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    Sigma,
    Tau,
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Species::Sigma => "sigma",
            Species::Tau => "tau",
        })
    }
}

/// `a_s = re_part·first + i·second`: the species carried with a real
/// coefficient comes first.
fn natural_order(site: usize) -> (Species, Species) {
    if site.is_multiple_of(2) {
        (Species::Sigma, Species::Tau)
    } else {
        (Species::Tau, Species::Sigma)
    }
}

/// Coefficients `(α, β)` in `a_s = α·σ_s + β·τ_s`.
fn decomposition(site: usize) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    if site.is_multiple_of(2) { (one, i) } else { (i, one) }
}

/// One on-site bilinear `coefficient · first_s · second_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MajoranaBilinear {
    /// 1-based site.
    pub site: usize,
    pub first: Species,
    pub second: Species,
    /// +1 for the gain-site term, −1 for the loss-site term.
    pub sign: i8,
    pub coefficient: Complex64,
}

impl fmt::Display for MajoranaBilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign >= 0 { '+' } else { '-' };
        write!(f, "{s}{}_{}{}_{}", self.first, self.site, self.second, self.site)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajoranaForm {
    pub delta_plus: Complex64,
    pub delta_minus: Complex64,
    /// Bilinears produced by the gain/loss term, gain site first.
    pub coupling_terms: Vec<MajoranaBilinear>,
    /// Some coupling term acts on an end site, where the unpaired Majoranas
    /// of the `Δ₋ = 0` limit live.
    pub touches_unpaired: bool,
    pub z2_nontrivial: bool,
}

/// `Δ∓ = −2it(1 ∓ cosΦ)`, returned as `(Δ₊, Δ₋)`.
pub fn deltas(t: f64, phi: f64) -> (Complex64, Complex64) {
    let minus_i2t = Complex64::new(0.0, -2.0 * t);
    let delta_plus = minus_i2t * (1.0 + phi.cos());
    let delta_minus = minus_i2t * (1.0 - phi.cos());
    (delta_plus, delta_minus)
}

/// On-site bilinear of `a†_s a_s` up to the constant `σ² + τ²`, as
/// `(coefficient, first, second)` in natural order.
fn number_operator_bilinear(site: usize) -> (Complex64, Species, Species) {
    let (alpha, beta) = decomposition(site);
    // a†a ⊃ ᾱβ·στ + β̄α·τσ = (ᾱβ − β̄α)·στ
    let sigma_tau = alpha.conj() * beta - beta.conj() * alpha;
    let (first, second) = natural_order(site);
    let coeff = if first == Species::Sigma { sigma_tau } else { -sigma_tau };
    (coeff, first, second)
}

/// Majorana form of a β = 1/2 off-diagonal chain.
pub fn majorana_form(spec: &ModelSpec) -> Result<MajoranaForm, AnalysisError> {
    let half = RationalBeta::new(1, 2).expect("1/2 is a valid beta");
    if spec.beta != Beta::Rational(half) {
        return Err(AnalysisError::MajoranaNeedsHalf { beta: spec.beta.to_string() });
    }
    if spec.variant != Variant::OffDiagonalAA {
        return Err(AnalysisError::MajoranaVariant { variant: spec.variant });
    }
    spec.validate()?;
    let placement = spec.placement()?;
    let (delta_plus, delta_minus) = deltas(spec.t, spec.phi);

    let mut coupling_terms = Vec::new();
    if !placement.is_degenerate() {
        let gamma = Complex64::new(0.0, spec.gamma);
        for (site, sign) in [(placement.gain_site, 1i8), (placement.loss_site, -1i8)] {
            let (coeff, first, second) = number_operator_bilinear(site);
            coupling_terms.push(MajoranaBilinear {
                site,
                first,
                second,
                sign,
                coefficient: gamma * f64::from(sign) * coeff,
            });
        }
    }
    let touches_unpaired = coupling_terms.iter().any(|b| b.site == 1 || b.site == spec.n);
    Ok(MajoranaForm {
        delta_plus,
        delta_minus,
        coupling_terms,
        touches_unpaired,
        z2_nontrivial: delta_plus.norm() > delta_minus.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(n: usize, j: usize, phi: f64) -> ModelSpec {
        ModelSpec::off_diagonal(n, 0.4, Beta::half()).site(j).gamma(0.3).phi(phi)
    }

    #[test]
    fn deltas_at_special_phases() {
        let f = majorana_form(&spec(50, 2, 0.0)).unwrap();
        assert_eq!(f.delta_minus, Complex64::new(0.0, -0.0));
        assert_eq!(f.delta_plus, Complex64::new(0.0, -4.0));
        assert!(f.z2_nontrivial);

        let f = majorana_form(&spec(50, 2, PI / 2.0)).unwrap();
        assert!((f.delta_plus - Complex64::new(0.0, -2.0)).norm() < 1e-15);
        assert!((f.delta_minus - Complex64::new(0.0, -2.0)).norm() < 1e-15);

        let f = majorana_form(&spec(50, 2, PI)).unwrap();
        assert!(!f.z2_nontrivial);
    }

    #[test]
    fn number_operator_parity() {
        // even: a†a ⊃ 2i·στ; odd: a†a ⊃ 2i·τσ
        assert_eq!(number_operator_bilinear(2), (Complex64::new(0.0, 2.0), Species::Sigma, Species::Tau));
        assert_eq!(number_operator_bilinear(3), (Complex64::new(0.0, 2.0), Species::Tau, Species::Sigma));
    }

    #[test]
    fn second_site_avoids_unpaired_modes() {
        let f = majorana_form(&spec(50, 2, 0.0)).unwrap();
        assert!(!f.touches_unpaired);
        let sites: Vec<_> = f.coupling_terms.iter().map(|b| (b.site, b.sign)).collect();
        assert_eq!(sites, vec![(2, 1), (49, -1)]);
        // iγ·2i = −2γ on the gain site, +2γ on the loss site
        assert!((f.coupling_terms[0].coefficient - Complex64::new(-0.6, 0.0)).norm() < 1e-15);
        assert!((f.coupling_terms[1].coefficient - Complex64::new(0.6, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn edge_site_touches_unpaired_modes() {
        let f = majorana_form(&spec(49, 1, 0.0)).unwrap();
        assert!(f.touches_unpaired);
    }

    #[test]
    fn centre_placement_has_no_coupling() {
        let f = majorana_form(&spec(49, 25, 0.0)).unwrap();
        assert!(f.coupling_terms.is_empty());
        assert!(!f.touches_unpaired);
    }

    #[test]
    fn refuses_other_betas_and_variants() {
        let third = Beta::Rational(RationalBeta::inverse_of(3).unwrap());
        let s = ModelSpec::off_diagonal(12, 0.4, third);
        assert!(matches!(majorana_form(&s), Err(AnalysisError::MajoranaNeedsHalf { .. })));
        let s = ModelSpec::off_diagonal(12, 0.4, Beta::Irrational(0.5));
        assert!(majorana_form(&s).is_err());
        let s = ModelSpec::with_nnn(12, 0.4, Beta::half(), 0.1);
        assert!(matches!(majorana_form(&s), Err(AnalysisError::MajoranaVariant { .. })));
    }
}
