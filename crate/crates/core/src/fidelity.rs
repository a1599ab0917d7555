//! Uhlmann fidelity between single-mode Gaussian states and the fidelity
//! thresholds that decide whether mixing two inputs produces entanglement.
//!
//! For covariance matrices `σ1, σ2` and first moments `X̄1, X̄2`:
//!
//! ```text
//! Δ = det(σ1 + σ2)
//! δ = 4 (det σ1 − ¼)(det σ2 − ¼)
//! Γ = exp[−½ X̄12ᵀ (σ1 + σ2)⁻¹ X̄12],   X̄12 = X̄1 − X̄2
//! F = Γ / (√(Δ + δ) − √δ)
//! ```
//!
//! Nothing in this module looks at a two-mode covariance matrix; the
//! threshold side of the iff-check is computed from the inputs alone.

use serde::Serialize;

use crate::entanglement::{check_purities, check_squeezing, gamma_factor, lambda_min_closed_form};
use crate::error::{Error, Result};
use crate::gaussian::{purity, SingleModeState};

/// Round-off allowance when classifying the arccos argument for `ψ_e`.
pub const ARCCOS_EDGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityBreakdown {
    pub fidelity: f64,
    /// `Δ = det(σ1 + σ2)`
    pub delta_cap: f64,
    /// `δ = 4 ∏ (det σk − ¼)`
    pub delta_small: f64,
    /// `Γ(X̄1, X̄2)`
    pub gamma_factor: f64,
    /// `X̄12 = X̄1 − X̄2`
    pub mean_diff: [f64; 2],
}

/// Where the entangling window in the relative squeezing phase `ψ` begins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum PsiThreshold {
    /// Output is entangled iff `ψ ∈ (ψ_e, 2π − ψ_e)`, with `ψ_e ∈ [0, π]`.
    Critical(f64),
    /// The arccos argument exceeds 1: entangled for every `ψ`.
    AlwaysEntangled,
    /// The arccos argument is below −1: separable for every `ψ`.
    NeverEntangled,
    /// One input is unsqueezed, so `ψ` is immaterial.
    Degenerate { entangled: bool },
}

impl PsiThreshold {
    /// Verdict predicted for relative squeezing phase `psi`.
    pub fn entangled_at(&self, psi: f64) -> bool {
        match *self {
            PsiThreshold::Critical(psi_e) => {
                let psi = crate::gaussian::normalize_phase(psi);
                psi > psi_e && psi < 2.0 * std::f64::consts::PI - psi_e
            }
            PsiThreshold::AlwaysEntangled => true,
            PsiThreshold::NeverEntangled => false,
            PsiThreshold::Degenerate { entangled } => entangled,
        }
    }

    pub fn critical(&self) -> Option<f64> {
        match *self {
            PsiThreshold::Critical(psi_e) => Some(psi_e),
            _ => None,
        }
    }
}

/// Threshold quantities for a pair of purities and a coupling.
///
/// The squeezing-dependent fields are `None` when the report came from
/// [`fidelity_threshold`], which never reads `r1, r2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub f_e: f64,
    pub f_coupling: f64,
    pub g_minus: f64,
    pub g_plus: f64,
    pub psi_e: Option<PsiThreshold>,
    pub f_min: Option<f64>,
    pub lambda_min: Option<f64>,
    pub gamma_proof: Option<f64>,
}

pub fn gaussian_fidelity(s1: &SingleModeState, s2: &SingleModeState) -> Result<FidelityBreakdown> {
    let sum = s1.cm() + s2.cm();
    let delta_cap = sum.determinant();
    let inv = match sum.try_inverse() {
        Some(inv) if delta_cap > 0.0 && delta_cap.is_finite() => inv,
        _ => {
            return Err(Error::Singular(format!(
                "sigma1 + sigma2 is not invertible (det = {delta_cap:e})"
            )))
        }
    };
    let diff = s1.mean() - s2.mean();
    let gamma = (-0.5 * diff.dot(&(inv * diff))).exp();
    // det σ − ¼ is ~1e-13 noise for pure states; keep δ non-negative
    let delta_small = (4.0 * (s1.cm().determinant() - 0.25) * (s2.cm().determinant() - 0.25)).max(0.0);
    // 1/(√(Δ+δ) − √δ) = (√(Δ+δ) + √δ)/Δ
    let overlap = ((delta_cap + delta_small).sqrt() + delta_small.sqrt()) / delta_cap;
    Ok(FidelityBreakdown {
        fidelity: gamma * overlap,
        delta_cap,
        delta_small,
        gamma_factor: gamma,
        mean_diff: [diff[0], diff[1]],
    })
}

fn check_interacting(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Domain(format!(
            "threshold undefined without interaction: tau must lie in (0, 1), got {tau}"
        )));
    }
    Ok(())
}

/// `f(μ1, μ2, τ) = [1 + μ1²μ2² − (μ1² + μ2²)(1 − 2τ)²] / [8 μ1 μ2 τ(1 − τ)]`.
pub fn coupling_function(mu1: f64, mu2: f64, tau: f64) -> Result<f64> {
    check_purities(mu1, mu2)?;
    check_interacting(tau)?;
    let skew = 1.0 - 2.0 * tau;
    let num = 1.0 + mu1 * mu1 * mu2 * mu2 - (mu1 * mu1 + mu2 * mu2) * skew * skew;
    Ok(num / (8.0 * mu1 * mu2 * tau * (1.0 - tau)))
}

/// Critical relative squeezing phase
/// `ψ_e = arccos{[cosh 2r1 cosh 2r2 − f] / [sinh 2r1 sinh 2r2]}`.
///
/// Arguments beyond `±(1 + 1e-12)` are reported as
/// [`PsiThreshold::AlwaysEntangled`] or [`PsiThreshold::NeverEntangled`];
/// only round-off inside that band is folded back onto `ψ_e ∈ {0, π}`.
pub fn psi_threshold(r1: f64, r2: f64, mu1: f64, mu2: f64, tau: f64) -> Result<PsiThreshold> {
    check_squeezing(r1, r2)?;
    let f = coupling_function(mu1, mu2, tau)?;
    if r1 == 0.0 || r2 == 0.0 {
        let f_min = fidelity_min_over_psi(r1, r2, mu1, mu2)?;
        let f_e = fidelity_threshold(mu1, mu2, tau)?.f_e;
        return Ok(PsiThreshold::Degenerate { entangled: f_min < f_e });
    }
    let arg = ((2.0 * r1).cosh() * (2.0 * r2).cosh() - f) / ((2.0 * r1).sinh() * (2.0 * r2).sinh());
    // an argument of exactly ±1 (e.g. equal pure squeezings) lands a few ulps outside
    Ok(if arg > 1.0 + ARCCOS_EDGE_TOL {
        PsiThreshold::AlwaysEntangled
    } else if arg < -1.0 - ARCCOS_EDGE_TOL {
        PsiThreshold::NeverEntangled
    } else {
        PsiThreshold::Critical(arg.clamp(-1.0, 1.0).acos())
    })
}

/// Threshold fidelity
/// `F_e = 4 μ1 μ2 √(τ(1−τ)) / [√(g− + 4τ(1−τ) g+) − √(4τ(1−τ) g−)]`
/// with `g± = (1 ± μ1²)(1 ± μ2²)`.
pub fn fidelity_threshold(mu1: f64, mu2: f64, tau: f64) -> Result<ThresholdReport> {
    check_purities(mu1, mu2)?;
    check_interacting(tau)?;
    let (m1, m2) = (mu1 * mu1, mu2 * mu2);
    let g_minus = (1.0 - m1) * (1.0 - m2);
    let g_plus = (1.0 + m1) * (1.0 + m2);
    let q = 4.0 * tau * (1.0 - tau);
    let (a, b) = (g_minus + q * g_plus, q * g_minus);
    // √a − √b = (a − b)/(√a + √b), with a − b = g− + q (g+ − g−)
    let denom = (g_minus + q * (g_plus - g_minus)) / (a.sqrt() + b.sqrt());
    let f_e = 4.0 * mu1 * mu2 * (tau * (1.0 - tau)).sqrt() / denom;
    Ok(ThresholdReport {
        f_e,
        f_coupling: coupling_function(mu1, mu2, tau)?,
        g_minus,
        g_plus,
        psi_e: None,
        f_min: None,
        lambda_min: None,
        gamma_proof: None,
    })
}

/// [`fidelity_threshold`] plus every squeezing-dependent quantity.
pub fn threshold_report(r1: f64, r2: f64, mu1: f64, mu2: f64, tau: f64) -> Result<ThresholdReport> {
    let mut report = fidelity_threshold(mu1, mu2, tau)?;
    report.psi_e = Some(psi_threshold(r1, r2, mu1, mu2, tau)?);
    report.f_min = Some(fidelity_min_over_psi(r1, r2, mu1, mu2)?);
    report.lambda_min = Some(lambda_min_closed_form(r1, r2, mu1, mu2, tau)?);
    report.gamma_proof = Some(gamma_factor(r1, r2, mu1, mu2, tau));
    Ok(report)
}

/// Minimum over the relative phase of the input fidelity, reached at `ψ = π`:
/// `F_min = 2 μ1 μ2 / [√(1 + μ1²μ2² + 2 μ1 μ2 cosh 2(r1 + r2)) − √g−]`.
pub fn fidelity_min_over_psi(r1: f64, r2: f64, mu1: f64, mu2: f64) -> Result<f64> {
    check_squeezing(r1, r2)?;
    check_purities(mu1, mu2)?;
    let ch = (2.0 * (r1 + r2)).cosh();
    let a = 1.0 + mu1 * mu1 * mu2 * mu2 + 2.0 * mu1 * mu2 * ch;
    let g_minus = (1.0 - mu1 * mu1) * (1.0 - mu2 * mu2);
    let a_minus_b = mu1 * mu1 + mu2 * mu2 + 2.0 * mu1 * mu2 * ch;
    Ok(2.0 * mu1 * mu2 * (a.sqrt() + g_minus.sqrt()) / a_minus_b)
}

/// Displaced threshold `Γ(X̄1, X̄2) · F_e(μ1, μ2; τ)`, with purities read off
/// the input covariance matrices.
pub fn displaced_threshold(s1: &SingleModeState, s2: &SingleModeState, tau: f64) -> Result<f64> {
    let gamma = gaussian_fidelity(s1, s2)?.gamma_factor;
    let f_e = fidelity_threshold(purity(s1)?, purity(s2)?, tau)?.f_e;
    Ok(gamma * f_e)
}
