//! Separability of two-mode Gaussian states via the partially transposed
//! covariance matrix (Simon's criterion).
//!
//! A two-mode Gaussian state is entangled iff the smaller symplectic
//! eigenvalue `λ̃` of its partially transposed CM is below `1/2`.

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::TwoModeState;

/// `λ̃` must fall below `1/2 − BOUNDARY_TOL` to count as entangled; ties at
/// the boundary resolve to separable.
pub const BOUNDARY_TOL: f64 = 1e-9;

const DISCRIMINANT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementReport {
    /// Minimum symplectic eigenvalue of the partially transposed CM.
    pub lambda_tilde: f64,
    pub entangled: bool,
    /// `lambda_tilde − 1/2`; negative for entangled states.
    pub margin: f64,
}

/// Symplectic eigenvalues `(ν−, ν+)` of a 4×4 covariance-like matrix, from
/// the block invariants:
///
/// ```text
/// Δ   = det A + det B + 2 det C
/// ν±² = (Δ ± √(Δ² − 4 det Σ)) / 2
/// ```
///
/// `ν−²` is taken as `det Σ / ν+²` to avoid cancellation when the two
/// eigenvalues are far apart.
pub fn symplectic_eigenvalues(cm: &Matrix4<f64>) -> Result<(f64, f64)> {
    let det2 = |row: usize, col: usize| {
        let b = cm.fixed_view::<2, 2>(row, col);
        b[(0, 0)] * b[(1, 1)] - b[(0, 1)] * b[(1, 0)]
    };
    let seralian = det2(0, 0) + det2(2, 2) + 2.0 * det2(0, 2);
    let det = cm.determinant();
    let disc = seralian * seralian - 4.0 * det;
    if disc < -DISCRIMINANT_TOL * (seralian * seralian).max(1.0) || !disc.is_finite() {
        return Err(Error::Numeric(format!(
            "negative symplectic discriminant {disc:e} (matrix corrupted or not symmetric)"
        )));
    }
    let nu_plus_sq = 0.5 * (seralian + disc.max(0.0).sqrt());
    if nu_plus_sq <= 0.0 || det <= 0.0 {
        return Err(Error::Numeric(format!(
            "matrix is not positive definite (det = {det:e}, invariant = {seralian:e})"
        )));
    }
    let nu_minus_sq = det / nu_plus_sq;
    Ok((nu_minus_sq.sqrt(), nu_plus_sq.sqrt()))
}

/// Partial transposition on mode 2: `Λ Σ Λ` with `Λ = diag(1, 1, 1, −1)`.
pub fn partial_transpose(t: &TwoModeState) -> Matrix4<f64> {
    let mut pt = *t.cm();
    for i in 0..4 {
        if i != 3 {
            pt[(i, 3)] = -pt[(i, 3)];
            pt[(3, i)] = -pt[(3, i)];
        }
    }
    pt
}

pub fn is_entangled(t: &TwoModeState) -> Result<EntanglementReport> {
    let (lambda_tilde, _) = symplectic_eigenvalues(&partial_transpose(t))?;
    Ok(EntanglementReport {
        lambda_tilde,
        entangled: lambda_tilde < 0.5 - BOUNDARY_TOL,
        margin: lambda_tilde - 0.5,
    })
}

/// Minimum over the relative squeezing phase of `λ̃`, attained at `ψ = π`:
///
/// ```text
/// γ     = (μ1² + μ2²)(1 − 2τ)² + 8 μ1 μ2 τ(1 − τ) cosh[2(r1 + r2)]
/// λ̃min = ½ [γ − √(γ² − (2 μ1 μ2)²)]^½ / (√2 μ1 μ2)
/// ```
pub fn lambda_min_closed_form(r1: f64, r2: f64, mu1: f64, mu2: f64, tau: f64) -> Result<f64> {
    check_squeezing(r1, r2)?;
    check_purities(mu1, mu2)?;
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidParameter(format!("tau must lie in [0, 1], got {tau}")));
    }
    let gamma = gamma_factor(r1, r2, mu1, mu2, tau);
    let c = 2.0 * mu1 * mu2;
    let disc = gamma * gamma - c * c;
    if disc < -1e-12 {
        return Err(Error::Numeric(format!(
            "gamma^2 < (2 mu1 mu2)^2 (gamma = {gamma}, 2 mu1 mu2 = {c})"
        )));
    }
    // γ − √(γ² − c²) rewritten as c² / (γ + √(γ² − c²))
    let inner = c * c / (gamma + disc.max(0.0).sqrt());
    Ok(0.5 * inner.sqrt() / (std::f64::consts::SQRT_2 * mu1 * mu2))
}

/// The auxiliary `γ` entering [`lambda_min_closed_form`].
pub fn gamma_factor(r1: f64, r2: f64, mu1: f64, mu2: f64, tau: f64) -> f64 {
    let skew = 1.0 - 2.0 * tau;
    (mu1 * mu1 + mu2 * mu2) * skew * skew + 8.0 * mu1 * mu2 * tau * (1.0 - tau) * (2.0 * (r1 + r2)).cosh()
}

pub(crate) fn check_purities(mu1: f64, mu2: f64) -> Result<()> {
    for mu in [mu1, mu2] {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::InvalidParameter(format!("purity must lie in (0, 1], got {mu}")));
        }
    }
    Ok(())
}

pub(crate) fn check_squeezing(r1: f64, r2: f64) -> Result<()> {
    for r in [r1, r2] {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("squeezing must be >= 0, got {r}")));
        }
    }
    Ok(())
}
