//! Gaussian-state data types and their construction from physical parameters.

use std::f64::consts::{SQRT_2, TAU};

use nalgebra::{DMatrix, Matrix2, Matrix4, Vector2, Vector4};
use serde::{Deserialize, Serialize};

use crate::entanglement::symplectic_eigenvalues;
use crate::error::{Error, Result};

/// Tolerance on symplectic eigenvalues below `1/2` that is still accepted as
/// physical. Round-off in CM algebra near pure states lands around 1e-14.
pub const PHYSICALITY_TOL: f64 = 1e-10;

/// Symmetry tolerance for covariance matrices handed to [`validate_physical`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Physical parametrization `ρ(α, ξ, N) = D(α) S(ξ) ν_th(N) S†(ξ) D†(α)` of a
/// single mode, with `ξ = r e^{iψ}`.
///
/// The squeezing phase is stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct GaussianParams {
    alpha_re: f64,
    alpha_im: f64,
    r: f64,
    psi: f64,
    n_th: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(default)]
    alpha_re: f64,
    #[serde(default)]
    alpha_im: f64,
    r: f64,
    psi: f64,
    n_th: f64,
}

impl TryFrom<RawParams> for GaussianParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        GaussianParams::new(raw.alpha_re, raw.alpha_im, raw.r, raw.psi, raw.n_th)
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_phase(psi: f64) -> f64 {
    let reduced = psi.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if reduced >= TAU {
        0.0
    } else {
        reduced
    }
}

impl GaussianParams {
    pub fn new(alpha_re: f64, alpha_im: f64, r: f64, psi: f64, n_th: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha_re", alpha_re),
            ("alpha_im", alpha_im),
            ("r", r),
            ("psi", psi),
            ("n_th", n_th),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        if r < 0.0 {
            return Err(Error::InvalidParameter(format!("squeezing r must be >= 0, got {r}")));
        }
        if n_th < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "thermal photon number n_th must be >= 0, got {n_th}"
            )));
        }
        Ok(Self {
            alpha_re,
            alpha_im,
            r,
            psi: normalize_phase(psi),
            n_th,
        })
    }

    pub fn vacuum() -> Self {
        Self {
            alpha_re: 0.0,
            alpha_im: 0.0,
            r: 0.0,
            psi: 0.0,
            n_th: 0.0,
        }
    }

    /// Zero-mean squeezed thermal state.
    pub fn squeezed_thermal(r: f64, psi: f64, n_th: f64) -> Result<Self> {
        Self::new(0.0, 0.0, r, psi, n_th)
    }

    pub fn thermal(n_th: f64) -> Result<Self> {
        Self::new(0.0, 0.0, 0.0, 0.0, n_th)
    }

    pub fn coherent(alpha_re: f64, alpha_im: f64) -> Result<Self> {
        Self::new(alpha_re, alpha_im, 0.0, 0.0, 0.0)
    }

    /// Same state with a different squeezing phase.
    pub fn with_psi(self, psi: f64) -> Result<Self> {
        Self::new(self.alpha_re, self.alpha_im, self.r, psi, self.n_th)
    }

    /// Same state with a different displacement.
    pub fn with_alpha(self, alpha_re: f64, alpha_im: f64) -> Result<Self> {
        Self::new(alpha_re, alpha_im, self.r, self.psi, self.n_th)
    }

    pub fn alpha_re(&self) -> f64 {
        self.alpha_re
    }

    pub fn alpha_im(&self) -> f64 {
        self.alpha_im
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn n_th(&self) -> f64 {
        self.n_th
    }

    /// `μ = Tr ρ² = (1 + 2N)⁻¹`.
    pub fn purity(&self) -> f64 {
        1.0 / (1.0 + 2.0 * self.n_th)
    }

    pub fn has_zero_mean(&self) -> bool {
        self.alpha_re == 0.0 && self.alpha_im == 0.0
    }
}

/// First-moment vector and 2×2 covariance matrix of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleModeState {
    mean: Vector2<f64>,
    cm: Matrix2<f64>,
}

impl SingleModeState {
    /// Builds a state from raw moments, checking symmetry and physicality.
    pub fn new(mean: Vector2<f64>, cm: Matrix2<f64>) -> Result<Self> {
        if !mean.iter().chain(cm.iter()).all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("moments must be finite".into()));
        }
        check_symmetric(cm.as_slice(), 2)?;
        if !is_physical_single(&cm) {
            return Err(Error::NonPhysical(format!(
                "det(sigma) = {} violates det(sigma) >= 1/4",
                cm.determinant()
            )));
        }
        Ok(Self { mean, cm })
    }

    pub(crate) fn from_parts(mean: Vector2<f64>, cm: Matrix2<f64>) -> Self {
        Self { mean, cm }
    }

    pub fn mean(&self) -> &Vector2<f64> {
        &self.mean
    }

    pub fn cm(&self) -> &Matrix2<f64> {
        &self.cm
    }

    /// The same covariance with the first moments removed.
    pub fn centered(&self) -> Self {
        Self {
            mean: Vector2::zeros(),
            cm: self.cm,
        }
    }
}

/// Two-mode state in `(q1, p1, q2, p2)` ordering.
///
/// The covariance matrix has block form `[[Σ1, Σ12], [Σ12ᵀ, Σ2]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeState {
    mean: Vector4<f64>,
    cm: Matrix4<f64>,
}

impl TwoModeState {
    pub fn new(mean: Vector4<f64>, cm: Matrix4<f64>) -> Result<Self> {
        if !mean.iter().chain(cm.iter()).all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("moments must be finite".into()));
        }
        check_symmetric(cm.as_slice(), 4)?;
        if !is_physical_two(&cm)? {
            return Err(Error::NonPhysical("a symplectic eigenvalue lies below 1/2".into()));
        }
        Ok(Self { mean, cm })
    }

    /// Uncorrelated product of two single-mode states.
    pub fn product(s1: &SingleModeState, s2: &SingleModeState) -> Self {
        let mut cm = Matrix4::zeros();
        cm.fixed_view_mut::<2, 2>(0, 0).copy_from(&s1.cm);
        cm.fixed_view_mut::<2, 2>(2, 2).copy_from(&s2.cm);
        let mean = Vector4::new(s1.mean[0], s1.mean[1], s2.mean[0], s2.mean[1]);
        Self { mean, cm }
    }

    pub(crate) fn from_parts(mean: Vector4<f64>, cm: Matrix4<f64>) -> Self {
        Self { mean, cm }
    }

    pub fn mean(&self) -> &Vector4<f64> {
        &self.mean
    }

    pub fn cm(&self) -> &Matrix4<f64> {
        &self.cm
    }

    pub fn sigma1(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn sigma2(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Upper-right covariance block `Σ12`.
    pub fn sigma12(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn is_physical(&self) -> bool {
        is_physical_two(&self.cm).unwrap_or(false)
    }
}

/// Builds the phase-space representation of `ρ(α, r e^{iψ}, N)`.
///
/// `X̄ = √2 (Re α, Im α)`, and with `μ = (1 + 2N)⁻¹`:
///
/// ```text
/// σ11 = (2μ)⁻¹ [cosh 2r + cos ψ sinh 2r]
/// σ22 = (2μ)⁻¹ [cosh 2r − cos ψ sinh 2r]
/// σ12 = σ21 = −(2μ)⁻¹ sin ψ sinh 2r
/// ```
pub fn state_from_params(p: &GaussianParams) -> SingleModeState {
    let half_inv_mu = 0.5 * (1.0 + 2.0 * p.n_th);
    let (ch, sh) = ((2.0 * p.r).cosh(), (2.0 * p.r).sinh());
    let (sin_psi, cos_psi) = p.psi.sin_cos();
    let s11 = half_inv_mu * (ch + cos_psi * sh);
    let s22 = half_inv_mu * (ch - cos_psi * sh);
    let s12 = -half_inv_mu * sin_psi * sh;
    SingleModeState {
        mean: Vector2::new(SQRT_2 * p.alpha_re, SQRT_2 * p.alpha_im),
        cm: Matrix2::new(s11, s12, s12, s22),
    }
}

/// Purity `μ = (2 √det σ)⁻¹` read off the covariance matrix.
pub fn purity(s: &SingleModeState) -> Result<f64> {
    let det = s.cm.determinant();
    if det < 0.25 - PHYSICALITY_TOL {
        return Err(Error::NonPhysical(format!("det(sigma) = {det} is below 1/4")));
    }
    Ok(1.0 / (2.0 * det.sqrt()))
}

/// Uncertainty-relation gate for one- or two-mode covariance matrices.
///
/// Returns `true` iff the matrix is positive definite and all of its
/// symplectic eigenvalues are at least `1/2 − 1e-10`.
pub fn validate_physical(cm: &DMatrix<f64>) -> Result<bool> {
    let (rows, cols) = cm.shape();
    match (rows, cols) {
        (2, 2) => {
            check_symmetric(cm.as_slice(), 2)?;
            Ok(is_physical_single(&Matrix2::from_column_slice(cm.as_slice())))
        }
        (4, 4) => {
            check_symmetric(cm.as_slice(), 4)?;
            is_physical_two(&Matrix4::from_column_slice(cm.as_slice()))
        }
        _ => Err(Error::DimensionMismatch { rows, cols }),
    }
}

fn is_physical_single(cm: &Matrix2<f64>) -> bool {
    let det = cm.determinant();
    cm[(0, 0)] > 0.0 && det > 0.0 && det.sqrt() >= 0.5 - PHYSICALITY_TOL
}

fn is_physical_two(cm: &Matrix4<f64>) -> Result<bool> {
    if cm.cholesky().is_none() {
        return Ok(false);
    }
    let (nu_minus, _) = match symplectic_eigenvalues(cm) {
        Ok(nu) => nu,
        Err(Error::Numeric(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(nu_minus >= 0.5 - PHYSICALITY_TOL)
}

// column-major slice of an n×n matrix
fn check_symmetric(data: &[f64], n: usize) -> Result<()> {
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (data[i + j * n], data[j + i * n]);
            if (a - b).abs() > SYMMETRY_TOL {
                return Err(Error::InvalidParameter(format!(
                    "covariance matrix is not symmetric: entry ({i},{j}) = {a}, ({j},{i}) = {b}"
                )));
            }
        }
    }
    Ok(())
}
