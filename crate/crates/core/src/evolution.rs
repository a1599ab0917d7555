//! Phase-space action of the exchange evolution `U_g(t) = exp(−i g t (a b† + a† b))`.
//!
//! The evolution acts as a real beam splitter with transmissivity
//! `τ = cos²(gt)`: `a → √τ a + √(1−τ) b`, `b → −√(1−τ) a + √τ b`. Other
//! sign conventions differ by a phase rotation of mode 2, which is a local
//! symplectic map and leaves every entanglement verdict unchanged.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{SingleModeState, TwoModeState};

/// Effective coupling `τ ∈ [0, 1]` of the exchange interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct CouplingSpec {
    tau: f64,
}

impl CouplingSpec {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || !(0.0..=1.0).contains(&tau) {
            return Err(Error::InvalidParameter(format!(
                "coupling tau must lie in [0, 1], got {tau}"
            )));
        }
        Ok(Self { tau })
    }

    /// `τ = cos²(g t)` from a coupling rate and an interaction time.
    pub fn from_rate(g: f64, t: f64) -> Result<Self> {
        if !g.is_finite() || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "g and t must be finite, got g = {g}, t = {t}"
            )));
        }
        Self::new((g * t).cos().powi(2))
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// True when the map is a mode permutation (τ = 0) or the identity (τ = 1).
    pub fn is_trivial(&self) -> bool {
        self.tau == 0.0 || self.tau == 1.0
    }
}

impl TryFrom<f64> for CouplingSpec {
    type Error = Error;

    fn try_from(tau: f64) -> Result<Self> {
        Self::new(tau)
    }
}

impl From<CouplingSpec> for f64 {
    fn from(c: CouplingSpec) -> f64 {
        c.tau
    }
}

/// Output mode label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    One,
    Two,
}

impl TryFrom<usize> for Mode {
    type Error = Error;

    fn try_from(index: usize) -> Result<Self> {
        match index {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            other => Err(Error::InvalidMode(other)),
        }
    }
}

/// Symplectic matrix of the beam splitter in `(q1, p1, q2, p2)` ordering.
pub fn beam_splitter(c: CouplingSpec) -> Matrix4<f64> {
    let t = c.tau.sqrt();
    let s = (1.0 - c.tau).sqrt();
    Matrix4::new(
        t, 0.0, s, 0.0, //
        0.0, t, 0.0, s, //
        -s, 0.0, t, 0.0, //
        0.0, -s, 0.0, t,
    )
}

/// Mixes two uncorrelated single-mode states.
///
/// ```text
/// Σ1  = τ σ1 + (1−τ) σ2
/// Σ2  = τ σ2 + (1−τ) σ1
/// Σ12 = √(τ(1−τ)) (σ2 − σ1)
/// ```
///
/// The diagonal blocks are evaluated as a correction to the nearer input,
/// so identical inputs and `τ ∈ {0, 1}` come back bit-for-bit.
pub fn mix(s1: &SingleModeState, s2: &SingleModeState, c: CouplingSpec) -> TwoModeState {
    let tau = c.tau;
    let (sig1, sig2) = (s1.cm(), s2.cm());
    let diff: Matrix2<f64> = sig2 - sig1;
    let (block1, block2) = if tau >= 0.5 {
        (sig1 + diff * (1.0 - tau), sig2 - diff * (1.0 - tau))
    } else {
        (sig2 - diff * tau, sig1 + diff * tau)
    };
    let block12 = diff * (tau * (1.0 - tau)).sqrt();

    let mut cm = Matrix4::zeros();
    cm.fixed_view_mut::<2, 2>(0, 0).copy_from(&block1);
    cm.fixed_view_mut::<2, 2>(2, 2).copy_from(&block2);
    cm.fixed_view_mut::<2, 2>(0, 2).copy_from(&block12);
    cm.fixed_view_mut::<2, 2>(2, 0).copy_from(&block12.transpose());

    let (t, s) = (tau.sqrt(), (1.0 - tau).sqrt());
    let m1: Vector2<f64> = s1.mean() * t + s2.mean() * s;
    let m2: Vector2<f64> = s2.mean() * t - s1.mean() * s;
    TwoModeState::from_parts(Vector4::new(m1[0], m1[1], m2[0], m2[1]), cm)
}

/// Reduced single-mode state of one output mode (partial trace).
pub fn reduce(state: &TwoModeState, keep: Mode) -> SingleModeState {
    let offset = match keep {
        Mode::One => 0,
        Mode::Two => 2,
    };
    let mean = state.mean().fixed_rows::<2>(offset).into_owned();
    let cm = state.cm().fixed_view::<2, 2>(offset, offset).into_owned();
    SingleModeState::from_parts(mean, cm)
}
