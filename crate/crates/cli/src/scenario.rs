//! Scenario files: two input states, a coupling and an optional sweep.

use std::fs;
use std::path::Path;

use gaussmix::verify::{SweepAxis, SweepMode, SweepSpec};
use gaussmix::{CouplingSpec, GaussianParams};
use serde::Deserialize;

use crate::CliError;

/// Squeezing above this is accepted but flagged; closed forms are only
/// validated up to here.
pub const SOFT_R_MAX: f64 = 5.0;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    state1: GaussianParams,
    state2: GaussianParams,
    tau: Option<f64>,
    g: Option<f64>,
    t: Option<f64>,
    sweep: Option<RawSweep>,
    seed: Option<u64>,
    mode: Option<RawMode>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: RawAxis,
    from: f64,
    to: f64,
    points: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawAxis {
    Psi,
    Tau,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RawMode {
    Theorem,
    Corollary,
    IoFidelity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub state1: GaussianParams,
    pub state2: GaussianParams,
    pub coupling: CouplingSpec,
    pub sweep: Option<SweepSpec>,
    pub seed: Option<u64>,
    /// `None` when the file leaves the mode out; the check then follows the means.
    pub mode: Option<SweepMode>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawScenario = serde_json::from_str(text).map_err(|e| CliError::Input(format!("scenario: {e}")))?;
        let coupling = match (raw.tau, raw.g, raw.t) {
            (Some(tau), None, None) => CouplingSpec::new(tau)?,
            (None, Some(g), Some(t)) => CouplingSpec::from_rate(g, t)?,
            _ => {
                return Err(CliError::Input(
                    "scenario needs exactly one of `tau` or the pair `g`, `t`".into(),
                ))
            }
        };
        let sweep = raw
            .sweep
            .map(|s| {
                let axis = match s.variable {
                    RawAxis::Psi => SweepAxis::Psi,
                    RawAxis::Tau => SweepAxis::Tau,
                };
                SweepSpec::new(axis, s.from, s.to, s.points)
            })
            .transpose()?;
        let mode = raw.mode.map(|m| match m {
            RawMode::Theorem => SweepMode::Theorem,
            RawMode::Corollary => SweepMode::Corollary,
            RawMode::IoFidelity => SweepMode::IoFidelity,
        });
        Ok(Self {
            state1: raw.state1,
            state2: raw.state2,
            coupling,
            sweep,
            seed: raw.seed,
            mode,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn exceeds_soft_bound(&self) -> bool {
        self.state1.r() > SOFT_R_MAX || self.state2.r() > SOFT_R_MAX
    }
}
