//! Verification harness pairing the two verdict chains.
//!
//! The fidelity chain (input states → fidelity → threshold) and the Simon
//! chain (input states → mixed two-mode CM → partial transpose → `λ̃`) share
//! only the state constructors, so agreement between them is evidence for
//! the iff-relation rather than a tautology.

use std::f64::consts::{PI, TAU};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entanglement::is_entangled;
use crate::error::{Error, Result};
use crate::evolution::{mix, reduce, CouplingSpec, Mode};
use crate::fidelity::{displaced_threshold, fidelity_threshold, gaussian_fidelity};
use crate::gaussian::{state_from_params, GaussianParams};
use crate::par::{map_indexed, Execution};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x6A55_3D1C_0FF5_EED5;

/// Samples whose fidelity lies within this fraction of `F_e` of the
/// threshold are excluded from iff-counting.
pub const FIDELITY_BAND: f64 = 1e-7;

/// Samples with `|λ̃ − 1/2|` below this are excluded from iff-counting.
pub const LAMBDA_BAND: f64 = 1e-9;

/// Tolerance on the bisection bracket for the numeric critical phase.
pub const PSI_BISECTION_TOL: f64 = 1e-12;

/// Grid used to confirm sign-equivalence of the input–output thresholds.
pub const IO_GRID_POINTS: usize = 1001;

/// One evaluation of both verdict chains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSample {
    pub params1: GaussianParams,
    pub params2: GaussianParams,
    pub tau: f64,
    pub fidelity: f64,
    /// `F_e` (zero means) or `Γ·F_e`; `None` without interaction.
    pub threshold: Option<f64>,
    pub lambda_tilde: f64,
    /// `fidelity < threshold`
    pub verdict_fidelity: bool,
    /// `λ̃ < 1/2`
    pub verdict_simon: bool,
    pub boundary_excluded: bool,
    /// τ ∈ {0, 1}: the inputs never interact.
    pub no_interaction: bool,
}

impl SweepSample {
    /// Verdicts differ on a sample outside the boundary band.
    pub fn is_disagreement(&self) -> bool {
        !self.boundary_excluded && self.verdict_fidelity != self.verdict_simon
    }

    pub fn margin(&self) -> f64 {
        self.lambda_tilde - 0.5
    }
}

/// Input–output fidelities `F(ρ_h, ρ̃_k)` in the order `(1,1), (1,2), (2,1), (2,2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IoFidelityReport {
    pub fidelities: [f64; 4],
    /// The fidelities evaluated at `psi_e_numeric`.
    pub thresholds: Option<[f64; 4]>,
    /// Relative squeezing phase in `[0, π]` where `λ̃ = 1/2`.
    pub psi_e_numeric: Option<f64>,
    pub grid_points: usize,
    /// Grid points where some `F(ρ_h, ρ̃_k) < threshold` disagrees with `λ̃ < 1/2`.
    pub sign_mismatches: usize,
    pub boundary_excluded_points: usize,
}

fn require_zero_means(params: &[&GaussianParams]) -> Result<()> {
    for p in params {
        if !p.has_zero_mean() {
            return Err(Error::InvalidParameter(
                "theorem check requires zero first moments; use the corollary check".into(),
            ));
        }
    }
    Ok(())
}

/// Both verdicts for zero-mean inputs, with threshold `F_e(μ1, μ2; τ)`.
pub fn check_theorem(p1: &GaussianParams, p2: &GaussianParams, c: CouplingSpec) -> Result<SweepSample> {
    require_zero_means(&[p1, p2])?;
    let s1 = state_from_params(p1);
    let s2 = state_from_params(p2);
    let fidelity = gaussian_fidelity(&s1, &s2)?.fidelity;
    let threshold = if c.is_trivial() {
        None
    } else {
        Some(fidelity_threshold(p1.purity(), p2.purity(), c.tau())?.f_e)
    };
    let lambda_tilde = is_entangled(&mix(&s1, &s2, c))?.lambda_tilde;
    Ok(assemble(p1, p2, c, fidelity, threshold, threshold, lambda_tilde))
}

/// Both verdicts for displaced inputs, with threshold `Γ(X̄1, X̄2) F_e`.
///
/// Also confirms that `λ̃` does not depend on the first moments.
pub fn check_corollary(p1: &GaussianParams, p2: &GaussianParams, c: CouplingSpec) -> Result<SweepSample> {
    let s1 = state_from_params(p1);
    let s2 = state_from_params(p2);
    let fidelity = gaussian_fidelity(&s1, &s2)?.fidelity;
    let (threshold, f_e) = if c.is_trivial() {
        (None, None)
    } else {
        let f_e = fidelity_threshold(p1.purity(), p2.purity(), c.tau())?.f_e;
        (Some(displaced_threshold(&s1, &s2, c.tau())?), Some(f_e))
    };
    let lambda_tilde = is_entangled(&mix(&s1, &s2, c))?.lambda_tilde;
    let centered = is_entangled(&mix(&s1.centered(), &s2.centered(), c))?.lambda_tilde;
    if (lambda_tilde - centered).abs() >= 1e-12 {
        return Err(Error::Numeric(format!(
            "lambda_tilde depends on first moments: {lambda_tilde} vs {centered}"
        )));
    }
    Ok(assemble(p1, p2, c, fidelity, threshold, f_e, lambda_tilde))
}

fn assemble(
    p1: &GaussianParams,
    p2: &GaussianParams,
    c: CouplingSpec,
    fidelity: f64,
    threshold: Option<f64>,
    f_e: Option<f64>,
    lambda_tilde: f64,
) -> SweepSample {
    let verdict_simon = lambda_tilde < 0.5 - crate::entanglement::BOUNDARY_TOL;
    let (verdict_fidelity, near_threshold) = match (threshold, f_e) {
        (Some(th), Some(f_e)) => (fidelity < th, (fidelity - th).abs() < FIDELITY_BAND * f_e),
        _ => (false, false),
    };
    SweepSample {
        params1: *p1,
        params2: *p2,
        tau: c.tau(),
        fidelity,
        threshold,
        lambda_tilde,
        verdict_fidelity,
        verdict_simon,
        boundary_excluded: near_threshold || (lambda_tilde - 0.5).abs() < LAMBDA_BAND,
        no_interaction: c.is_trivial(),
    }
}

/// Dispatches to [`check_theorem`] for zero means, [`check_corollary`] otherwise.
pub fn check(p1: &GaussianParams, p2: &GaussianParams, c: CouplingSpec) -> Result<SweepSample> {
    if p1.has_zero_mean() && p2.has_zero_mean() {
        check_theorem(p1, p2, c)
    } else {
        check_corollary(p1, p2, c)
    }
}

/// `[F(ρ1, ρ̃1), F(ρ1, ρ̃2), F(ρ2, ρ̃1), F(ρ2, ρ̃2)]` and `λ̃` of the output.
pub fn io_fidelities(p1: &GaussianParams, p2: &GaussianParams, c: CouplingSpec) -> Result<([f64; 4], f64)> {
    let s1 = state_from_params(p1);
    let s2 = state_from_params(p2);
    let out = mix(&s1, &s2, c);
    let (o1, o2) = (reduce(&out, Mode::One), reduce(&out, Mode::Two));
    let f = |a, b| gaussian_fidelity(a, b).map(|b| b.fidelity);
    let fids = [f(&s1, &o1)?, f(&s1, &o2)?, f(&s2, &o1)?, f(&s2, &o2)?];
    Ok((fids, is_entangled(&out)?.lambda_tilde))
}

/// Bisection for a root of a function that is positive at `lo` and
/// negative at `hi`. Returns `None` without a strict sign change.
pub fn bisect_decreasing<F>(mut lo: f64, mut hi: f64, tol: f64, f: F) -> Result<Option<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(f(lo)? > 0.0 && f(hi)? < 0.0) {
        return Ok(None);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Numerically recovered thresholds for the four input–output fidelities.
///
/// The squeezing phase of state 2 is varied relative to state 1. The
/// critical phase is where `λ̃` crosses `1/2` on `[0, π]`; each threshold is
/// the corresponding fidelity there. Sign-equivalence with the Simon verdict
/// is then checked on a uniform grid over the full period.
pub fn io_fidelity_thresholds(p1: &GaussianParams, p2: &GaussianParams, c: CouplingSpec) -> Result<IoFidelityReport> {
    let (fidelities, _) = io_fidelities(p1, p2, c)?;
    let mut report = IoFidelityReport {
        fidelities,
        thresholds: None,
        psi_e_numeric: None,
        grid_points: 0,
        sign_mismatches: 0,
        boundary_excluded_points: 0,
    };
    if c.is_trivial() {
        return Ok(report);
    }
    let at_phase = |phi: f64| p2.with_psi(p1.psi() + phi);
    let psi_e = bisect_decreasing(0.0, PI, PSI_BISECTION_TOL, |phi| {
        Ok(io_fidelities(p1, &at_phase(phi)?, c)?.1 - 0.5)
    })?;
    let Some(psi_e) = psi_e else {
        return Ok(report);
    };
    let (thresholds, _) = io_fidelities(p1, &at_phase(psi_e)?, c)?;
    report.thresholds = Some(thresholds);
    report.psi_e_numeric = Some(psi_e);
    report.grid_points = IO_GRID_POINTS;
    for i in 0..IO_GRID_POINTS {
        let phi = TAU * i as f64 / (IO_GRID_POINTS - 1) as f64;
        let (fids, lambda) = io_fidelities(p1, &at_phase(phi)?, c)?;
        let near = (lambda - 0.5).abs() < LAMBDA_BAND
            || fids
                .iter()
                .zip(&thresholds)
                .any(|(f, th)| (f - th).abs() < FIDELITY_BAND * th);
        if near {
            report.boundary_excluded_points += 1;
            continue;
        }
        let simon = lambda < 0.5;
        if fids.iter().zip(&thresholds).any(|(f, th)| (f < th) != simon) {
            report.sign_mismatches += 1;
        }
    }
    Ok(report)
}

/// What a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    /// Squeezing phase of state 2.
    Psi,
    Tau,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn new(axis: SweepAxis, from: f64, to: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidParameter(format!(
                "sweep needs at least 2 points, got {points}"
            )));
        }
        if !from.is_finite() || !to.is_finite() {
            return Err(Error::InvalidParameter("sweep range must be finite".into()));
        }
        if axis == SweepAxis::Tau && !((0.0..=1.0).contains(&from) && (0.0..=1.0).contains(&to)) {
            return Err(Error::InvalidParameter(format!(
                "tau sweep must stay in [0, 1], got [{from}, {to}]"
            )));
        }
        Ok(Self { axis, from, to, points })
    }

    /// Uniform ψ grid on `[0, 2π]`.
    pub fn full_period(points: usize) -> Result<Self> {
        Self::new(SweepAxis::Psi, 0.0, TAU, points)
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            return self.to;
        }
        self.from + (self.to - self.from) * i as f64 / (self.points - 1) as f64
    }
}

/// Threshold flavour used when sweeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    #[default]
    Theorem,
    Corollary,
    IoFidelity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    /// Grid value of state 2's squeezing phase (not reduced mod 2π).
    pub psi: f64,
    pub tau: f64,
    pub sample: SweepSample,
    pub io_fidelities: Option<[f64; 4]>,
}

/// Evaluates a one-parameter sweep, preserving grid order.
pub fn sweep(
    p1: &GaussianParams,
    p2: &GaussianParams,
    tau: CouplingSpec,
    spec: &SweepSpec,
    mode: SweepMode,
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    let rows = map_indexed(spec.points, exec, |i| -> Result<SweepRow> {
        let x = spec.value(i);
        let (psi, params2, c) = match spec.axis {
            SweepAxis::Psi => (x, p2.with_psi(x)?, tau),
            SweepAxis::Tau => (p2.psi(), *p2, CouplingSpec::new(x)?),
        };
        let sample = match mode {
            SweepMode::Theorem => check_theorem(p1, &params2, c)?,
            SweepMode::Corollary => check_corollary(p1, &params2, c)?,
            SweepMode::IoFidelity => check(p1, &params2, c)?,
        };
        let io = match mode {
            SweepMode::IoFidelity => Some(io_fidelities(p1, &params2, c)?.0),
            _ => None,
        };
        Ok(SweepRow {
            psi,
            tau: c.tau(),
            sample,
            io_fidelities: io,
        })
    });
    rows.into_iter().collect()
}

/// Uniform sweep of state 2's squeezing phase over `[0, 2π]`.
pub fn sweep_psi(
    p1: &GaussianParams,
    p2: &GaussianParams,
    tau: CouplingSpec,
    n_points: usize,
) -> Result<Vec<SweepSample>> {
    let spec = SweepSpec::full_period(n_points)?;
    let mode = if p1.has_zero_mean() && p2.has_zero_mean() {
        SweepMode::Theorem
    } else {
        SweepMode::Corollary
    };
    Ok(sweep(p1, p2, tau, &spec, mode, Execution::default())?
        .into_iter()
        .map(|row| row.sample)
        .collect())
}

/// Ranges for randomized draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRanges {
    pub r_max: f64,
    pub n_max: f64,
    pub alpha_max: f64,
}

impl Default for SampleRanges {
    fn default() -> Self {
        Self {
            r_max: 2.0,
            n_max: 2.0,
            alpha_max: 2.0,
        }
    }
}

/// Which check a random draw feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Theorem,
    Corollary,
}

/// Independent RNG for draw `index` of the given kind, so results do not
/// depend on evaluation order or thread count.
pub fn sample_rng(seed: u64, index: u64, kind: CheckKind) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lane = match kind {
        CheckKind::Theorem => 0,
        CheckKind::Corollary => 1,
    };
    rng.set_stream(index.wrapping_mul(2).wrapping_add(lane));
    rng
}

/// Draws `(state1, state2, τ)` with `r ∈ [0, r_max]`, `ψ ∈ [0, 2π)`,
/// `N ∈ [0, n_max]`, `τ ∈ (0, 1)` and, for the corollary, `|α| ≤ alpha_max`.
pub fn draw_sample<R: Rng>(
    rng: &mut R,
    ranges: &SampleRanges,
    kind: CheckKind,
) -> Result<(GaussianParams, GaussianParams, CouplingSpec)> {
    let draw_state = |rng: &mut R| -> Result<GaussianParams> {
        let r = rng.random_range(0.0..=ranges.r_max);
        let psi = rng.random_range(0.0..TAU);
        let n = rng.random_range(0.0..=ranges.n_max);
        let (re, im) = match kind {
            CheckKind::Theorem => (0.0, 0.0),
            CheckKind::Corollary => {
                let mag = ranges.alpha_max * rng.random::<f64>().sqrt();
                let phase = rng.random_range(0.0..TAU);
                (mag * phase.cos(), mag * phase.sin())
            }
        };
        GaussianParams::new(re, im, r, psi, n)
    };
    let p1 = draw_state(rng)?;
    let p2 = draw_state(rng)?;
    let mut tau = rng.random::<f64>();
    while tau == 0.0 {
        tau = rng.random::<f64>();
    }
    Ok((p1, p2, CouplingSpec::new(tau)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyConfig {
    /// Draws per check kind.
    pub samples: usize,
    pub seed: u64,
    pub ranges: SampleRanges,
    pub execution: Execution,
    pub kinds: &'static [CheckKind],
    /// Replace every draw's second state by its first (edge-case runs).
    pub force_identical: bool,
}

impl CertifyConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            ranges: SampleRanges::default(),
            execution: Execution::default(),
            kinds: &[CheckKind::Theorem, CheckKind::Corollary],
            force_identical: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifyRecord {
    pub index: usize,
    pub kind: CheckKind,
    pub sample: SweepSample,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifySummary {
    pub samples: usize,
    pub seed: u64,
    pub evaluations: usize,
    pub disagreements: usize,
    pub theorem_disagreements: usize,
    pub corollary_disagreements: usize,
    pub boundary_excluded_count: usize,
    /// Largest `|λ̃ − 1/2|` among disagreeing samples; 0 when there are none.
    pub max_margin_violation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyOutcome {
    pub summary: CertifySummary,
    /// Ordered by draw index, then by kind.
    pub records: Vec<CertifyRecord>,
}

/// Randomized certification of the iff-relation.
pub fn certify(config: &CertifyConfig) -> Result<CertifyOutcome> {
    if config.samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let disagreements = AtomicUsize::new(0);
    let kinds = config.kinds;
    let per_index = map_indexed(config.samples, config.execution, |i| -> Result<Vec<CertifyRecord>> {
        kinds
            .iter()
            .map(|&kind| {
                let mut rng = sample_rng(config.seed, i as u64, kind);
                let (p1, mut p2, c) = draw_sample(&mut rng, &config.ranges, kind)?;
                if config.force_identical {
                    p2 = p1;
                }
                let sample = match kind {
                    CheckKind::Theorem => check_theorem(&p1, &p2, c)?,
                    CheckKind::Corollary => check_corollary(&p1, &p2, c)?,
                };
                if sample.is_disagreement() {
                    disagreements.fetch_add(1, Ordering::Relaxed);
                }
                Ok(CertifyRecord { index: i, kind, sample })
            })
            .collect()
    });
    let mut records = Vec::with_capacity(config.samples * kinds.len());
    for chunk in per_index {
        records.extend(chunk?);
    }

    let count = |kind: CheckKind| {
        records
            .iter()
            .filter(|r| r.kind == kind && r.sample.is_disagreement())
            .count()
    };
    let summary = CertifySummary {
        samples: config.samples,
        seed: config.seed,
        evaluations: records.len(),
        disagreements: disagreements.load(Ordering::Relaxed),
        theorem_disagreements: count(CheckKind::Theorem),
        corollary_disagreements: count(CheckKind::Corollary),
        boundary_excluded_count: records.iter().filter(|r| r.sample.boundary_excluded).count(),
        max_margin_violation: records
            .iter()
            .filter(|r| r.sample.is_disagreement())
            .map(|r| r.sample.margin().abs())
            .fold(0.0, f64::max),
    };
    Ok(CertifyOutcome { summary, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reference(psi: f64) -> (GaussianParams, GaussianParams) {
        (
            GaussianParams::squeezed_thermal(0.5, 0.0, 0.2).unwrap(),
            GaussianParams::squeezed_thermal(0.7, psi, 0.3).unwrap(),
        )
    }

    fn tau(t: f64) -> CouplingSpec {
        CouplingSpec::new(t).unwrap()
    }

    #[test]
    fn identical_params_are_separable_on_both_sides() {
        let p = GaussianParams::squeezed_thermal(0.9, 1.0, 0.4).unwrap();
        let s = check_theorem(&p, &p, tau(0.3)).unwrap();
        assert_abs_diff_eq!(s.fidelity, 1.0, epsilon = 1e-12);
        assert!(s.fidelity >= s.threshold.unwrap() - 1e-12);
        assert!(s.lambda_tilde >= 0.5 - 1e-12);
        assert!(!s.verdict_fidelity && !s.verdict_simon);
    }

    #[test]
    fn reference_at_pi_is_entangled_on_both_sides() {
        let (p1, p2) = reference(PI);
        for t in [0.5, 0.8] {
            let s = check_theorem(&p1, &p2, tau(t)).unwrap();
            assert!(s.verdict_fidelity && s.verdict_simon && !s.boundary_excluded);
        }
    }

    #[test]
    fn theorem_check_rejects_displaced_inputs() {
        let (p1, p2) = reference(1.0);
        let p1 = p1.with_alpha(1.0, 0.0).unwrap();
        assert!(matches!(
            check_theorem(&p1, &p2, tau(0.5)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(check(&p1, &p2, tau(0.5)).is_ok());
    }

    #[test]
    fn no_interaction_yields_false_verdicts() {
        let (p1, p2) = reference(PI);
        for t in [0.0, 1.0] {
            let s = check_theorem(&p1, &p2, tau(t)).unwrap();
            assert!(s.no_interaction && s.threshold.is_none());
            assert!(!s.verdict_fidelity && !s.verdict_simon);
            let s = check_corollary(&p1, &p2, tau(t)).unwrap();
            assert!(!s.verdict_fidelity && !s.verdict_simon);
        }
    }

    #[test]
    fn corollary_matches_theorem_for_equal_means() {
        for psi in [0.0, 0.4, 1.0, PI, 5.0] {
            let (p1, p2) = reference(psi);
            let th = check_theorem(&p1, &p2, tau(0.5)).unwrap();
            let co = check_corollary(
                &p1.with_alpha(0.3, 0.2).unwrap(),
                &p2.with_alpha(0.3, 0.2).unwrap(),
                tau(0.5),
            )
            .unwrap();
            assert_eq!(th.verdict_fidelity, co.verdict_fidelity);
            assert_eq!(th.verdict_simon, co.verdict_simon);
            assert_abs_diff_eq!(th.threshold.unwrap(), co.threshold.unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn displaced_identical_covariances_stay_separable() {
        let p = GaussianParams::squeezed_thermal(0.5, 0.0, 0.2).unwrap();
        let s = check_corollary(&p.with_alpha(2.0, 0.0).unwrap(), &p, tau(0.5)).unwrap();
        assert!(s.fidelity < 1.0);
        assert!(!s.verdict_fidelity && !s.verdict_simon);
    }

    #[test]
    fn bisection_finds_sqrt_two() {
        let root = bisect_decreasing(0.0, 2.0, 1e-13, |x| Ok(2.0 - x * x))
            .unwrap()
            .unwrap();
        assert_abs_diff_eq!(root, 2f64.sqrt(), epsilon = 1e-12);
        assert_eq!(bisect_decreasing(0.0, 1.0, 1e-12, |x| Ok(2.0 - x)).unwrap(), None);
    }

    #[test]
    fn io_thresholds_for_reference_states() {
        let (p1, p2) = reference(PI);
        let report = io_fidelity_thresholds(&p1, &p2, tau(0.8)).unwrap();
        let psi_e = report.psi_e_numeric.unwrap();
        let closed = crate::fidelity::psi_threshold(0.5, 0.7, 1.0 / 1.4, 1.0 / 1.6, 0.8)
            .unwrap()
            .critical()
            .unwrap();
        assert_abs_diff_eq!(psi_e, closed, epsilon = 1e-9);
        assert_eq!(report.sign_mismatches, 0);
        let th = report.thresholds.unwrap();
        let (at_root, _) = io_fidelities(&p1, &p2.with_psi(psi_e).unwrap(), tau(0.8)).unwrap();
        for k in 0..4 {
            assert_abs_diff_eq!(th[k], at_root[k], epsilon = 1e-8);
        }
    }

    #[test]
    fn io_thresholds_absent_without_interaction_or_difference() {
        let (p1, p2) = reference(PI);
        let r = io_fidelity_thresholds(&p1, &p2, tau(1.0)).unwrap();
        assert!(r.thresholds.is_none() && r.psi_e_numeric.is_none());
        assert_abs_diff_eq!(r.fidelities[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.fidelities[3], 1.0, epsilon = 1e-12);
        let th = GaussianParams::thermal(0.7).unwrap();
        let r = io_fidelity_thresholds(&th, &th, tau(0.4)).unwrap();
        assert!(r.thresholds.is_none());
        for f in r.fidelities {
            assert_abs_diff_eq!(f, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn three_point_sweep_hits_period_ends() {
        let (p1, p2) = reference(0.0);
        let spec = SweepSpec::full_period(3).unwrap();
        let rows = sweep(&p1, &p2, tau(0.5), &spec, SweepMode::Theorem, Execution::Sequential).unwrap();
        let psis: Vec<f64> = rows.iter().map(|r| r.psi).collect();
        assert_eq!(psis, vec![0.0, PI, TAU]);
        assert_abs_diff_eq!(rows[0].sample.fidelity, rows[2].sample.fidelity, epsilon = 1e-12);
        assert!(SweepSpec::full_period(1).is_err());
        assert!(SweepSpec::new(SweepAxis::Tau, 0.0, 1.5, 4).is_err());
    }

    #[test]
    fn sweep_psi_minimum_at_pi() {
        let (p1, p2) = reference(0.0);
        let samples = sweep_psi(&p1, &p2, tau(0.5), 1001).unwrap();
        let argmin = |key: fn(&SweepSample) -> f64| {
            (0..samples.len())
                .min_by(|&a, &b| key(&samples[a]).total_cmp(&key(&samples[b])))
                .unwrap()
        };
        assert_eq!(argmin(|s| s.fidelity), 500);
        assert_eq!(argmin(|s| s.lambda_tilde), 500);
    }

    #[test]
    fn tau_sweep_covers_trivial_endpoints() {
        let (p1, p2) = reference(PI);
        let spec = SweepSpec::new(SweepAxis::Tau, 0.0, 1.0, 5).unwrap();
        let rows = sweep(&p1, &p2, tau(0.5), &spec, SweepMode::Theorem, Execution::Parallel).unwrap();
        assert!(rows[0].sample.no_interaction && rows[4].sample.no_interaction);
        assert!(rows[1..4]
            .iter()
            .all(|r| r.sample.verdict_simon && r.sample.verdict_fidelity));
    }

    #[test]
    fn sampling_is_reproducible_and_in_range() {
        let ranges = SampleRanges::default();
        let a = draw_sample(
            &mut sample_rng(7, 3, CheckKind::Corollary),
            &ranges,
            CheckKind::Corollary,
        )
        .unwrap();
        let b = draw_sample(
            &mut sample_rng(7, 3, CheckKind::Corollary),
            &ranges,
            CheckKind::Corollary,
        )
        .unwrap();
        assert_eq!(a, b);
        let c = draw_sample(&mut sample_rng(7, 3, CheckKind::Theorem), &ranges, CheckKind::Theorem).unwrap();
        assert_ne!(a.0.r(), c.0.r());
        assert!(c.0.has_zero_mean() && c.1.has_zero_mean());
        for i in 0..500 {
            let (p1, p2, t) = draw_sample(
                &mut sample_rng(1, i, CheckKind::Corollary),
                &ranges,
                CheckKind::Corollary,
            )
            .unwrap();
            for p in [p1, p2] {
                assert!(p.r() <= 2.0 && p.n_th() <= 2.0);
                assert!(p.alpha_re().hypot(p.alpha_im()) <= 2.0 + 1e-12);
            }
            assert!(t.tau() > 0.0 && t.tau() < 1.0);
        }
    }

    #[test]
    fn small_certification_run() {
        let out = certify(&CertifyConfig::new(2000, DEFAULT_SEED)).unwrap();
        assert_eq!(out.summary.disagreements, 0);
        assert_eq!(out.summary.evaluations, 4000);
        assert_eq!(out.summary.max_margin_violation, 0.0);
        let again = certify(&CertifyConfig {
            execution: Execution::Sequential,
            ..CertifyConfig::new(2000, DEFAULT_SEED)
        })
        .unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn forced_identical_draw_is_separable() {
        let config = CertifyConfig {
            force_identical: true,
            ..CertifyConfig::new(1, DEFAULT_SEED)
        };
        let out = certify(&config).unwrap();
        for rec in &out.records {
            let s = rec.sample;
            assert!(s.boundary_excluded || (!s.verdict_fidelity && !s.verdict_simon));
        }
        assert!(certify(&CertifyConfig::new(0, 1)).is_err());
    }
}
