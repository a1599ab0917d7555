//! Command-line driver: single checks, phase sweeps and certification runs.
//!
//! Exit codes: 0 success (whatever the verdict), 2 malformed input,
//! 3 domain or numeric failure, 4 unwritable output, 5 certification
//! disagreements.

pub mod csv;
pub mod scenario;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gaussmix::verify::{self, CertifyConfig, CertifySummary, IoFidelityReport, SweepMode, SweepSample, SweepSpec};
use gaussmix::{CouplingSpec, Error, Execution};
use serde::Serialize;

pub use scenario::Scenario;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot write output: {0}")]
    Output(String),
    #[error("{0} disagreement(s) between fidelity and Simon verdicts")]
    Disagreements(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Output(_) => 4,
            CliError::Disagreements(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Numeric(_) | Error::Singular(_) => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gaussmix",
    version,
    about = "Entanglement of mixed Gaussian states at a beam splitter"
)]
pub struct Cli {
    /// Suppress reports on stdout and notes on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity and Simon verdicts for one scenario, as JSON.
    Check(CheckArgs),
    /// Sweep ψ or τ and write a CSV.
    Sweep(SweepArgs),
    /// Sweep with input–output fidelity columns.
    IoFidelity(SweepArgs),
    /// Randomized comparison of both verdicts.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Overrides the scenario coupling.
    #[arg(long)]
    pub tau: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the grid size; without a sweep block this sweeps ψ over [0, 2π].
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub tau: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, env = "GAUSSMIX_SEED")]
    pub seed: Option<u64>,
    /// Per-sample CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Only its `seed` is read, used when neither flag nor env var is set.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Use state 1 for both inputs.
    #[arg(long)]
    pub force_identical: bool,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub mode: SweepMode,
    pub tau: f64,
    pub fidelity: f64,
    pub threshold: Option<f64>,
    pub lambda_tilde: f64,
    pub entangled: bool,
    pub margin: f64,
    pub boundary_excluded: bool,
    pub verdict_fidelity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub io_fidelity: Option<IoFidelityReport>,
}

#[derive(Debug, Serialize)]
struct SweepReport {
    rows: usize,
    entangled_rows: usize,
    out: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    io_fidelity: Option<IoFidelityReport>,
}

/// Runs a parsed command line. Reports go to stdout unless `quiet`.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let quiet = cli.quiet;
    match cli.command {
        Command::Check(args) => {
            let mut scenario = Scenario::load(&args.scenario)?;
            apply_tau(&mut scenario, args.tau)?;
            note_soft_bound(&scenario, quiet);
            let report = cmd_check(&scenario)?;
            emit(&report, quiet)
        }
        Command::Sweep(args) => sweep_command(&args, None, quiet),
        Command::IoFidelity(args) => sweep_command(&args, Some(SweepMode::IoFidelity), quiet),
        Command::Certify(args) => {
            let scenario_seed = args
                .scenario
                .as_deref()
                .map(Scenario::load)
                .transpose()?
                .and_then(|s| s.seed);
            let mut config = CertifyConfig::new(
                args.samples,
                args.seed.or(scenario_seed).unwrap_or(verify::DEFAULT_SEED),
            );
            config.force_identical = args.force_identical;
            if args.sequential {
                config.execution = Execution::Sequential;
            }
            let summary = cmd_certify(&config, args.out.as_deref())?;
            emit(&summary, quiet)?;
            match summary.disagreements {
                0 => Ok(()),
                n => Err(CliError::Disagreements(n)),
            }
        }
    }
}

fn sweep_command(args: &SweepArgs, preset: Option<SweepMode>, quiet: bool) -> Result<(), CliError> {
    let mut scenario = Scenario::load(&args.scenario)?;
    apply_tau(&mut scenario, args.tau)?;
    if let Some(mode) = preset {
        scenario.mode = Some(mode);
    }
    if let Some(points) = args.points {
        scenario.sweep = Some(match scenario.sweep {
            Some(s) => SweepSpec::new(s.axis, s.from, s.to, points)?,
            None => SweepSpec::full_period(points)?,
        });
    }
    note_soft_bound(&scenario, quiet);
    let (text, report) = cmd_sweep(&scenario)?;
    write_output(&args.out, &text)?;
    let report = SweepReport {
        out: args.out.display().to_string(),
        ..report
    };
    emit(&report, quiet)
}

fn apply_tau(scenario: &mut Scenario, tau: Option<f64>) -> Result<(), CliError> {
    if let Some(tau) = tau {
        scenario.coupling = CouplingSpec::new(tau)?;
    }
    Ok(())
}

fn note_soft_bound(scenario: &Scenario, quiet: bool) {
    if scenario.exceeds_soft_bound() && !quiet {
        eprintln!(
            "note: squeezing above r = {} is outside the validated range",
            scenario::SOFT_R_MAX
        );
    }
}

fn emit<T: Serialize>(value: &T, quiet: bool) -> Result<(), CliError> {
    if !quiet {
        let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
        println!("{text}");
    }
    Ok(())
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

fn evaluate(s: &Scenario, mode: Option<SweepMode>) -> Result<SweepSample, CliError> {
    let sample = match mode {
        Some(SweepMode::Theorem) => verify::check_theorem(&s.state1, &s.state2, s.coupling)?,
        Some(SweepMode::Corollary) => verify::check_corollary(&s.state1, &s.state2, s.coupling)?,
        Some(SweepMode::IoFidelity) | None => verify::check(&s.state1, &s.state2, s.coupling)?,
    };
    Ok(sample)
}

/// Without an explicit mode, displaced inputs take the corollary path.
fn effective_mode(s: &Scenario) -> SweepMode {
    s.mode
        .unwrap_or(if s.state1.has_zero_mean() && s.state2.has_zero_mean() {
            SweepMode::Theorem
        } else {
            SweepMode::Corollary
        })
}

/// Input–output thresholds are undefined without interaction.
fn require_interaction(s: &Scenario) -> Result<(), CliError> {
    if s.coupling.is_trivial() {
        return Err(CliError::Domain(format!(
            "io-fidelity thresholds need 0 < tau < 1, got {}",
            s.coupling.tau()
        )));
    }
    Ok(())
}

pub fn cmd_check(s: &Scenario) -> Result<CheckReport, CliError> {
    let sample = evaluate(s, s.mode)?;
    let io_fidelity = match s.mode {
        Some(SweepMode::IoFidelity) => {
            require_interaction(s)?;
            Some(verify::io_fidelity_thresholds(&s.state1, &s.state2, s.coupling)?)
        }
        _ => None,
    };
    Ok(CheckReport {
        mode: effective_mode(s),
        tau: sample.tau,
        fidelity: sample.fidelity,
        threshold: sample.threshold,
        lambda_tilde: sample.lambda_tilde,
        entangled: sample.verdict_simon,
        margin: sample.margin(),
        boundary_excluded: sample.boundary_excluded,
        verdict_fidelity: sample.verdict_fidelity,
        note: sample.no_interaction.then_some("no-interaction"),
        io_fidelity,
    })
}

/// CSV text plus a summary; the summary's `out` field is left empty.
fn cmd_sweep(s: &Scenario) -> Result<(String, SweepReport), CliError> {
    let spec = s
        .sweep
        .ok_or_else(|| CliError::Input("scenario has no `sweep` block (or pass --points)".into()))?;
    let mode = effective_mode(s);
    let io = mode == SweepMode::IoFidelity;
    let io_fidelity = if io {
        require_interaction(s)?;
        Some(verify::io_fidelity_thresholds(&s.state1, &s.state2, s.coupling)?)
    } else {
        None
    };
    let rows = verify::sweep(&s.state1, &s.state2, s.coupling, &spec, mode, Execution::default())?;
    let report = SweepReport {
        rows: rows.len(),
        entangled_rows: rows.iter().filter(|r| r.sample.verdict_simon).count(),
        out: String::new(),
        io_fidelity,
    };
    Ok((csv::sweep_csv(&rows, io), report))
}

/// Sweep CSV for a scenario, as written by `sweep` / `io-fidelity`.
pub fn sweep_to_csv(s: &Scenario) -> Result<String, CliError> {
    cmd_sweep(s).map(|(text, _)| text)
}

pub fn cmd_certify(config: &CertifyConfig, out: Option<&Path>) -> Result<CertifySummary, CliError> {
    let outcome = verify::certify(config)?;
    if let Some(path) = out {
        write_output(path, &csv::certify_csv(&outcome.records))?;
    }
    Ok(outcome.summary)
}
