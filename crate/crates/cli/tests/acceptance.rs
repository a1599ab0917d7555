//! Acceptance criteria 1–8, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use gaussmix::verify::{
    self, draw_sample, io_fidelity_thresholds, sample_rng, CertifyConfig, CheckKind, SampleRanges, SweepMode, SweepRow,
    SweepSpec,
};
use gaussmix::{
    fidelity_min_over_psi, fidelity_threshold, gaussian_fidelity, is_entangled, lambda_min_closed_form, mix,
    partial_transpose, psi_threshold, reduce, state_from_params, symplectic_eigenvalues, CouplingSpec, Execution,
    GaussianParams, Mode, PsiThreshold,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn tau(t: f64) -> CouplingSpec {
    CouplingSpec::new(t).unwrap()
}

fn reference_states() -> (GaussianParams, GaussianParams) {
    (
        GaussianParams::squeezed_thermal(0.5, 0.0, 0.2).unwrap(),
        GaussianParams::squeezed_thermal(0.7, 0.0, 0.3).unwrap(),
    )
}

fn theorem_certification() -> Verdict {
    let mut config = CertifyConfig::new(100_000, verify::DEFAULT_SEED);
    config.kinds = &[CheckKind::Theorem];
    config.execution = Execution::Sequential;
    let start = Instant::now();
    let summary = verify::certify(&config).unwrap().summary;
    let secs = start.elapsed().as_secs_f64();
    let excluded = summary.boundary_excluded_count as f64 / summary.evaluations as f64;
    verdict(
        summary.disagreements == 0 && excluded < 1e-3 && secs < 10.0,
        format!(
            "{} draws, {} disagreements, {:.4}% boundary-excluded, {secs:.2} s sequential",
            summary.evaluations,
            summary.disagreements,
            100.0 * excluded
        ),
    )
}

fn corollary_certification() -> Verdict {
    let mut config = CertifyConfig::new(10_000, verify::DEFAULT_SEED);
    config.kinds = &[CheckKind::Corollary];
    let summary = verify::certify(&config).unwrap().summary;

    let ranges = SampleRanges::default();
    let mut worst = 0.0f64;
    for i in 0..10_000u64 {
        let mut rng = sample_rng(verify::DEFAULT_SEED, i, CheckKind::Corollary);
        let (p1, p2, c) = draw_sample(&mut rng, &ranges, CheckKind::Corollary).unwrap();
        let (s1, s2) = (state_from_params(&p1), state_from_params(&p2));
        let displaced = is_entangled(&mix(&s1, &s2, c)).unwrap().lambda_tilde;
        let centered = is_entangled(&mix(&s1.centered(), &s2.centered(), c))
            .unwrap()
            .lambda_tilde;
        worst = worst.max((displaced - centered).abs());
    }
    verdict(
        summary.disagreements == 0 && worst < 1e-12,
        format!(
            "{} draws, {} disagreements, max |Δλ̃| with/without means {worst:.1e}",
            summary.evaluations, summary.disagreements
        ),
    )
}

/// Grid search followed by golden-section refinement around the best cell.
fn minimize_over_psi(f: impl Fn(f64) -> f64) -> f64 {
    const GRID: usize = 128;
    let h = TAU / GRID as f64;
    let best = (0..=GRID)
        .map(|i| (i, f(i as f64 * h)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let (mut a, mut b) = ((best.0 as f64 - 1.0) * h, (best.0 as f64 + 1.0) * h);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (b - inv_phi * (b - a), a + inv_phi * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            (b, d, fd) = (d, c, fc);
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            (a, c, fc) = (c, d, fd);
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    best.1.min(fc).min(fd)
}

fn closed_form_cross_checks() -> Verdict {
    let ranges = SampleRanges::default();
    let (mut worst_lambda, mut worst_fmin, mut worst_fe) = (0.0f64, 0.0f64, 0.0f64);
    let mut with_psi_e = 0;
    for i in 0..10_000u64 {
        let mut rng = sample_rng(0x00C1_05ED, i, CheckKind::Theorem);
        let (p1, p2, c) = draw_sample(&mut rng, &ranges, CheckKind::Theorem).unwrap();
        let (r1, r2, mu1, mu2, t) = (p1.r(), p2.r(), p1.purity(), p2.purity(), c.tau());
        let s1 = state_from_params(&p1.with_psi(0.0).unwrap());
        let s2_at = |psi: f64| state_from_params(&p2.with_psi(psi).unwrap());

        let lambda_direct = minimize_over_psi(|psi| is_entangled(&mix(&s1, &s2_at(psi), c)).unwrap().lambda_tilde);
        let fmin_direct = minimize_over_psi(|psi| gaussian_fidelity(&s1, &s2_at(psi)).unwrap().fidelity);
        worst_lambda = worst_lambda.max((lambda_min_closed_form(r1, r2, mu1, mu2, t).unwrap() - lambda_direct).abs());
        worst_fmin = worst_fmin.max((fidelity_min_over_psi(r1, r2, mu1, mu2).unwrap() - fmin_direct).abs());

        if let PsiThreshold::Critical(psi_e) = psi_threshold(r1, r2, mu1, mu2, t).unwrap() {
            with_psi_e += 1;
            let f_e = fidelity_threshold(mu1, mu2, t).unwrap().f_e;
            worst_fe = worst_fe.max((gaussian_fidelity(&s1, &s2_at(psi_e)).unwrap().fidelity - f_e).abs());
        }
    }
    verdict(
        worst_lambda < 1e-8 && worst_fmin < 1e-8 && worst_fe < 1e-9 && with_psi_e > 0,
        format!(
            "10000 sets: λ̃min {worst_lambda:.1e}, Fmin {worst_fmin:.1e}, F(ψe) vs Fe {worst_fe:.1e} over {with_psi_e} sets with ψe"
        ),
    )
}

fn special_values() -> Verdict {
    let taus: Vec<f64> = (1..=100).map(|k| k as f64 / 101.0).collect();
    let mus: Vec<f64> = (1..=20).map(|k| k as f64 / 20.0).collect();
    let f_e = |m1: f64, m2: f64, t: f64| fidelity_threshold(m1, m2, t).unwrap().f_e;
    let mut worst = 0.0f64;
    for &t in &taus {
        worst = worst.max((f_e(1.0, 1.0, t) - 1.0).abs());
        for &mu in &mus {
            let expected = 2f64.sqrt() * mu / (1.0 + mu * mu).sqrt();
            worst = worst.max((f_e(mu, 1.0, t) - expected).abs());
            worst = worst.max((f_e(mu, 1.0, t) - f_e(mu, 1.0, 0.5)).abs());
            for &nu in &mus {
                worst = worst.max((f_e(mu, nu, t) - f_e(nu, mu, t)).abs());
                worst = worst.max((f_e(mu, nu, t) - f_e(mu, nu, 1.0 - t)).abs());
            }
        }
    }
    verdict(
        worst < 1e-12,
        format!("100 τ values, 20×20 purities: max deviation {worst:.1e}"),
    )
}

fn physics_regression() -> Verdict {
    let mut epr = 0.0f64;
    for r in [0.1, 0.5, 1.0] {
        let s1 = state_from_params(&GaussianParams::squeezed_thermal(r, 0.0, 0.0).unwrap());
        let s2 = state_from_params(&GaussianParams::squeezed_thermal(r, PI, 0.0).unwrap());
        let (lo, hi) = symplectic_eigenvalues(&partial_transpose(&mix(&s1, &s2, tau(0.5)))).unwrap();
        epr = epr
            .max((lo - (-2.0 * r).exp() / 2.0).abs())
            .max((hi - (2.0 * r).exp() / 2.0).abs());
    }

    let grid = [0.0, 0.1, 0.5, 1.0, 3.0];
    let mut thermal_entangled = 0;
    for n1 in grid {
        for n2 in grid {
            for t in [0.01, 0.2, 0.5, 0.7, 0.99] {
                let s1 = state_from_params(&GaussianParams::thermal(n1).unwrap());
                let s2 = state_from_params(&GaussianParams::thermal(n2).unwrap());
                if is_entangled(&mix(&s1, &s2, tau(t))).unwrap().entangled {
                    thermal_entangled += 1;
                }
            }
        }
    }

    let mut cross_nonzero = 0;
    let mut reduce_err = 0.0f64;
    for (r, psi, n) in [(0.0, 0.0, 0.0), (0.3, 1.1, 0.4), (1.2, 4.0, 2.0), (2.0, 6.0, 0.0)] {
        let s = state_from_params(&GaussianParams::squeezed_thermal(r, psi, n).unwrap());
        for t in [0.1, 0.5, 0.77] {
            let out = mix(&s, &s, tau(t));
            if out.sigma12().iter().any(|&x| x != 0.0) {
                cross_nonzero += 1;
            }
            for m in [Mode::One, Mode::Two] {
                let back = reduce(&out, m);
                reduce_err = reduce_err
                    .max((back.cm() - s.cm()).amax())
                    .max((back.mean() - s.mean()).amax());
            }
        }
    }
    verdict(
        epr < 1e-10 && thermal_entangled == 0 && cross_nonzero == 0 && reduce_err < 1e-14,
        format!(
            "EPR spectrum error {epr:.1e}, {thermal_entangled}/125 thermal pairs entangled, \
             {cross_nonzero} nonzero Σ12, reduce() error {reduce_err:.1e}"
        ),
    )
}

fn reference_sweep(t: f64, mode: SweepMode) -> Vec<SweepRow> {
    let (p1, p2) = reference_states();
    let spec = SweepSpec::full_period(1000).unwrap();
    verify::sweep(&p1, &p2, tau(t), &spec, mode, Execution::default()).unwrap()
}

fn first_and_last(flags: impl Iterator<Item = bool>) -> Option<(usize, usize)> {
    let idx: Vec<usize> = flags.enumerate().filter(|(_, f)| *f).map(|(i, _)| i).collect();
    Some((*idx.first()?, *idx.last()?))
}

fn within_one(a: Option<(usize, usize)>, b: Option<(usize, usize)>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a.0.abs_diff(b.0) <= 1 && a.1.abs_diff(b.1) <= 1,
        _ => false,
    }
}

fn phase_sweep_shape() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut entangled_sets = Vec::new();
    for t in [0.5, 0.8] {
        let rows = reference_sweep(t, SweepMode::Theorem);
        let n = rows.len();
        let upper = rows.iter().take_while(|r| r.psi <= PI).collect::<Vec<_>>();
        let monotone = upper.windows(2).all(|w| {
            w[1].sample.fidelity <= w[0].sample.fidelity + 1e-12
                && w[1].sample.lambda_tilde <= w[0].sample.lambda_tilde + 1e-12
        });
        let symmetric = (0..n).all(|i| {
            let (a, b) = (&rows[i].sample, &rows[n - 1 - i].sample);
            (a.fidelity - b.fidelity).abs() < 1e-10 && (a.lambda_tilde - b.lambda_tilde).abs() < 1e-10
        });
        let by_fidelity = first_and_last(rows.iter().map(|r| r.sample.fidelity < r.sample.threshold.unwrap()));
        let by_simon = first_and_last(rows.iter().map(|r| r.sample.lambda_tilde < 0.5));
        let crossing = within_one(by_fidelity, by_simon);
        ok &= monotone && symmetric && crossing;
        notes.push(format!(
            "τ={t}: monotone {monotone}, symmetric {symmetric}, crossings {by_fidelity:?}/{by_simon:?}"
        ));
        entangled_sets.push(rows.iter().map(|r| r.sample.verdict_simon).collect::<Vec<_>>());
    }
    let (wide, narrow) = (&entangled_sets[0], &entangled_sets[1]);
    let contained = narrow.iter().zip(wide).all(|(n, w)| !n || *w);
    let strict = wide.iter().filter(|x| **x).count() > narrow.iter().filter(|x| **x).count();
    ok &= contained && strict;
    notes.push(format!(
        "τ=0.5 interval strictly contains τ=0.8: {}",
        contained && strict
    ));
    verdict(ok, notes.join("; "))
}

fn io_thresholds() -> Verdict {
    let (p1, p2) = reference_states();
    let report = io_fidelity_thresholds(&p1, &p2, tau(0.8)).unwrap();
    let (Some(thresholds), Some(psi_e)) = (report.thresholds, report.psi_e_numeric) else {
        return verdict(false, "no numeric ψe".into());
    };
    let rows = reference_sweep(0.8, SweepMode::IoFidelity);
    let step = rows[1].psi - rows[0].psi;
    let expected = (psi_e / step).ceil() as usize;
    let crossings: Vec<Option<usize>> = thresholds
        .iter()
        .enumerate()
        .map(|(k, th)| rows.iter().position(|r| r.io_fidelities.unwrap()[k] < *th))
        .collect();
    let crossing_ok = crossings.iter().all(|c| c.is_some_and(|c| c.abs_diff(expected) <= 1));
    let sweep_mismatches = rows
        .iter()
        .filter(|r| (r.sample.lambda_tilde - 0.5).abs() >= verify::LAMBDA_BAND)
        .filter(|r| {
            let simon = r.sample.lambda_tilde < 0.5;
            r.io_fidelities
                .unwrap()
                .iter()
                .zip(&thresholds)
                .any(|(f, th)| (f < th) != simon)
        })
        .count();
    verdict(
        crossing_ok && report.sign_mismatches == 0 && report.grid_points >= 1000 && sweep_mismatches == 0,
        format!(
            "ψe_numeric {psi_e:.9}, crossing indices {crossings:?} vs {expected}, \
             sign mismatches {} on {} points ({} excluded), {sweep_mismatches} on the 1000-point sweep",
            report.sign_mismatches, report.grid_points, report.boundary_excluded_points
        ),
    )
}

fn run_twice(dir: &Path, name: &str, args: &[&str], scenario: Option<&Path>) -> (bool, usize) {
    let out = dir.join(name);
    let once = || {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gaussmix"));
        cmd.env_remove("GAUSSMIX_SEED").args(args).arg("--out").arg(&out);
        if let Some(s) = scenario {
            cmd.arg("--scenario").arg(s);
        }
        let o = cmd.output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (o.stdout, std::fs::read(&out).unwrap())
    };
    let (a, b) = (once(), once());
    (a == b, a.1.len())
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let (certify_same, certify_len) = run_twice(
        dir.path(),
        "c.csv",
        &["certify", "--samples", "5000", "--seed", "17"],
        None,
    );
    let (sweep_same, sweep_len) = run_twice(
        dir.path(),
        "s.csv",
        &["io-fidelity", "--points", "1000"],
        Some(&golden.join("io_sweep_tau08.json")),
    );
    verdict(
        certify_same && sweep_same,
        format!(
            "certify CSV ({certify_len} bytes) identical: {certify_same}; io sweep CSV ({sweep_len} bytes) identical: {sweep_same}"
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("theorem certification", theorem_certification),
        ("corollary certification", corollary_certification),
        ("closed-form cross-checks", closed_form_cross_checks),
        ("threshold special values", special_values),
        ("physics regression", physics_regression),
        ("phase sweep shape", phase_sweep_shape),
        ("input-output thresholds", io_thresholds),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "[{}] {}. {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
