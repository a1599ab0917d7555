//! CSV emission for sweeps and certification runs.

use std::fmt::Write as _;

use gaussmix::verify::{CertifyRecord, CheckKind, SweepRow};
use gaussmix::GaussianParams;

pub const SWEEP_HEADER: &str = "psi,tau,fidelity,threshold,lambda_tilde,entangled";
pub const IO_HEADER: &str = "f_io_11,f_io_12,f_io_21,f_io_22";
pub const CERTIFY_HEADER: &str = "index,kind,\
alpha1_re,alpha1_im,r1,psi1,n1,alpha2_re,alpha2_im,r2,psi2,n2,tau,\
fidelity,threshold,lambda_tilde,verdict_fidelity,verdict_simon,boundary_excluded,disagreement";

/// Twelve significant digits, `%.12g` style.
pub fn fmt_g(x: f64) -> String {
    const DIGITS: i32 = 12;
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_g).unwrap_or_default()
}

pub fn sweep_csv(rows: &[SweepRow], io: bool) -> String {
    let mut out = String::from(SWEEP_HEADER);
    if io {
        out.push(',');
        out.push_str(IO_HEADER);
    }
    out.push('\n');
    for row in rows {
        let s = &row.sample;
        write!(
            out,
            "{},{},{},{},{},{}",
            fmt_g(row.psi),
            fmt_g(row.tau),
            fmt_g(s.fidelity),
            opt(s.threshold),
            fmt_g(s.lambda_tilde),
            s.verdict_simon
        )
        .unwrap();
        if io {
            for f in row.io_fidelities.unwrap_or([f64::NAN; 4]) {
                write!(out, ",{}", fmt_g(f)).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

fn params(out: &mut String, p: &GaussianParams) {
    for x in [p.alpha_re(), p.alpha_im(), p.r(), p.psi(), p.n_th()] {
        write!(out, ",{}", fmt_g(x)).unwrap();
    }
}

pub fn certify_csv(records: &[CertifyRecord]) -> String {
    let mut out = String::from(CERTIFY_HEADER);
    out.push('\n');
    for rec in records {
        let s = &rec.sample;
        let kind = match rec.kind {
            CheckKind::Theorem => "theorem",
            CheckKind::Corollary => "corollary",
        };
        write!(out, "{},{kind}", rec.index).unwrap();
        params(&mut out, &s.params1);
        params(&mut out, &s.params2);
        writeln!(
            out,
            ",{},{},{},{},{},{},{},{}",
            fmt_g(s.tau),
            fmt_g(s.fidelity),
            opt(s.threshold),
            fmt_g(s.lambda_tilde),
            s.verdict_fidelity,
            s.verdict_simon,
            s.boundary_excluded,
            s.is_disagreement()
        )
        .unwrap();
    }
    out
}
