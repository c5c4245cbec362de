//! Command-line front end: suites, α-sweeps, certification, counterexample search and reports.
//!
//! Exit codes: 0 when everything verified (or certified), 1 when a violation or a failed
//! certification was found, 2 on usage, ingestion or I/O errors.

// `!(x >= 0.0)` guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod ingest;
pub mod report;

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use alpha_ineq::certifier::{
    check_equality_manifold, halton, manifold_draws, manifold_point, minimize_gap, perturb_check, CertParams, Region,
};
use alpha_ineq::harness::{run_suite, run_trials, shrink, sweep_alpha, SuiteConfig, Trial};
use alpha_ineq::{AlphaPolicy, ConjugatePair, Error, ExponentTuple, Exponents, InequalityId, Result, SuiteReport};

pub use args::{parse_args, AlphaMode, Format, Mode, ParseFailure, RunConfig};
use report::{CertifySummary, SuiteJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The rendered report and the exit code it implies.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

/// Exponents for instances read from a file, taken from the flags.
fn file_exponents(cfg: &SuiteConfig) -> Result<Exponents> {
    let p = &cfg.params;
    let need = |name: &str| Error::Usage(format!("{} instances from a file need --{name}", cfg.id));
    Ok(match cfg.id {
        InequalityId::Bernoulli => Exponents::None,
        InequalityId::Young | InequalityId::Holder => {
            let pp = p.p.ok_or_else(|| need("p"))?;
            Exponents::Pair(match p.q {
                Some(q) => ConjugatePair::new(pp, q)?,
                None => ConjugatePair::from_p(pp)?,
            })
        }
        InequalityId::NaryYoung | InequalityId::HolderMulti => {
            Exponents::Tuple(ExponentTuple::new(p.exponents.clone().ok_or_else(|| need("exponents"))?)?)
        }
        InequalityId::Minkowski | InequalityId::MinkowskiMulti | InequalityId::Radon => {
            Exponents::Power(p.p.ok_or_else(|| need("p"))?)
        }
        InequalityId::RadonMulti => {
            Exponents::PowerRatio { p: p.p.ok_or_else(|| need("p"))?, r: p.r.ok_or_else(|| need("r"))? }
        }
    })
}

fn verify_file(cfg: &RunConfig, path: &Path) -> Result<SuiteReport> {
    let suite = &cfg.suite;
    let fixed = match cfg.alpha {
        AlphaMode::Fixed(d) => Some(d),
        _ => None,
    };
    let loaded = ingest::load_instances(path, suite.id, fixed, suite.params.r)?;
    let exponents = file_exponents(suite)?;
    let trials: Vec<Trial> = loaded
        .into_iter()
        .map(|l| {
            let t = Trial { index: l.line, spec: l.spec, exponents: exponents.clone() };
            t.evaluate(suite.id, suite.variant, &suite.tol)
                .map(|_| t)
                .map_err(|e| Error::Usage(format!("line {}: {e}", l.line)))
        })
        .collect::<Result<_>>()?;
    let mut report = run_trials(suite, &trials)?;
    report.alpha = fixed.map_or(AlphaPolicy::Sampled, AlphaPolicy::Fixed);
    Ok(report)
}

fn render_suites(cfg: &RunConfig, reports: &[SuiteReport], grid: bool) -> String {
    match cfg.format {
        Format::Json if grid => report::to_json(&reports.iter().map(|r| SuiteJson::new(r, None)).collect::<Vec<_>>()),
        Format::Json => report::to_json(&SuiteJson::new(&reports[0], None)),
        Format::Csv => report::suites_to_csv(reports, None),
    }
}

fn certify(cfg: &RunConfig) -> Result<CertifySummary> {
    let start = Instant::now();
    let s = &cfg.suite;
    let mut certificates = Vec::with_capacity(s.trials);
    let (mut manifold_max_gap, mut strict) = (0.0f64, 0usize);
    for i in 0..s.trials as u64 {
        let mut params = CertParams::sample(s.id, s.regime, s.seed, i)?;
        if let AlphaPolicy::Fixed(d) = s.alpha {
            params.dim = d;
        }
        params.n = cfg.n.unwrap_or(params.n);
        params.m = cfg.m.unwrap_or(params.m);
        let o = &s.params;
        params.exponents = match (&params.exponents, o.p, o.q, o.r, &o.exponents) {
            (Exponents::Pair(_), Some(p), q, _, _) => {
                Exponents::Pair(q.map_or_else(|| ConjugatePair::from_p(p), |q| ConjugatePair::new(p, q))?)
            }
            (Exponents::Power(_), Some(p), _, _, _) => Exponents::Power(p),
            (Exponents::PowerRatio { p, r }, po, _, ro, _) => {
                Exponents::PowerRatio { p: po.unwrap_or(*p), r: ro.unwrap_or(*r) }
            }
            (Exponents::Tuple(_), _, _, _, Some(list)) => Exponents::Tuple(ExponentTuple::new(list.clone())?),
            (e, ..) => e.clone(),
        };
        manifold_max_gap = manifold_max_gap.max(check_equality_manifold(s.id, &params, 16)?);
        let d = manifold_draws(s.id, &params)?;
        let point = manifold_point(s.id, &params, &halton(i + 1, d))?;
        strict += perturb_check(s.id, &params, &point, 0.01)? as usize;
        certificates.push(minimize_gap(s.id, &params, Region::default(), cfg.restarts, cfg.budget)?);
    }
    Ok(CertifySummary {
        id: s.id.as_str(),
        regime: s.regime.as_str(),
        alpha_policy: s.alpha,
        seed: s.seed,
        restarts: cfg.restarts,
        budget: cfg.budget,
        certificates,
        manifold_max_gap,
        strict,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Runs a parsed configuration and renders its report.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let found = |bad: bool| if bad { EXIT_FOUND } else { EXIT_OK };
    match cfg.mode {
        Mode::Verify | Mode::Sweep => {
            let (reports, grid) = match (&cfg.alpha, &cfg.input) {
                (AlphaMode::Grid(grid), _) => (sweep_alpha(&cfg.suite, grid)?, true),
                (_, Some(path)) => (vec![verify_file(cfg, path)?], false),
                _ => (vec![run_suite(&cfg.suite)?], false),
            };
            let bad = reports.iter().any(|r| r.violations > 0);
            Ok(Outcome { body: render_suites(cfg, &reports, grid), code: found(bad) })
        }
        Mode::Counterexample => {
            let report = run_suite(&cfg.suite)?;
            let shrunk = if report.violations > 0 {
                Some(shrink(cfg.suite.id, cfg.suite.variant, &cfg.suite.tol, &report.worst)?)
            } else {
                None
            };
            let body = match cfg.format {
                Format::Json => report::to_json(&SuiteJson::new(&report, shrunk.as_ref())),
                Format::Csv => report::suites_to_csv(std::slice::from_ref(&report), shrunk.as_ref()),
            };
            Ok(Outcome { body, code: found(shrunk.is_some()) })
        }
        Mode::Certify => {
            let summary = certify(cfg)?;
            let body = match cfg.format {
                Format::Json => report::to_json(&report::CertifyJson::from(&summary)),
                Format::Csv => report::certify_to_csv(&summary),
            };
            Ok(Outcome { body, code: found(!summary.passed()) })
        }
    }
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(cfg) => cfg,
        Err(ParseFailure::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
        Err(ParseFailure::Config(e)) => {
            let _ = writeln!(stderr, "{e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(outcome.body.as_bytes()).map_err(|e| format!("cannot write to stdout: {e}")),
    };
    match written {
        Ok(()) => outcome.code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
