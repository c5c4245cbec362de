//! JSON and CSV serialization of suite reports and certificates.
//!
//! Reals are written with 17 significant digits; non-finite reals become `null`. Field order is
//! fixed, so identical runs serialize identically apart from `runtime_ms`.

use alpha_ineq::catalog::Instance;
use alpha_ineq::certifier::EqualityCertificate;
use alpha_ineq::harness::{ShrinkOutcome, SuiteReport, Trial};
use alpha_ineq::{AlphaPolicy, Exponents, InstanceSpec, TolerancePolicy, Verdict};
use serde::ser::Serializer;
use serde::Serialize;
use serde_json::value::RawValue;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format_real(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn reals(v: &[f64]) -> Vec<Real> {
    v.iter().copied().map(Real).collect()
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlphaPolicyJson {
    Fixed { alpha: Real },
    Sampled,
}

impl From<AlphaPolicy> for AlphaPolicyJson {
    fn from(p: AlphaPolicy) -> Self {
        match p {
            AlphaPolicy::Fixed(d) => AlphaPolicyJson::Fixed { alpha: Real(d.alpha()) },
            AlphaPolicy::Sampled => AlphaPolicyJson::Sampled,
        }
    }
}

#[derive(Serialize)]
pub struct ToleranceJson {
    pub rel: Real,
    pub eq: Real,
}

impl From<TolerancePolicy> for ToleranceJson {
    fn from(t: TolerancePolicy) -> Self {
        ToleranceJson { rel: Real(t.tol_rel), eq: Real(t.tol_eq) }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceJson {
    Bernoulli { y: Real, m: Real },
    Young { a: Real, b: Real },
    Nary { a: Vec<Real> },
    Paired { x: Vec<Real>, y: Vec<Real> },
    Multi { rows: Vec<Vec<Real>> },
    Radon { x: Vec<Real>, y: Vec<Real>, r: Real },
}

impl From<&Instance> for InstanceJson {
    fn from(i: &Instance) -> Self {
        match i {
            Instance::Bernoulli(b) => InstanceJson::Bernoulli { y: Real(b.y), m: Real(b.m) },
            Instance::Young(y) => InstanceJson::Young { a: Real(y.a), b: Real(y.b) },
            Instance::NaryYoung(a) => InstanceJson::Nary { a: reals(&a.a) },
            Instance::Paired(p) => InstanceJson::Paired { x: reals(&p.x), y: reals(&p.y) },
            Instance::Multi(m) => InstanceJson::Multi { rows: m.rows.iter().map(|r| reals(r)).collect() },
            Instance::Radon(r) => InstanceJson::Radon { x: reals(&r.x), y: reals(&r.y), r: Real(r.r) },
        }
    }
}

#[derive(Serialize)]
pub struct ExponentsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<Real>>,
}

impl From<&Exponents> for ExponentsJson {
    fn from(e: &Exponents) -> Self {
        let mut out = ExponentsJson { p: None, q: None, r: None, exponents: None };
        match e {
            Exponents::None => {}
            Exponents::Pair(pair) => {
                out.p = Some(Real(pair.p()));
                out.q = Some(Real(pair.q()));
            }
            Exponents::Tuple(t) => out.exponents = Some(reals(t.exponents())),
            Exponents::Power(p) => out.p = Some(Real(*p)),
            Exponents::PowerRatio { p, r } => {
                out.p = Some(Real(*p));
                out.r = Some(Real(*r));
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct SpecJson {
    pub alpha: Real,
    pub instance: InstanceJson,
}

impl From<&InstanceSpec> for SpecJson {
    fn from(s: &InstanceSpec) -> Self {
        SpecJson { alpha: Real(s.dim.alpha()), instance: (&s.instance).into() }
    }
}

#[derive(Serialize)]
pub struct TrialJson {
    pub index: u64,
    pub alpha: Real,
    pub instance: InstanceJson,
    pub exponents: ExponentsJson,
}

impl From<&Trial> for TrialJson {
    fn from(t: &Trial) -> Self {
        TrialJson {
            index: t.index,
            alpha: Real(t.spec.dim.alpha()),
            instance: (&t.spec.instance).into(),
            exponents: (&t.exponents).into(),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub lhs: Real,
    pub rhs: Real,
    pub gap: Real,
    pub rel_gap: Real,
    pub scale: Real,
    pub direction: String,
    pub status: &'static str,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            lhs: Real(v.lhs),
            rhs: Real(v.rhs),
            gap: Real(v.gap),
            rel_gap: Real(v.rel_gap),
            scale: Real(v.scale),
            direction: v.direction.to_string(),
            status: v.status.as_str(),
        }
    }
}

#[derive(Serialize)]
pub struct CounterexampleJson {
    pub shrink_steps: usize,
    pub instance: TrialJson,
    pub verdict: VerdictJson,
}

#[derive(Serialize)]
pub struct ResultsJson {
    pub holds: usize,
    pub equality: usize,
    pub violations: usize,
    /// Smallest `gap / scale` over the trials.
    pub min_gap: Real,
    pub worst_instance: TrialJson,
    pub worst_verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
}

#[derive(Serialize)]
pub struct SuiteJson {
    pub inequality: &'static str,
    pub variant: &'static str,
    pub regime: &'static str,
    pub alpha_policy: AlphaPolicyJson,
    pub trials: usize,
    pub tolerance: ToleranceJson,
    pub seed: u64,
    pub status: &'static str,
    pub results: ResultsJson,
    pub runtime_ms: u128,
}

pub fn suite_status(r: &SuiteReport) -> &'static str {
    if r.violations == 0 {
        "verified"
    } else {
        "violated"
    }
}

impl SuiteJson {
    pub fn new(r: &SuiteReport, shrunk: Option<&ShrinkOutcome>) -> Self {
        SuiteJson {
            inequality: r.id.as_str(),
            variant: r.variant.as_str(),
            regime: r.regime.as_str(),
            alpha_policy: r.alpha.into(),
            trials: r.trials,
            tolerance: r.tol.into(),
            seed: r.seed,
            status: suite_status(r),
            results: ResultsJson {
                holds: r.holds,
                equality: r.equality,
                violations: r.violations,
                min_gap: Real(r.min_gap),
                worst_instance: (&r.worst).into(),
                worst_verdict: (&r.worst_verdict).into(),
                counterexample: shrunk.map(|s| CounterexampleJson {
                    shrink_steps: s.steps,
                    instance: (&s.trial).into(),
                    verdict: (&s.verdict).into(),
                }),
            },
            runtime_ms: r.runtime_ms,
        }
    }
}

/// Aggregate of a batch of certificates.
pub struct CertifySummary {
    pub id: &'static str,
    pub regime: &'static str,
    pub alpha_policy: AlphaPolicy,
    pub seed: u64,
    pub restarts: usize,
    pub budget: usize,
    pub certificates: Vec<EqualityCertificate>,
    pub manifold_max_gap: f64,
    pub strict: usize,
    pub runtime_ms: u128,
}

impl CertifySummary {
    pub fn converged(&self) -> usize {
        self.certificates.iter().filter(|c| c.converged).count()
    }

    pub fn consistent(&self) -> usize {
        self.certificates.iter().filter(|c| c.converged && c.consistent()).count()
    }

    pub fn passed(&self) -> bool {
        let n = self.certificates.len();
        self.consistent() == n && self.strict == n && self.manifold_max_gap <= alpha_ineq::certifier::CONVERGENCE_TOL
    }

    /// The certificate furthest from passing: unconverged first (largest gap), then largest residual.
    pub fn worst(&self) -> Option<&EqualityCertificate> {
        self.certificates.iter().max_by(|a, b| {
            let key = |c: &EqualityCertificate| (!c.converged, c.relative_gap.abs(), c.condition_residual);
            let (ka, kb) = (key(a), key(b));
            ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.total_cmp(&kb.2))
        })
    }
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub exponents: ExponentsJson,
    pub alpha: Real,
    pub argmin: Vec<Real>,
    pub lhs: Real,
    pub rhs: Real,
    pub gap_at_argmin: Real,
    pub relative_gap: Real,
    pub condition_residual: Real,
    pub evaluations: usize,
    pub restart: usize,
    pub converged: bool,
}

impl From<&EqualityCertificate> for CertificateJson {
    fn from(c: &EqualityCertificate) -> Self {
        CertificateJson {
            exponents: (&c.params.exponents).into(),
            alpha: Real(c.params.dim.alpha()),
            argmin: reals(&c.argmin),
            lhs: Real(c.lhs),
            rhs: Real(c.rhs),
            gap_at_argmin: Real(c.gap_at_argmin),
            relative_gap: Real(c.relative_gap),
            condition_residual: Real(c.condition_residual),
            evaluations: c.evaluations,
            restart: c.restart,
            converged: c.converged,
        }
    }
}

#[derive(Serialize)]
pub struct CertifyResultsJson {
    pub parameter_sets: usize,
    pub converged: usize,
    pub consistent: usize,
    pub strict: usize,
    pub manifold_max_gap: Real,
    pub worst_certificate: Option<CertificateJson>,
}

#[derive(Serialize)]
pub struct CertifyJson {
    pub inequality: &'static str,
    pub variant: &'static str,
    pub regime: &'static str,
    pub alpha_policy: AlphaPolicyJson,
    pub trials: usize,
    pub restarts: usize,
    pub budget: usize,
    pub seed: u64,
    pub status: &'static str,
    pub results: CertifyResultsJson,
    pub runtime_ms: u128,
}

impl From<&CertifySummary> for CertifyJson {
    fn from(s: &CertifySummary) -> Self {
        CertifyJson {
            inequality: s.id,
            variant: "normalized",
            regime: s.regime,
            alpha_policy: s.alpha_policy.into(),
            trials: s.certificates.len(),
            restarts: s.restarts,
            budget: s.budget,
            seed: s.seed,
            status: if s.passed() { "certified" } else { "not-certified" },
            results: CertifyResultsJson {
                parameter_sets: s.certificates.len(),
                converged: s.converged(),
                consistent: s.consistent(),
                strict: s.strict,
                manifold_max_gap: Real(s.manifold_max_gap),
                worst_certificate: s.worst().map(Into::into),
            },
            runtime_ms: s.runtime_ms,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}

const SUITE_COLUMNS: [&str; 16] = [
    "inequality",
    "variant",
    "regime",
    "alpha_policy",
    "alpha",
    "trials",
    "seed",
    "tol_rel",
    "tol_eq",
    "holds",
    "equality",
    "violations",
    "min_gap",
    "status",
    "worst_instance",
    "runtime_ms",
];

/// One CSV row per report; the worst instance is embedded as compact JSON.
pub fn suites_to_csv(reports: &[SuiteReport], shrunk: Option<&ShrinkOutcome>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = SUITE_COLUMNS.to_vec();
    if shrunk.is_some() {
        header.insert(15, "counterexample");
    }
    w.write_record(&header).expect("in-memory write");
    for r in reports {
        let (policy, alpha) = match r.alpha {
            AlphaPolicy::Fixed(d) => ("fixed", format_real(d.alpha())),
            AlphaPolicy::Sampled => ("sampled", String::new()),
        };
        let worst = serde_json::to_string(&TrialJson::from(&r.worst)).expect("serializable");
        let mut row = vec![
            r.id.as_str().to_string(),
            r.variant.as_str().to_string(),
            r.regime.as_str().to_string(),
            policy.to_string(),
            alpha,
            r.trials.to_string(),
            r.seed.to_string(),
            format_real(r.tol.tol_rel),
            format_real(r.tol.tol_eq),
            r.holds.to_string(),
            r.equality.to_string(),
            r.violations.to_string(),
            if r.min_gap.is_finite() { format_real(r.min_gap) } else { String::new() },
            suite_status(r).to_string(),
            worst,
        ];
        if let Some(s) = shrunk {
            row.push(serde_json::to_string(&TrialJson::from(&s.trial)).expect("serializable"));
        }
        row.push(r.runtime_ms.to_string());
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn certify_to_csv(s: &CertifySummary) -> String {
    let j = CertifyJson::from(s);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "inequality",
        "variant",
        "regime",
        "alpha_policy",
        "trials",
        "restarts",
        "budget",
        "seed",
        "converged",
        "consistent",
        "strict",
        "manifold_max_gap",
        "worst_residual",
        "status",
        "runtime_ms",
    ])
    .expect("in-memory write");
    let worst_residual = s.worst().map(|c| format_real(c.condition_residual)).unwrap_or_default();
    let policy = match s.alpha_policy {
        AlphaPolicy::Fixed(d) => format!("fixed:{}", format_real(d.alpha())),
        AlphaPolicy::Sampled => "sampled".into(),
    };
    w.write_record([
        j.inequality.to_string(),
        j.variant.to_string(),
        j.regime.to_string(),
        policy,
        j.trials.to_string(),
        j.restarts.to_string(),
        j.budget.to_string(),
        j.seed.to_string(),
        j.results.converged.to_string(),
        j.results.consistent.to_string(),
        j.results.strict.to_string(),
        format_real(s.manifold_max_gap),
        worst_residual,
        j.status.to_string(),
        j.runtime_ms.to_string(),
    ])
    .expect("in-memory write");
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
