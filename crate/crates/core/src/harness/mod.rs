//! Seeded batch verification.
//!
//! Each trial draws a regime-valid instance from its own counter-derived
//! generator, evaluates it, and the suite aggregates statuses by trial index.

mod sample;
mod seed;
mod shrink;

use std::fmt;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

pub use sample::{sample_conjugate_pair, sample_dimension, sample_exponent_tuple, sample_magnitudes, EXPONENT_MARGIN};
pub use seed::{mix64, open_unit, trial_rng, trial_seed};
pub use shrink::{instance_size, shrink, ShrinkOutcome, MAX_SHRINK_STEPS};

use crate::alpha::Dimension;
use crate::catalog::{
    check_ratio_exponents, evaluate, Bernoulli, ConjugatePair, ExponentTuple, Exponents, FormVariant, InequalityId,
    Instance, InstanceSpec, Multi, NaryYoung, Paired, Radon, Regime, Status, TolerancePolicy, Verdict, Young,
};
use crate::error::{Error, Result};

/// How each trial picks its dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaPolicy {
    Fixed(Dimension),
    Sampled,
}

impl fmt::Display for AlphaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaPolicy::Fixed(d) => write!(f, "fixed:{d}"),
            AlphaPolicy::Sampled => f.write_str("sampled"),
        }
    }
}

/// Where Bernoulli's `y` is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BernoulliDomain {
    /// The full magnitude range.
    #[default]
    Full,
    /// `y ∈ [lo, 1)`.
    BelowOne,
    /// `y ∈ [1, hi]`.
    AtLeastOne,
}

/// Fixed exponent overrides; anything left `None` is sampled per trial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamOverrides {
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub exponents: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleRanges {
    pub lo: f64,
    pub hi: f64,
    pub max_len: usize,
    pub max_cols: usize,
    pub p_max: f64,
    /// Probability of zeroing an entry; applied only where zeros are admissible.
    pub zero_fraction: f64,
}

impl SampleRanges {
    pub fn for_id(id: InequalityId) -> Self {
        let max_len = match id {
            InequalityId::Radon | InequalityId::RadonMulti => 16,
            _ => 8,
        };
        SampleRanges { lo: 1e-3, hi: 1e3, max_len, max_cols: 4, p_max: 8.0, zero_fraction: 0.05 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub id: InequalityId,
    pub variant: FormVariant,
    pub regime: Regime,
    pub trials: usize,
    pub seed: u64,
    pub tol: TolerancePolicy,
    pub alpha: AlphaPolicy,
    pub params: ParamOverrides,
    pub ranges: SampleRanges,
    pub bernoulli_domain: BernoulliDomain,
}

impl SuiteConfig {
    pub fn new(id: InequalityId, regime: Regime) -> Self {
        SuiteConfig {
            id,
            variant: FormVariant::Normalized,
            regime,
            trials: 1000,
            seed: 0,
            tol: TolerancePolicy::default(),
            alpha: AlphaPolicy::Sampled,
            params: ParamOverrides::default(),
            ranges: SampleRanges::for_id(id),
            bernoulli_domain: BernoulliDomain::Full,
        }
    }

    pub fn variant(mut self, variant: FormVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn alpha(mut self, alpha: AlphaPolicy) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn params(mut self, params: ParamOverrides) -> Self {
        self.params = params;
        self
    }

    pub fn bernoulli_domain(mut self, domain: BernoulliDomain) -> Self {
        self.bernoulli_domain = domain;
        self
    }

    /// Checks that every trial this configuration can generate is regime-valid.
    pub fn validate(&self) -> Result<()> {
        let id = self.id;
        id.check_variant(self.variant)?;
        if !id.regimes().contains(&self.regime) {
            return Err(Error::Usage(format!("{id} has no {} regime", self.regime)));
        }
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        let r = &self.ranges;
        if !(r.lo > 0.0 && r.lo <= 1.0 && 1.0 <= r.hi && r.hi <= crate::catalog::MAX_MAGNITUDE) {
            return Err(Error::Usage(format!("magnitude range [{}, {}] must straddle 1 inside (0, 1e6]", r.lo, r.hi)));
        }
        if r.max_len == 0 || r.max_cols < 2 || !(r.p_max > 1.0) || !(0.0..1.0).contains(&r.zero_fraction) {
            return Err(Error::Usage("invalid sampling ranges".into()));
        }
        let params = &self.params;
        let tuple_based = matches!(id, InequalityId::NaryYoung | InequalityId::HolderMulti);
        if tuple_based && (params.p.is_some() || params.q.is_some()) {
            return Err(Error::Usage(format!("{id} takes an exponent list, not --p/--q")));
        }
        if !tuple_based && params.exponents.is_some() {
            return Err(Error::Usage(format!("{id} does not take an exponent list")));
        }
        if params.q.is_some() && !matches!(id, InequalityId::Young | InequalityId::Holder) {
            return Err(Error::Usage(format!("{id} does not take q")));
        }
        if params.r.is_some() && !matches!(id, InequalityId::Radon | InequalityId::RadonMulti) {
            return Err(Error::Usage(format!("{id} does not take r")));
        }
        if params.q.is_some() && params.p.is_none() {
            return Err(Error::Usage("q given without p".into()));
        }
        if let Some(p) = params.p {
            let regime = if id == InequalityId::Bernoulli {
                if !(p > 0.0 && p.is_finite()) || p == 1.0 {
                    return Err(Error::Usage(format!("Bernoulli exponent m = {p} is outside (0, 1) ∪ (1, ∞)")));
                }
                if p < 1.0 {
                    Regime::Holder
                } else {
                    Regime::Reverse
                }
            } else {
                Regime::of_power(p).map_err(usage)?
            };
            if regime != self.regime {
                return Err(Error::Usage(format!("p = {p} belongs to the {regime} regime, not {}", self.regime)));
            }
            if let Some(q) = params.q {
                ConjugatePair::new(p, q).map_err(usage)?;
            }
        }
        if let Some(rr) = params.r {
            check_ratio_exponents(params.p.unwrap_or(2.0), rr).map_err(usage)?;
        }
        if let Some(e) = &params.exponents {
            let t = ExponentTuple::new(e.clone()).map_err(usage)?;
            if t.regime() != self.regime {
                return Err(Error::Usage(format!("exponents belong to the {} regime", t.regime())));
            }
        }
        Ok(())
    }
}

fn usage(e: Error) -> Error {
    match e {
        Error::Usage(_) => e,
        other => Error::Usage(other.to_string()),
    }
}

/// One generated case: the instance and the exponents it is evaluated with.
#[derive(Clone, Debug, PartialEq)]
pub struct Trial {
    pub index: u64,
    pub spec: InstanceSpec,
    pub exponents: Exponents,
}

impl Trial {
    pub fn evaluate(&self, id: InequalityId, variant: FormVariant, tol: &TolerancePolicy) -> Result<Verdict> {
        evaluate(id, variant, &self.spec, &self.exponents).map(|v| v.with_tolerance(tol))
    }
}

struct Draws<R> {
    rng: R,
}

impl<R: rand::RngCore> Draws<R> {
    fn unit(&mut self) -> f64 {
        open_unit(&mut self.rng)
    }

    fn units(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.unit()).collect()
    }

    fn size(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }
}

fn magnitudes<R: rand::RngCore>(draws: &mut Draws<R>, n: usize, cfg: &SuiteConfig, zeroable: bool) -> Vec<f64> {
    let u = draws.units(n);
    let z = draws.units(n);
    let r = &cfg.ranges;
    let mut v = sample_magnitudes(n, &u, r.lo, r.hi).expect("validated ranges");
    if zeroable {
        for (t, zu) in v.iter_mut().zip(z) {
            if zu < r.zero_fraction {
                *t = 0.0;
            }
        }
    }
    v
}

fn power<R: rand::RngCore>(draws: &mut Draws<R>, cfg: &SuiteConfig) -> f64 {
    let u = draws.unit();
    cfg.params.p.unwrap_or_else(|| sample::sample_power(cfg.regime, u, cfg.ranges.p_max))
}

fn pair<R: rand::RngCore>(draws: &mut Draws<R>, cfg: &SuiteConfig) -> Result<ConjugatePair> {
    let u = draws.unit();
    match (cfg.params.p, cfg.params.q) {
        (Some(p), Some(q)) => ConjugatePair::new(p, q),
        (Some(p), None) => ConjugatePair::from_p(p),
        _ => sample_conjugate_pair(cfg.regime, u, cfg.ranges.p_max),
    }
}

fn ratio_r<R: rand::RngCore>(draws: &mut Draws<R>, cfg: &SuiteConfig) -> f64 {
    let u = draws.unit();
    cfg.params.r.unwrap_or_else(|| u.clamp(EXPONENT_MARGIN, 1.0 - EXPONENT_MARGIN))
}

fn tuple<R: rand::RngCore>(draws: &mut Draws<R>, cfg: &SuiteConfig, max: usize) -> Result<ExponentTuple> {
    let n = draws.size(2, max);
    let u = draws.units(n);
    match &cfg.params.exponents {
        Some(e) => ExponentTuple::new(e.clone()),
        None => sample_exponent_tuple(n, cfg.regime, &u),
    }
}

/// Draws trial `index` of a suite. The dimension draw comes first and is always consumed, so
/// changing the α policy leaves every other draw (and hence every magnitude) unchanged.
pub fn generate_trial(cfg: &SuiteConfig, index: u64) -> Result<Trial> {
    let mut d = Draws { rng: trial_rng(cfg.seed, index) };
    let u_alpha = d.unit();
    let dim = match cfg.alpha {
        AlphaPolicy::Fixed(dim) => dim,
        AlphaPolicy::Sampled => sample_dimension(u_alpha)?,
    };
    let holder = cfg.regime == Regime::Holder;
    let r = cfg.ranges.clone();
    let (instance, exponents): (Instance, Exponents) = match cfg.id {
        InequalityId::Bernoulli => {
            let um = d.unit();
            // m < 1 is the concave (upper-bound) claim, m > 1 the convex one
            let m = cfg.params.p.unwrap_or(match cfg.regime {
                Regime::Holder => um.clamp(EXPONENT_MARGIN, 1.0 - EXPONENT_MARGIN),
                Regime::Reverse => 1.0 + EXPONENT_MARGIN + um * (r.p_max - 1.0 - EXPONENT_MARGIN),
            });
            let u = d.unit();
            let (lo, hi) = match cfg.bernoulli_domain {
                BernoulliDomain::Full => (r.lo, r.hi),
                BernoulliDomain::BelowOne => (r.lo, 1.0),
                BernoulliDomain::AtLeastOne => (1.0, r.hi),
            };
            let y = sample_magnitudes(1, &[u], lo, hi)?[0];
            // log-uniform on [lo, 1] can round to exactly 1
            let y = if cfg.bernoulli_domain == BernoulliDomain::BelowOne { y.min(1.0 - f64::EPSILON) } else { y };
            (Bernoulli { y, m }.into(), Exponents::None)
        }
        InequalityId::Young => {
            let pr = pair(&mut d, cfg)?;
            let v = magnitudes(&mut d, 2, cfg, holder);
            (Young { a: v[0], b: v[1] }.into(), Exponents::Pair(pr))
        }
        InequalityId::NaryYoung => {
            let t = tuple(&mut d, cfg, r.max_len.max(2))?;
            let a = magnitudes(&mut d, t.len(), cfg, holder);
            (NaryYoung { a }.into(), Exponents::Tuple(t))
        }
        InequalityId::Holder => {
            let pr = pair(&mut d, cfg)?;
            let n = d.size(1, r.max_len);
            let x = magnitudes(&mut d, n, cfg, holder);
            let y = magnitudes(&mut d, n, cfg, holder);
            (Paired { x, y }.into(), Exponents::Pair(pr))
        }
        InequalityId::Minkowski => {
            let p = power(&mut d, cfg);
            let n = d.size(1, r.max_len);
            let x = magnitudes(&mut d, n, cfg, holder);
            let y = magnitudes(&mut d, n, cfg, holder);
            (Paired { x, y }.into(), Exponents::Power(p))
        }
        InequalityId::HolderMulti => {
            let t = tuple(&mut d, cfg, r.max_cols)?;
            let n = d.size(1, r.max_len);
            let rows = (0..n).map(|_| magnitudes(&mut d, t.len(), cfg, holder)).collect();
            (Multi { rows }.into(), Exponents::Tuple(t))
        }
        InequalityId::MinkowskiMulti => {
            let p = power(&mut d, cfg);
            let m = d.size(1, r.max_cols);
            let n = d.size(1, r.max_len);
            let rows = (0..n).map(|_| magnitudes(&mut d, m, cfg, holder)).collect();
            (Multi { rows }.into(), Exponents::Power(p))
        }
        InequalityId::Radon => {
            let p = power(&mut d, cfg);
            let rr = ratio_r(&mut d, cfg);
            let n = d.size(1, r.max_len);
            let x = magnitudes(&mut d, n, cfg, false);
            let y = magnitudes(&mut d, n, cfg, false);
            (Radon { x, y, r: rr }.into(), Exponents::Power(p))
        }
        InequalityId::RadonMulti => {
            let p = power(&mut d, cfg);
            let rr = ratio_r(&mut d, cfg);
            let m = d.size(1, r.max_cols);
            let n = d.size(1, r.max_len);
            let rows = (0..n).map(|_| magnitudes(&mut d, m, cfg, false)).collect();
            (Multi { rows }.into(), Exponents::PowerRatio { p, r: rr })
        }
    };
    Ok(Trial { index, spec: InstanceSpec { dim, instance }, exponents })
}

/// Aggregated outcome of a suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub id: InequalityId,
    pub variant: FormVariant,
    pub regime: Regime,
    pub trials: usize,
    pub holds: usize,
    pub equality: usize,
    pub violations: usize,
    /// Smallest scale-normalized gap over all trials (`gap / scale` of the worst verdict).
    pub min_gap: f64,
    pub worst: Trial,
    pub worst_verdict: Verdict,
    pub seed: u64,
    pub alpha: AlphaPolicy,
    pub tol: TolerancePolicy,
    pub runtime_ms: u128,
}

impl SuiteReport {
    pub fn all_verified(&self) -> bool {
        self.violations == 0
    }
}

/// Evaluates already materialized trials (from a file, say) and aggregates them like a suite.
pub fn run_trials(cfg: &SuiteConfig, trials: &[Trial]) -> Result<SuiteReport> {
    let start = Instant::now();
    if trials.is_empty() {
        return Err(Error::Usage("no trials to run".into()));
    }
    let verdicts = trials
        .par_iter()
        .map(|t| {
            t.evaluate(cfg.id, cfg.variant, &cfg.tol)
                .map_err(|e| Error::Usage(format!("trial {} is invalid: {e}", t.index)))
        })
        .collect::<Result<Vec<_>>>()?;
    aggregate(cfg, &verdicts, |i| Ok(trials[i].clone()), start)
}

/// Runs `cfg.trials` seeded trials.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let start = Instant::now();
    let verdicts = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let trial = generate_trial(cfg, i)?;
            trial
                .evaluate(cfg.id, cfg.variant, &cfg.tol)
                .map_err(|e| Error::Usage(format!("generated trial {i} is not evaluable: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    aggregate(cfg, &verdicts, |i| generate_trial(cfg, i as u64), start)
}

fn aggregate(
    cfg: &SuiteConfig,
    verdicts: &[Verdict],
    trial_at: impl Fn(usize) -> Result<Trial>,
    start: Instant,
) -> Result<SuiteReport> {
    let (mut holds, mut equality, mut violations) = (0, 0, 0);
    let mut worst = 0usize;
    for (i, v) in verdicts.iter().enumerate() {
        match v.status {
            Status::Holds => holds += 1,
            Status::Equality => equality += 1,
            Status::Violation => violations += 1,
        }
        if v.rel_gap < verdicts[worst].rel_gap {
            worst = i;
        }
    }
    let dim_policy = cfg.alpha;
    Ok(SuiteReport {
        id: cfg.id,
        variant: cfg.variant,
        regime: cfg.regime,
        trials: verdicts.len(),
        holds,
        equality,
        violations,
        min_gap: verdicts[worst].rel_gap,
        worst: trial_at(worst)?,
        worst_verdict: verdicts[worst],
        seed: cfg.seed,
        alpha: dim_policy,
        tol: cfg.tol,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// One suite per grid dimension, all sharing the master seed.
pub fn sweep_alpha(cfg: &SuiteConfig, grid: &[f64]) -> Result<Vec<SuiteReport>> {
    if grid.is_empty() {
        return Err(Error::Usage("empty alpha grid".into()));
    }
    let dims = grid
        .iter()
        .map(|&a| Dimension::new(a).map_err(|_| Error::Usage(format!("grid value {a} is outside (0, 1]"))))
        .collect::<Result<Vec<_>>>()?;
    dims.into_iter().map(|d| run_suite(&cfg.clone().alpha(AlphaPolicy::Fixed(d)))).collect()
}
