//! Numerical certification of equality conditions.
//!
//! Points are flat vectors of positive magnitudes in the instance's own order
//! (`a, b`; `a_1..a_n`; `x_1..x_n, y_1..y_n`; or a row-major `n × m` matrix).
//! Residuals are measured on the values `t^α`, where the conditions are stated.

mod simplex;

use rayon::prelude::*;

pub use simplex::{halton, nelder_mead, Minimum, SearchBox};

use crate::alpha::Dimension;
use crate::catalog::{
    evaluate, ConjugatePair, ExponentTuple, Exponents, FormVariant, InequalityId, Instance, InstanceSpec, Multi,
    NaryYoung, Paired, Radon, Regime, TolerancePolicy, Verdict, Young,
};
use crate::error::{Error, Result};
use crate::harness::{open_unit, trial_rng};

/// Relative gap below which a minimization counts as converged.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// Largest condition residual accepted for a converged certificate.
pub const RESIDUAL_TOL: f64 = 1e-3;

/// Fixed parameters of a certification problem.
///
/// `n` is the sequence length and `m` the column count; both are ignored where the shape is
/// implied (Young has one pair, n-ary Young and multi Hölder take their width from the tuple).
/// Radon takes `Exponents::PowerRatio` here even though its evaluator carries `r` on the instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CertParams {
    pub dim: Dimension,
    pub exponents: Exponents,
    pub n: usize,
    pub m: usize,
}

impl CertParams {
    pub fn new(dim: Dimension, exponents: Exponents, n: usize, m: usize) -> Self {
        CertParams { dim, exponents, n, m }
    }

    /// A moderate random parameter set in `regime`: `α ∈ [0.1, 1]`, `n, m ∈ {2, 3}`, Hölder-regime
    /// powers in `[1.5, 5]`, reverse-regime powers in `[0.25, 0.75]`, `r ∈ [0.25, 0.75]`.
    pub fn sample(id: InequalityId, regime: Regime, seed: u64, index: u64) -> Result<Self> {
        if id == InequalityId::Bernoulli {
            return Err(no_manifold(id));
        }
        if !id.regimes().contains(&regime) {
            return Err(Error::Usage(format!("{id} has no {regime} regime")));
        }
        let mut rng = trial_rng(seed, index);
        let mut u = move || open_unit(&mut rng);
        let dim = Dimension::new(0.1 + 0.9 * u())?;
        let n = 2 + (u() < 0.5) as usize;
        let m = 2 + (u() < 0.5) as usize;
        let power = |u: f64| match regime {
            Regime::Holder => 1.5 + 3.5 * u,
            Regime::Reverse => 0.25 + 0.5 * u,
        };
        let p = power(u());
        let r = 0.25 + 0.5 * u();
        let width = if id == InequalityId::NaryYoung { n } else { m };
        let weights: Vec<f64> = (0..width).map(|_| 0.25 + 0.5 * u()).collect();
        let exponents = match id {
            InequalityId::Young | InequalityId::Holder => Exponents::Pair(ConjugatePair::from_p(p)?),
            InequalityId::Minkowski | InequalityId::MinkowskiMulti => Exponents::Power(p),
            InequalityId::Radon | InequalityId::RadonMulti => Exponents::PowerRatio { p, r },
            InequalityId::NaryYoung | InequalityId::HolderMulti => Exponents::Tuple(moderate_tuple(regime, &weights)?),
            InequalityId::Bernoulli => unreachable!(),
        };
        Ok(CertParams { dim, exponents, n, m })
    }
}

/// Holder: reciprocals proportional to the weights. Reverse: `1/p_1 = 1 + s` with
/// `s = 2·w_1 ∈ [0.5, 1.5]`, the deficit `−s` split over the rest by weight.
fn moderate_tuple(regime: Regime, weights: &[f64]) -> Result<ExponentTuple> {
    let exponents = match regime {
        Regime::Holder => {
            let total: f64 = weights.iter().sum();
            weights.iter().map(|w| total / w).collect()
        }
        Regime::Reverse => {
            let s = 2.0 * weights[0];
            let total: f64 = weights[1..].iter().sum();
            std::iter::once(1.0 / (1.0 + s)).chain(weights[1..].iter().map(|w| -total / (s * w))).collect()
        }
    };
    ExponentTuple::new(exponents)
}

fn no_manifold(id: InequalityId) -> Error {
    Error::Usage(format!("{id} has no parametrized equality manifold"))
}

/// Number of coordinates of a point.
pub fn coordinate_count(id: InequalityId, params: &CertParams) -> Result<usize> {
    let shape_err = || Error::Usage(format!("{id} cannot be certified with {:?}", params.exponents));
    if params.n == 0 || params.m == 0 {
        return Err(Error::Usage("n and m must be positive".into()));
    }
    Ok(match (id, &params.exponents) {
        (InequalityId::Young, Exponents::Pair(_)) => 2,
        (InequalityId::NaryYoung, Exponents::Tuple(t)) => t.len(),
        (InequalityId::Holder, Exponents::Pair(_))
        | (InequalityId::Minkowski, Exponents::Power(_))
        | (InequalityId::Radon, Exponents::PowerRatio { .. }) => 2 * params.n,
        (InequalityId::HolderMulti, Exponents::Tuple(t)) => params.n * t.len(),
        (InequalityId::MinkowskiMulti, Exponents::Power(_))
        | (InequalityId::RadonMulti, Exponents::PowerRatio { .. }) => params.n * params.m,
        (InequalityId::Bernoulli, _) => return Err(no_manifold(id)),
        _ => return Err(shape_err()),
    })
}

fn columns(id: InequalityId, params: &CertParams) -> usize {
    match &params.exponents {
        Exponents::Tuple(t) if id == InequalityId::HolderMulti => t.len(),
        _ => params.m,
    }
}

/// The instance at `point`, with the exponents its evaluator takes.
pub fn build_instance(id: InequalityId, params: &CertParams, point: &[f64]) -> Result<(InstanceSpec, Exponents)> {
    let k = coordinate_count(id, params)?;
    if point.len() != k {
        return Err(Error::Usage(format!("{id} point needs {k} coordinates, got {}", point.len())));
    }
    let half = |v: &[f64]| (v[..v.len() / 2].to_vec(), v[v.len() / 2..].to_vec());
    let matrix = |v: &[f64], m: usize| Multi { rows: v.chunks(m).map(<[f64]>::to_vec).collect() };
    let (instance, exponents): (Instance, Exponents) = match (id, &params.exponents) {
        (InequalityId::Young, e) => (Young { a: point[0], b: point[1] }.into(), e.clone()),
        (InequalityId::NaryYoung, e) => (NaryYoung { a: point.to_vec() }.into(), e.clone()),
        (InequalityId::Holder | InequalityId::Minkowski, e) => {
            let (x, y) = half(point);
            (Paired { x, y }.into(), e.clone())
        }
        (InequalityId::Radon, &Exponents::PowerRatio { p, r }) => {
            let (x, y) = half(point);
            (Radon { x, y, r }.into(), Exponents::Power(p))
        }
        (_, e) => (matrix(point, columns(id, params)).into(), e.clone()),
    };
    Ok((InstanceSpec { dim: params.dim, instance }, exponents))
}

pub fn evaluate_point(id: InequalityId, params: &CertParams, point: &[f64]) -> Result<Verdict> {
    let (spec, exponents) = build_instance(id, params, point)?;
    evaluate(id, FormVariant::Normalized, &spec, &exponents)
}

/// `gap / max(|lhs|, |rhs|, floor)`.
pub fn relative_gap(v: &Verdict, floor: f64) -> f64 {
    v.gap / v.lhs.abs().max(v.rhs.abs()).max(floor)
}

/// Relative least-squares residual of `u ≈ λ w`: `‖u − λw‖ / ‖u‖` with the optimal `λ`.
fn proportionality_residual(u: &[f64], w: &[f64]) -> f64 {
    let uw: f64 = u.iter().zip(w).map(|(a, b)| a * b).sum();
    let ww: f64 = w.iter().map(|b| b * b).sum();
    let uu: f64 = u.iter().map(|a| a * a).sum();
    if uu == 0.0 || ww == 0.0 {
        return if uu == ww { 0.0 } else { 1.0 };
    }
    let lambda = uw / ww;
    let res: f64 = u.iter().zip(w).map(|(a, b)| (a - lambda * b).powi(2)).sum();
    (res / uu).sqrt()
}

/// How far `point` is from satisfying the stated equality condition, measured on values `t^α`.
///
/// Young: `|A^p − B^q| / max(A^p, B^q)`; n-ary Young: spread of `A_j^{p_j}` over their maximum;
/// Hölder: proportionality of `X_i^p` and `Y_i^q`; Minkowski and Radon: proportionality of `X` and
/// `Y`; multi forms: the worst column against column 1 (after raising to `p_j` for multi Hölder).
pub fn condition_residual(id: InequalityId, params: &CertParams, point: &[f64]) -> Result<f64> {
    let (spec, _) = build_instance(id, params, point)?;
    let alpha = params.dim.alpha();
    let val = |t: f64| t.powf(alpha);
    let vals = |v: &[f64]| v.iter().map(|&t| val(t)).collect::<Vec<_>>();
    Ok(match (&spec.instance, &params.exponents) {
        (Instance::Young(y), Exponents::Pair(pair)) => {
            let (u, w) = (val(y.a).powf(pair.p()), val(y.b).powf(pair.q()));
            (u - w).abs() / u.max(w)
        }
        (Instance::NaryYoung(a), Exponents::Tuple(t)) => {
            let terms: Vec<f64> = a.a.iter().zip(t.exponents()).map(|(&aj, pj)| val(aj).powf(*pj)).collect();
            let hi = terms.iter().copied().fold(f64::MIN, f64::max);
            let lo = terms.iter().copied().fold(f64::MAX, f64::min);
            (hi - lo) / hi
        }
        (Instance::Paired(x), Exponents::Pair(pair)) => {
            let u: Vec<f64> = x.x.iter().map(|&t| val(t).powf(pair.p())).collect();
            let w: Vec<f64> = x.y.iter().map(|&t| val(t).powf(pair.q())).collect();
            proportionality_residual(&u, &w)
        }
        (Instance::Paired(x), _) => proportionality_residual(&vals(&x.x), &vals(&x.y)),
        (Instance::Radon(x), _) => proportionality_residual(&vals(&x.x), &vals(&x.y)),
        (Instance::Multi(x), e) => {
            let raise = |j: usize| match e {
                Exponents::Tuple(t) => t.exponents()[j],
                _ => 1.0,
            };
            let col = |j: usize| x.column(j).into_iter().map(|t| val(t).powf(raise(j))).collect::<Vec<_>>();
            let first = col(0);
            (1..x.m()).map(|j| proportionality_residual(&col(j), &first)).fold(0.0, f64::max)
        }
        _ => return Err(no_manifold(id)),
    })
}

fn lerp_log(u: f64, lo: f64, hi: f64) -> f64 {
    (lo.ln() + u * (hi.ln() - lo.ln())).exp()
}

/// Number of uniform draws [`manifold_point`] consumes.
pub fn manifold_draws(id: InequalityId, params: &CertParams) -> Result<usize> {
    let k = coordinate_count(id, params)?;
    Ok(match id {
        InequalityId::Young | InequalityId::NaryYoung => 1,
        InequalityId::Holder | InequalityId::Minkowski | InequalityId::Radon => k / 2 + 1,
        _ => {
            let m = columns(id, params);
            k / m + m - 1
        }
    })
}

/// A point on the equality manifold from uniform draws in (0, 1); free magnitudes and
/// proportionality constants are log-uniform on `[0.5, 2]`, which keeps every entry's weight
/// large enough that leaving the manifold is visible at `tol_eq`.
///
/// Young: `a = t^{1/p}, b = t^{1/q}`. n-ary Young: `a_i = t^{1/p_i}`. Hölder: `x_i = (λ y_i^q)^{1/p}`.
/// Minkowski, Radon: `y = λx`. Multi: column `j` is `λ_j` times column 1 (raised to `1/p_j` for
/// multi Hölder).
pub fn manifold_point(id: InequalityId, params: &CertParams, draws: &[f64]) -> Result<Vec<f64>> {
    let need = manifold_draws(id, params)?;
    if draws.len() != need {
        return Err(Error::Usage(format!("{id} manifold point needs {need} draws, got {}", draws.len())));
    }
    let s: Vec<f64> = draws.iter().map(|&u| lerp_log(u, 0.5, 2.0)).collect();
    Ok(match (id, &params.exponents) {
        (InequalityId::Young, Exponents::Pair(pair)) => vec![s[0].powf(1.0 / pair.p()), s[0].powf(1.0 / pair.q())],
        (InequalityId::NaryYoung, Exponents::Tuple(t)) => t.exponents().iter().map(|p| s[0].powf(1.0 / p)).collect(),
        (InequalityId::Holder, Exponents::Pair(pair)) => {
            let (lambda, y) = (s[0], &s[1..]);
            let x = y.iter().map(|yi| (lambda * yi.powf(pair.q())).powf(1.0 / pair.p()));
            x.chain(y.iter().copied()).collect()
        }
        (InequalityId::Minkowski | InequalityId::Radon, _) => {
            let (lambda, x) = (s[0], &s[1..]);
            x.iter().copied().chain(x.iter().map(|xi| lambda * xi)).collect()
        }
        (_, e) => {
            let m = columns(id, params);
            let n = need + 1 - m;
            let (base, lambdas) = s.split_at(n);
            let raise = |j: usize| match e {
                Exponents::Tuple(t) => 1.0 / t.exponents()[j],
                _ => 1.0,
            };
            let mut point = Vec::with_capacity(n * m);
            for bi in base {
                point.push(bi.powf(raise(0)));
                for j in 1..m {
                    point.push((lambdas[j - 1] * bi).powf(raise(j)));
                }
            }
            point
        }
    })
}

/// Largest `|gap| / max(|lhs|, |rhs|, floor)` over `samples` quasi-random manifold points.
pub fn check_equality_manifold(id: InequalityId, params: &CertParams, samples: usize) -> Result<f64> {
    let d = manifold_draws(id, params)?;
    let floor = TolerancePolicy::default().abs_floor;
    (1..=samples as u64).try_fold(0.0f64, |worst, i| {
        let point = manifold_point(id, params, &halton(i, d))?;
        let v = evaluate_point(id, params, &point)?;
        Ok(worst.max(relative_gap(&v, floor).abs()))
    })
}

/// The gap relative to `max(|lhs|, |rhs|, floor)` at each of `points`, for explicit manifold checks.
pub fn manifold_gaps(id: InequalityId, params: &CertParams, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let floor = TolerancePolicy::default().abs_floor;
    points.iter().map(|p| evaluate_point(id, params, p).map(|v| relative_gap(&v, floor))).collect()
}

/// A box in magnitude space: one `(lo, hi)` pair per coordinate, or a single pair for the cube
/// `[lo, hi]^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub bounds: Vec<(f64, f64)>,
}

impl Region {
    pub fn cube(lo: f64, hi: f64) -> Self {
        Region { bounds: vec![(lo, hi)] }
    }

    fn search_box(&self, k: usize) -> Result<SearchBox> {
        let bounds = match self.bounds.len() {
            1 => vec![self.bounds[0]; k],
            len if len == k => self.bounds.clone(),
            len => return Err(Error::Usage(format!("region has {len} bounds for {k} coordinates"))),
        };
        if let Some((lo, hi)) =
            bounds.iter().find(|(lo, hi)| !(*lo > 0.0 && lo < hi && *hi <= crate::catalog::MAX_MAGNITUDE))
        {
            return Err(Error::Usage(format!("region bound [{lo}, {hi}] must satisfy 0 < lo < hi <= 1e6")));
        }
        Ok(SearchBox { lo: bounds.iter().map(|b| b.0.ln()).collect(), hi: bounds.iter().map(|b| b.1.ln()).collect() })
    }
}

impl Default for Region {
    fn default() -> Self {
        Region::cube(0.1, 10.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EqualityCertificate {
    pub id: InequalityId,
    pub params: CertParams,
    pub region: Region,
    pub argmin: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// Signed gap at the argmin.
    pub gap_at_argmin: f64,
    /// `gap_at_argmin / max(|lhs|, |rhs|, abs_floor)`, the minimized objective.
    pub relative_gap: f64,
    pub condition_residual: f64,
    pub evaluations: usize,
    /// Restart that produced the argmin.
    pub restart: usize,
    pub converged: bool,
}

impl EqualityCertificate {
    /// A converged run whose argmin satisfies the equality condition.
    pub fn consistent(&self) -> bool {
        !self.converged || self.condition_residual <= RESIDUAL_TOL
    }
}

/// Minimizes the relative gap over `region` with `restarts` simplex descents, each started from a
/// Halton point and limited to `budget` evaluations. Search runs on log-magnitudes.
pub fn minimize_gap(
    id: InequalityId,
    params: &CertParams,
    region: Region,
    restarts: usize,
    budget: usize,
) -> Result<EqualityCertificate> {
    let k = coordinate_count(id, params)?;
    let bounds = region.search_box(k)?;
    if restarts == 0 || budget < k + 2 {
        return Err(Error::Usage(format!("need restarts >= 1 and budget >= {}", k + 2)));
    }
    let lower: Vec<f64> = bounds.lo.iter().map(|v| v.exp()).collect();
    evaluate_point(id, params, &lower)?;
    let floor = TolerancePolicy::default().abs_floor;
    let step = 0.1 * bounds.lo.iter().zip(&bounds.hi).map(|(l, h)| h - l).fold(f64::MAX, f64::min);
    let objective = |z: &[f64]| {
        let point: Vec<f64> = z.iter().map(|v| v.exp()).collect();
        match evaluate_point(id, params, &point) {
            Ok(v) => relative_gap(&v, floor),
            Err(_) => f64::INFINITY,
        }
    };
    let runs: Vec<(usize, Minimum)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let start = bounds.from_unit(&halton(r as u64 + 1, k));
            let mut f = objective;
            let mut best = nelder_mead(&mut f, &start, step, &bounds, budget, 1e-16);
            let mut used = best.evaluations;
            // fresh simplices around the incumbent until the budget runs out or nothing improves
            while used + k + 2 < budget {
                let next = nelder_mead(&mut f, &best.x, step * 0.01, &bounds, budget - used, 1e-16);
                used += next.evaluations;
                if next.f < best.f {
                    best = Minimum { evaluations: used, ..next };
                } else {
                    break;
                }
            }
            best.evaluations = used;
            (r, best)
        })
        .collect();
    let evaluations = runs.iter().map(|(_, m)| m.evaluations).sum();
    let (restart, best) =
        runs.into_iter().min_by(|a, b| a.1.f.total_cmp(&b.1.f).then(a.0.cmp(&b.0))).expect("at least one restart");
    let argmin: Vec<f64> = best.x.iter().map(|v| v.exp()).collect();
    let v = evaluate_point(id, params, &argmin)?;
    let rel = relative_gap(&v, floor);
    Ok(EqualityCertificate {
        id,
        params: params.clone(),
        region,
        lhs: v.lhs,
        rhs: v.rhs,
        gap_at_argmin: v.gap,
        relative_gap: rel,
        condition_residual: condition_residual(id, params, &argmin)?,
        evaluations,
        restart,
        converged: rel.abs() <= CONVERGENCE_TOL,
        argmin,
    })
}

/// Whether some single coordinate of `point`, moved off the manifold, opens a gap above
/// `tol_eq·scale`. Each move multiplies the coordinate's value `t^α` by `1 + delta`, so the
/// perturbation has the same size in value space for every `α`.
pub fn perturb_check(id: InequalityId, params: &CertParams, point: &[f64], delta: f64) -> Result<bool> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::Usage(format!("delta must be a non-negative number, got {delta}")));
    }
    let tol = TolerancePolicy::default();
    let factor = (1.0 + delta).powf(1.0 / params.dim.alpha());
    for i in 0..point.len() {
        let mut moved = point.to_vec();
        moved[i] *= factor;
        let v = evaluate_point(id, params, &moved)?;
        if v.gap > tol.tol_eq * v.scale {
            return Ok(true);
        }
    }
    Ok(false)
}
