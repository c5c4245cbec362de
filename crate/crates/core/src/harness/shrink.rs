//! Greedy minimization of a violating trial.

use std::cell::Cell;

use super::Trial;
use crate::alpha::Dimension;
use crate::catalog::{
    ConjugatePair, Exponents, FormVariant, InequalityId, Instance, Multi, Paired, Radon, Regime, TolerancePolicy,
    Verdict,
};
use crate::error::{Error, Result};

pub const MAX_SHRINK_STEPS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct ShrinkOutcome {
    pub trial: Trial,
    pub verdict: Verdict,
    /// Accepted simplifications.
    pub steps: usize,
}

fn power_target(p: f64) -> f64 {
    if p > 1.0 {
        2.0
    } else {
        0.5
    }
}

/// Entry count plus the log-distance of every magnitude from 1, of the leading exponent
/// from its regime's simplest value, and of `α` from 1. Zero magnitudes count as entries only.
pub fn instance_size(trial: &Trial) -> f64 {
    let mags = trial.spec.instance.magnitudes();
    let mut size = mags.len() as f64;
    size += mags.iter().filter(|t| **t > 0.0).map(|t| t.ln().abs()).sum::<f64>();
    if let Instance::Bernoulli(b) = &trial.spec.instance {
        size += b.m.ln().abs();
    }
    if let (Some(p), false) = (trial.exponents.leading(), matches!(trial.exponents, Exponents::Tuple(_))) {
        size += (p.ln() - power_target(p).ln()).abs();
    }
    size + (1.0 - trial.spec.dim.alpha())
}

fn halves<T: Clone>(v: &[T]) -> [Vec<T>; 2] {
    let mid = v.len() / 2;
    [v[..mid].to_vec(), v[mid..].to_vec()]
}

fn drop_at<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t.clone()).collect()
}

fn set_magnitude(instance: &Instance, k: usize, f: impl Fn(f64) -> f64) -> Instance {
    let at = Cell::new(0usize);
    instance.map_magnitudes(|t| {
        let i = at.get();
        at.set(i + 1);
        if i == k {
            f(t)
        } else {
            t
        }
    })
}

/// Structural candidates: shorter sequences, fewer rows or columns. Entries of tuple-exponent
/// inequalities are tied to their exponents and are never dropped.
fn structural(id: InequalityId, instance: &Instance) -> Vec<Instance> {
    let mut out = Vec::new();
    match instance {
        Instance::Paired(p) if p.x.len() > 1 => {
            let (xs, ys) = (halves(&p.x), halves(&p.y));
            for h in 0..2 {
                out.push(Paired { x: xs[h].clone(), y: ys[h].clone() }.into());
            }
            for i in 0..p.x.len() {
                out.push(Paired { x: drop_at(&p.x, i), y: drop_at(&p.y, i) }.into());
            }
        }
        Instance::Radon(r) if r.x.len() > 1 => {
            let (xs, ys) = (halves(&r.x), halves(&r.y));
            for h in 0..2 {
                out.push(Radon { x: xs[h].clone(), y: ys[h].clone(), r: r.r }.into());
            }
            for i in 0..r.x.len() {
                out.push(Radon { x: drop_at(&r.x, i), y: drop_at(&r.y, i), r: r.r }.into());
            }
        }
        Instance::Multi(m) => {
            if m.rows.len() > 1 {
                for h in halves(&m.rows) {
                    out.push(Multi { rows: h }.into());
                }
                for i in 0..m.rows.len() {
                    out.push(Multi { rows: drop_at(&m.rows, i) }.into());
                }
            }
            let columns_free = matches!(id, InequalityId::MinkowskiMulti | InequalityId::RadonMulti);
            if columns_free && m.m() > 1 {
                for j in 0..m.m() {
                    out.push(Multi { rows: m.rows.iter().map(|r| drop_at(r, j)).collect() }.into());
                }
            }
        }
        _ => {}
    }
    out
}

fn candidates(id: InequalityId, trial: &Trial) -> Vec<Trial> {
    let mut out = Vec::new();
    let alpha = trial.spec.dim.alpha();
    if alpha < 1.0 {
        for a in [1.0, (alpha + 1.0) / 2.0] {
            if let Ok(dim) = Dimension::new(a) {
                let mut t = trial.clone();
                t.spec.dim = dim;
                out.push(t);
            }
        }
    }
    for instance in structural(id, &trial.spec.instance) {
        let mut t = trial.clone();
        t.spec.instance = instance;
        out.push(t);
    }
    let n = trial.spec.instance.magnitudes().len();
    for k in 0..n {
        for f in [(|_| 1.0) as fn(f64) -> f64, f64::sqrt] {
            let mut t = trial.clone();
            t.spec.instance = set_magnitude(&trial.spec.instance, k, f);
            out.push(t);
        }
    }
    if let Instance::Bernoulli(b) = &trial.spec.instance {
        let target = if b.m < 1.0 { 0.5 } else { 2.0 };
        for m in [target, (b.m + target) / 2.0] {
            let mut t = trial.clone();
            t.spec.instance = crate::catalog::Bernoulli { y: b.y, m }.into();
            out.push(t);
        }
    }
    let p_moves = |p: f64| {
        let target = power_target(p);
        [target, (p + target) / 2.0].into_iter().filter(move |c| Regime::of_power(*c).ok() == Regime::of_power(p).ok())
    };
    match &trial.exponents {
        Exponents::Pair(pair) => {
            for p in p_moves(pair.p()) {
                if let Ok(np) = ConjugatePair::from_p(p) {
                    out.push(Trial { exponents: Exponents::Pair(np), ..trial.clone() });
                }
            }
        }
        Exponents::Power(p) => {
            for np in p_moves(*p) {
                out.push(Trial { exponents: Exponents::Power(np), ..trial.clone() });
            }
        }
        Exponents::PowerRatio { p, r } => {
            for np in p_moves(*p) {
                out.push(Trial { exponents: Exponents::PowerRatio { p: np, r: *r }, ..trial.clone() });
            }
        }
        Exponents::None | Exponents::Tuple(_) => {}
    }
    out
}

/// Repeatedly applies the first simplification that keeps the trial a violation and strictly
/// decreases [`instance_size`].
pub fn shrink(id: InequalityId, variant: FormVariant, tol: &TolerancePolicy, trial: &Trial) -> Result<ShrinkOutcome> {
    let mut verdict = trial.evaluate(id, variant, tol)?;
    if !verdict.is_violation() {
        return Err(Error::Usage(format!("trial {} is not a violation; nothing to shrink", trial.index)));
    }
    let mut current = trial.clone();
    let mut size = instance_size(&current);
    let mut steps = 0;
    'outer: while steps < MAX_SHRINK_STEPS {
        for cand in candidates(id, &current) {
            if cand == current {
                continue;
            }
            let cand_size = instance_size(&cand);
            if !(cand_size < size) {
                continue;
            }
            if let Ok(v) = cand.evaluate(id, variant, tol) {
                if v.is_violation() {
                    current = cand;
                    size = cand_size;
                    verdict = v;
                    steps += 1;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(ShrinkOutcome { trial: current, verdict, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{InstanceSpec, Young};

    fn trial(spec: InstanceSpec, exponents: Exponents) -> Trial {
        Trial { index: 0, spec, exponents }
    }

    #[test]
    fn printed_minkowski_shrinks_to_a_tiny_case() {
        let t = trial(
            InstanceSpec::new(
                Dimension::new(0.4).unwrap(),
                Paired { x: vec![0.3, 0.2, 0.5, 0.1], y: vec![5.0, 4.0, 6.0, 3.5] },
            ),
            Exponents::Power(1.2),
        );
        let tol = TolerancePolicy::default();
        let out = shrink(InequalityId::Minkowski, FormVariant::AsWritten, &tol, &t).unwrap();
        assert!(out.verdict.is_violation());
        assert!(out.steps > 0);
        assert!(instance_size(&out.trial) < instance_size(&t));
        assert!(out.trial.spec.instance.len() <= 2);
    }

    #[test]
    fn holding_trial_is_rejected() {
        let t = trial(
            InstanceSpec::new(Dimension::ONE, Young { a: 1.0, b: 2.0 }),
            Exponents::Pair(ConjugatePair::from_p(2.0).unwrap()),
        );
        let r = shrink(InequalityId::Young, FormVariant::Normalized, &TolerancePolicy::default(), &t);
        assert!(matches!(r, Err(Error::Usage(_))));
    }
}
