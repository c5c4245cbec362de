//! The inequality catalog: one gap evaluator per inequality, a dispatcher,
//! and the classical reduction used as an oracle bridge.

mod eval;
mod exponents;
mod instance;
mod verdict;

use std::fmt;
use std::str::FromStr;

pub use eval::{
    eval_bernoulli, eval_holder, eval_holder_multi, eval_minkowski, eval_minkowski_multi, eval_nary_young, eval_radon,
    eval_radon_multi, eval_young,
};
pub use exponents::{check_ratio_exponents, ConjugatePair, ExponentTuple, Exponents, Regime, CONJUGACY_TOL};
pub use instance::{Bernoulli, Instance, InstanceSpec, Multi, NaryYoung, Paired, Radon, Young, MAX_MAGNITUDE};
pub use verdict::{Direction, Status, TolerancePolicy, Verdict};

use crate::alpha::Dimension;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityId {
    Bernoulli,
    Young,
    NaryYoung,
    Holder,
    Minkowski,
    HolderMulti,
    MinkowskiMulti,
    Radon,
    RadonMulti,
}

impl InequalityId {
    pub const ALL: [InequalityId; 9] = [
        InequalityId::Bernoulli,
        InequalityId::Young,
        InequalityId::NaryYoung,
        InequalityId::Holder,
        InequalityId::Minkowski,
        InequalityId::HolderMulti,
        InequalityId::MinkowskiMulti,
        InequalityId::Radon,
        InequalityId::RadonMulti,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::Bernoulli => "bernoulli",
            InequalityId::Young => "young",
            InequalityId::NaryYoung => "nary-young",
            InequalityId::Holder => "holder",
            InequalityId::Minkowski => "minkowski",
            InequalityId::HolderMulti => "holder-multi",
            InequalityId::MinkowskiMulti => "minkowski-multi",
            InequalityId::Radon => "radon",
            InequalityId::RadonMulti => "radon-multi",
        }
    }

    /// Whether a literal printed form that differs from the classical one exists.
    pub fn has_as_written(self) -> bool {
        matches!(self, InequalityId::Minkowski | InequalityId::MinkowskiMulti | InequalityId::RadonMulti)
    }

    /// Regimes in which the inequality makes a claim.
    pub fn regimes(self) -> &'static [Regime] {
        match self {
            InequalityId::Radon | InequalityId::RadonMulti => &[Regime::Holder],
            _ => &[Regime::Holder, Regime::Reverse],
        }
    }

    pub fn check_variant(self, variant: FormVariant) -> Result<()> {
        if variant == FormVariant::AsWritten && !self.has_as_written() {
            Err(Error::Usage(format!("{self} has no as-written variant")))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::Usage(format!("unknown inequality '{s}'")))
    }
}

/// Which reading of a displayed inequality to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FormVariant {
    /// The classically consistent reading.
    #[default]
    Normalized,
    /// The literal printed text.
    AsWritten,
}

impl FormVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            FormVariant::Normalized => "normalized",
            FormVariant::AsWritten => "as-written",
        }
    }
}

impl fmt::Display for FormVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "normalized" => Ok(FormVariant::Normalized),
            "as-written" => Ok(FormVariant::AsWritten),
            _ => Err(Error::Usage(format!("unknown variant '{s}' (expected normalized|as-written)"))),
        }
    }
}

fn mismatch(id: InequalityId, spec: &InstanceSpec, exponents: &Exponents) -> Error {
    Error::Usage(format!("{id} cannot evaluate a {} instance with {exponents:?}", spec.instance.kind()))
}

/// Evaluates inequality `id` on an instance with the given exponents.
pub fn evaluate(id: InequalityId, variant: FormVariant, spec: &InstanceSpec, exponents: &Exponents) -> Result<Verdict> {
    id.check_variant(variant)?;
    let dim = spec.dim;
    match (id, &spec.instance, exponents) {
        (InequalityId::Bernoulli, Instance::Bernoulli(b), Exponents::None) => eval_bernoulli(b, dim),
        (InequalityId::Young, Instance::Young(y), Exponents::Pair(pair)) => eval_young(y, pair, dim),
        (InequalityId::NaryYoung, Instance::NaryYoung(n), Exponents::Tuple(t)) => eval_nary_young(n, t, dim),
        (InequalityId::Holder, Instance::Paired(x), Exponents::Pair(pair)) => eval_holder(x, pair, dim),
        (InequalityId::Minkowski, Instance::Paired(x), Exponents::Power(p)) => eval_minkowski(x, *p, dim, variant),
        (InequalityId::HolderMulti, Instance::Multi(x), Exponents::Tuple(t)) => eval_holder_multi(x, t, dim),
        (InequalityId::MinkowskiMulti, Instance::Multi(x), Exponents::Power(p)) => {
            eval_minkowski_multi(x, *p, dim, variant)
        }
        (InequalityId::Radon, Instance::Radon(x), Exponents::Power(p)) => eval_radon(x, *p, dim),
        (InequalityId::RadonMulti, Instance::Multi(x), Exponents::PowerRatio { p, r }) => {
            eval_radon_multi(x, *p, *r, dim, variant)
        }
        _ => Err(mismatch(id, spec, exponents)),
    }
}

/// Rewrites an instance at dimension `α` as the classical (`α = 1`) instance on the
/// magnitudes `t^α`. Every evaluator except Bernoulli yields the same gap on both.
///
/// Bernoulli has no such reduction: `|y − 1|^α` is not a function of `y^α`.
pub fn classical_reduce(spec: &InstanceSpec) -> Result<InstanceSpec> {
    for (i, t) in spec.instance.magnitudes().into_iter().enumerate() {
        instance::check_magnitude(&format!("magnitude {i}"), t)?;
    }
    if let Instance::Bernoulli(_) = spec.instance {
        return Err(Error::Domain("the Bernoulli inequality does not reduce to its classical form".into()));
    }
    let alpha = spec.dim.alpha();
    if alpha == 1.0 {
        return Ok(spec.clone());
    }
    Ok(InstanceSpec { dim: Dimension::ONE, instance: spec.instance.map_magnitudes(|t| t.powf(alpha)) })
}
