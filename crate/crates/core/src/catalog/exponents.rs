use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance on the reciprocal-sum constraint `Σ 1/p_i = 1`.
pub const CONJUGACY_TOL: f64 = 1e-12;

/// Exponent regime: `p > 1` (Hölder, `≤`) or `0 < p < 1` (reverse, `≥`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Holder,
    Reverse,
}

impl Regime {
    /// Regime of a single power exponent; `p = 1`, `p ≤ 0` and non-finite values have none.
    pub fn of_power(p: f64) -> Result<Regime> {
        if !p.is_finite() || p <= 0.0 || p == 1.0 {
            Err(Error::Regime(format!("exponent {p} is outside (0, 1) ∪ (1, ∞)")))
        } else if p > 1.0 {
            Ok(Regime::Holder)
        } else {
            Ok(Regime::Reverse)
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Holder => "holder",
            Regime::Reverse => "reverse",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "holder" => Ok(Regime::Holder),
            "reverse" => Ok(Regime::Reverse),
            _ => Err(Error::Usage(format!("unknown regime '{s}' (expected holder|reverse)"))),
        }
    }
}

/// Conjugate exponents `1/p + 1/q = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugatePair {
    p: f64,
    q: f64,
    regime: Regime,
}

impl ConjugatePair {
    /// Completes `p` with `q = p / (p − 1)`.
    pub fn from_p(p: f64) -> Result<Self> {
        Regime::of_power(p)?;
        Self::new(p, p / (p - 1.0))
    }

    pub fn new(p: f64, q: f64) -> Result<Self> {
        let regime = Regime::of_power(p)?;
        if !q.is_finite() || (1.0 / p + 1.0 / q - 1.0).abs() > CONJUGACY_TOL {
            return Err(Error::Regime(format!("p = {p} and q = {q} are not conjugate")));
        }
        let q_ok = match regime {
            Regime::Holder => q > 1.0,
            Regime::Reverse => q < 0.0,
        };
        if !q_ok {
            return Err(Error::Regime(format!("q = {q} does not match the {regime} regime of p = {p}")));
        }
        Ok(ConjugatePair { p, q, regime })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

/// Exponents `p_1..p_n` with `Σ 1/p_i = 1`.
///
/// Hölder regime: every `p_i > 1`. Reverse regime: `0 < p_1 < 1` and `p_i < 0` for `i ≥ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentTuple {
    exponents: Vec<f64>,
    regime: Regime,
}

impl ExponentTuple {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::Shape(format!("an exponent tuple needs at least 2 entries, got {}", exponents.len())));
        }
        if exponents.iter().any(|p| !p.is_finite() || *p == 0.0) {
            return Err(Error::Regime(format!("exponents must be finite and nonzero: {exponents:?}")));
        }
        let regime = if exponents.iter().all(|&p| p > 1.0) {
            Regime::Holder
        } else if exponents[0] > 0.0 && exponents[0] < 1.0 && exponents[1..].iter().all(|&p| p < 0.0) {
            Regime::Reverse
        } else {
            return Err(Error::Regime(format!(
                "exponents {exponents:?} are neither all > 1 nor (0 < p_1 < 1, p_i < 0)"
            )));
        };
        let residual = exponents.iter().map(|p| 1.0 / p).sum::<f64>() - 1.0;
        if residual.abs() > CONJUGACY_TOL {
            return Err(Error::Regime(format!("reciprocal sum misses 1 by {residual:e}")));
        }
        Ok(ExponentTuple { exponents, regime })
    }

    pub fn from_pair(pair: &ConjugatePair) -> Self {
        ExponentTuple { exponents: vec![pair.p, pair.q], regime: pair.regime }
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

/// The exponent parameters an evaluator consumes.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponents {
    /// Bernoulli carries its exponent inside the instance.
    None,
    Pair(ConjugatePair),
    Tuple(ExponentTuple),
    Power(f64),
    PowerRatio {
        p: f64,
        r: f64,
    },
}

impl Exponents {
    /// The leading exponent `p`, when there is one.
    pub fn leading(&self) -> Option<f64> {
        match self {
            Exponents::None => None,
            Exponents::Pair(pair) => Some(pair.p()),
            Exponents::Tuple(t) => t.exponents().first().copied(),
            Exponents::Power(p) | Exponents::PowerRatio { p, .. } => Some(*p),
        }
    }
}

/// Checks `0 < r < 1 < p`.
pub fn check_ratio_exponents(p: f64, r: f64) -> Result<()> {
    if p.is_finite() && r.is_finite() && 0.0 < r && r < 1.0 && 1.0 < p {
        Ok(())
    } else {
        Err(Error::Regime(format!("need 0 < r < 1 < p, got r = {r}, p = {p}")))
    }
}
