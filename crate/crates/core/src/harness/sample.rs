//! Samplers mapping uniform draws onto each inequality's parameter domain.

use crate::alpha::Dimension;
use crate::catalog::{ConjugatePair, ExponentTuple, Regime};
use crate::error::{Error, Result};

/// Smallest distance kept from the excluded exponents 0 and 1.
pub const EXPONENT_MARGIN: f64 = 1e-3;

fn check_open_unit(u: f64) -> Result<()> {
    if u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("uniform draw must lie in (0, 1), got {u}")))
    }
}

/// `α = 0.001 + 0.999·u`.
pub fn sample_dimension(u: f64) -> Result<Dimension> {
    check_open_unit(u)?;
    Dimension::new((0.001 + u * 0.999).min(1.0))
}

/// Holder regime: `p = 1 + u(p_max − 1)`, at least `1 + 10⁻³`. Reverse: `p = u` clamped to
/// `[10⁻³, 1 − 10⁻³]`. `q = p/(p − 1)` in both.
pub fn sample_conjugate_pair(regime: Regime, u: f64, p_max: f64) -> Result<ConjugatePair> {
    check_open_unit(u)?;
    if !(p_max > 1.0) {
        return Err(Error::Usage(format!("p_max must exceed 1, got {p_max}")));
    }
    ConjugatePair::from_p(sample_power(regime, u, p_max))
}

/// The `p` half of [`sample_conjugate_pair`].
pub(crate) fn sample_power(regime: Regime, u: f64, p_max: f64) -> f64 {
    match regime {
        Regime::Holder => (1.0 + u * (p_max - 1.0)).max(1.0 + EXPONENT_MARGIN),
        Regime::Reverse => u.clamp(EXPONENT_MARGIN, 1.0 - EXPONENT_MARGIN),
    }
}

/// Exponents with `Σ 1/p_i = 1` built from `n` uniform draws.
///
/// Holder: reciprocals proportional to `draw_i + 10⁻³`. Reverse: `1/p_1 = 1 + 999·draw_1`, and the
/// remaining (negative) deficit `1 − 1/p_1` is split over the other entries by the same weights.
pub fn sample_exponent_tuple(n: usize, regime: Regime, draws: &[f64]) -> Result<ExponentTuple> {
    if n < 2 || draws.len() != n {
        return Err(Error::Usage(format!("need n >= 2 and n draws (n = {n}, {} draws)", draws.len())));
    }
    draws.iter().try_for_each(|&u| check_open_unit(u))?;
    let weights = |d: &[f64]| d.iter().map(|u| u + EXPONENT_MARGIN).collect::<Vec<_>>();
    let exponents = match regime {
        Regime::Holder => {
            let w = weights(draws);
            let total: f64 = w.iter().sum();
            w.iter().map(|wi| total / wi).collect()
        }
        Regime::Reverse => {
            let inv_first = 1.0 + 999.0 * draws[0];
            let deficit = 1.0 - inv_first;
            let w = weights(&draws[1..]);
            let total: f64 = w.iter().sum();
            std::iter::once(1.0 / inv_first).chain(w.iter().map(|wi| total / (deficit * wi))).collect()
        }
    };
    ExponentTuple::new(exponents)
}

/// Log-uniform magnitudes on `[lo, hi]`.
pub fn sample_magnitudes(n: usize, draws: &[f64], lo: f64, hi: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Usage("cannot sample an empty magnitude vector".into()));
    }
    if draws.len() != n {
        return Err(Error::Usage(format!("{} draws for {n} magnitudes", draws.len())));
    }
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::Usage(format!("invalid magnitude range [{lo}, {hi}]")));
    }
    let (l, h) = (lo.ln(), hi.ln());
    Ok(draws.iter().map(|u| (l + u * (h - l)).exp()).collect())
}
