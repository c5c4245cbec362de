//! Log-domain accumulation for power sums whose terms leave the `f64` range.

/// `ln(e^a + e^b)`; `-inf` acts as the log of zero.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ e^{t}` over the iterator.
pub(crate) fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let hi = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == f64::NEG_INFINITY || hi.is_nan() {
        return hi;
    }
    hi + terms.iter().map(|t| (t - hi).exp()).sum::<f64>().ln()
}

/// `ln Σ e^{k·l}` for log-magnitudes `l`.
pub(crate) fn ln_power_sum(logs: &[f64], k: f64) -> f64 {
    log_sum_exp(logs.iter().map(|l| k * l))
}

/// `ln (Σ v^p / Σ v^r)^{1/(p-r)}` for log-magnitudes of `v`.
pub(crate) fn ln_power_ratio(logs: &[f64], p: f64, r: f64) -> f64 {
    (ln_power_sum(logs, p) - ln_power_sum(logs, r)) / (p - r)
}
