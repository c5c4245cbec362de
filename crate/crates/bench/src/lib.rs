//! Fixed workloads shared by the benchmarks.

use alpha_ineq::harness::{generate_trial, Trial};
use alpha_ineq::{InequalityId, Regime, SuiteConfig};

/// The first `n` holder-regime trials of `id` under seed 0.
pub fn trials(id: InequalityId, n: u64) -> Vec<Trial> {
    let cfg = SuiteConfig::new(id, Regime::Holder);
    (0..n).map(|i| generate_trial(&cfg, i).expect("default config is valid")).collect()
}

/// Every inequality except Bernoulli, which has no holder-regime generator without a domain.
pub fn families() -> impl Iterator<Item = InequalityId> {
    InequalityId::ALL.into_iter().filter(|id| *id != InequalityId::Bernoulli)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_evaluate() {
        for id in families() {
            for t in trials(id, 5) {
                t.evaluate(id, Default::default(), &Default::default()).unwrap();
            }
        }
    }
}
