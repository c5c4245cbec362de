use alpha_ineq::catalog::{classical_reduce, Paired};
use alpha_ineq::harness::{generate_trial, BernoulliDomain};
use alpha_ineq::{
    evaluate, Dimension, Exponents, FormVariant, InequalityId, InstanceSpec, Regime, Status, SuiteConfig,
};
use proptest::prelude::*;

fn id_regime() -> impl Strategy<Value = (InequalityId, Regime)> {
    let pairs: Vec<(InequalityId, Regime)> =
        InequalityId::ALL.iter().flat_map(|id| id.regimes().iter().map(move |r| (*id, *r))).collect();
    proptest::sample::select(pairs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn normalized_forms_never_fail((id, regime) in id_regime(), seed: u64, index in 0u64..1000) {
        let mut cfg = SuiteConfig::new(id, regime).seed(seed);
        if id == InequalityId::Bernoulli {
            // only the m < 1 claim holds for every admissible y, and only from y = 1 on
            prop_assume!(regime == Regime::Holder);
            cfg = cfg.bernoulli_domain(BernoulliDomain::AtLeastOne);
        }
        let trial = generate_trial(&cfg, index)?;
        let v = trial.evaluate(id, FormVariant::Normalized, &cfg.tol)?;
        prop_assert!(!v.is_violation(), "{id} {regime}: {trial:?} -> {v:?}");
    }

    #[test]
    fn reduction_preserves_the_gap((id, regime) in id_regime(), seed: u64, index in 0u64..1000) {
        prop_assume!(id != InequalityId::Bernoulli);
        let cfg = SuiteConfig::new(id, regime).seed(seed);
        let trial = generate_trial(&cfg, index)?;
        let v = evaluate(id, FormVariant::Normalized, &trial.spec, &trial.exponents)?;
        let reduced = classical_reduce(&trial.spec)?;
        prop_assert_eq!(reduced.dim, Dimension::ONE);
        let w = evaluate(id, FormVariant::Normalized, &reduced, &trial.exponents)?;
        // sides beyond f64 range come back infinite on both paths; their relative gaps must still agree
        let same = if v.gap.is_infinite() { v.gap == w.gap } else { (v.gap - w.gap).abs() <= 1e-9 * v.scale };
        prop_assert!(same && (v.rel_gap - w.rel_gap).abs() <= 1e-9, "{:?} vs {:?}", v, w);
    }

    #[test]
    fn paired_status_is_scale_invariant(
        x in proptest::collection::vec(1e-2f64..1e2, 1..6),
        seed in proptest::collection::vec(1e-2f64..1e2, 6),
        t in 1e-2f64..1e2,
        alpha in 0.05f64..=1.0,
        p in 1.05f64..8.0,
    ) {
        let y = seed[..x.len()].to_vec();
        let dim = Dimension::new(alpha).unwrap();
        let scaled = |k: f64| InstanceSpec::new(dim, Paired { x: x.iter().map(|v| v * k).collect(), y: y.iter().map(|v| v * k).collect() });
        let pair = alpha_ineq::ConjugatePair::from_p(p).unwrap();
        for (id, e, power) in [
            (InequalityId::Holder, Exponents::Pair(pair), 2.0),
            (InequalityId::Minkowski, Exponents::Power(p), 1.0),
        ] {
            let a = evaluate(id, FormVariant::Normalized, &scaled(1.0), &e)?;
            let b = evaluate(id, FormVariant::Normalized, &scaled(t), &e)?;
            let f = t.powf(power * alpha);
            prop_assert!((b.lhs - f * a.lhs).abs() <= 1e-10 * b.lhs.abs().max(1e-300));
            prop_assert!((b.rhs - f * a.rhs).abs() <= 1e-10 * b.rhs.abs().max(1e-300));
            prop_assert_eq!(a.status == Status::Violation, b.status == Status::Violation);
        }
    }
}

#[test]
fn zero_sequences_meet_with_equality() {
    let dim = Dimension::new(0.5).unwrap();
    let spec = InstanceSpec::new(dim, Paired { x: vec![0.0, 0.0], y: vec![1.0, 2.0] });
    let v = evaluate(InequalityId::Minkowski, FormVariant::Normalized, &spec, &Exponents::Power(3.0)).unwrap();
    assert_eq!(v.status, Status::Equality);
}
