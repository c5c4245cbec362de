use alpha_ineq::certifier::{
    check_equality_manifold, halton, manifold_draws, manifold_point, minimize_gap, perturb_check, CertParams, Region,
};
use alpha_ineq::{InequalityId, Regime};

fn certifiable() -> Vec<(InequalityId, Regime)> {
    InequalityId::ALL
        .iter()
        .filter(|id| **id != InequalityId::Bernoulli)
        .flat_map(|id| id.regimes().iter().map(move |r| (*id, *r)))
        .collect()
}

#[test]
fn manifolds_are_sound_and_strict() {
    for (id, regime) in certifiable() {
        for i in 0..25 {
            let params = CertParams::sample(id, regime, 99, i).unwrap();
            let worst = check_equality_manifold(id, &params, 20).unwrap();
            assert!(worst <= 1e-8, "{id} {regime} {params:?}: {worst:e}");
            let d = manifold_draws(id, &params).unwrap();
            let point = manifold_point(id, &params, &halton(i + 7, d)).unwrap();
            assert!(perturb_check(id, &params, &point, 0.01).unwrap(), "{id} {regime} {params:?}");
            assert!(!perturb_check(id, &params, &point, 0.0).unwrap());
        }
    }
}

#[test]
fn converged_certificates_satisfy_the_condition() {
    for (id, regime) in certifiable() {
        let mut converged = 0;
        for i in 0..5 {
            let params = CertParams::sample(id, regime, 5, i).unwrap();
            let cert = minimize_gap(id, &params, Region::default(), 4, 3000).unwrap();
            assert!(cert.consistent(), "{id} {regime}: {cert:?}");
            converged += cert.converged as usize;
        }
        assert!(converged > 0, "{id} {regime}: no run converged");
    }
}

#[test]
fn certificates_are_deterministic() {
    let params = CertParams::sample(InequalityId::Holder, Regime::Holder, 3, 0).unwrap();
    let a = minimize_gap(InequalityId::Holder, &params, Region::default(), 6, 1500).unwrap();
    let b = minimize_gap(InequalityId::Holder, &params, Region::default(), 6, 1500).unwrap();
    assert_eq!(a, b);
}
