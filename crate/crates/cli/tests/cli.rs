use std::process::Command;

use alpha_ineq::harness::{generate_trial, run_trials, Trial};
use alpha_ineq::{AlphaPolicy, Dimension, InequalityId, ParamOverrides, Regime, SuiteConfig};
use alpha_ineq_cli::{ingest, run, EXIT_FOUND, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("alpha-ineq").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn verify_report_has_the_documented_fields() {
    let (code, out, _) = cli(&["verify", "holder", "--p", "3", "--trials", "200", "--seed", "5"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    for key in ["inequality", "variant", "regime", "alpha_policy", "trials", "tolerance", "seed", "status", "results"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["inequality"], "holder");
    assert_eq!(v["regime"], "holder");
    assert_eq!(v["status"], "verified");
    assert_eq!(v["results"]["violations"], 0);
    assert_eq!(v["trials"], 200);
}

#[test]
fn seed_from_environment_matches_the_flag() {
    let bin = env!("CARGO_BIN_EXE_alpha-ineq");
    let strip = |s: &[u8]| {
        String::from_utf8_lossy(s).lines().filter(|l| !l.contains("runtime_ms")).collect::<Vec<_>>().join("\n")
    };
    let by_env =
        Command::new(bin).args(["verify", "minkowski", "--trials", "50"]).env("ALPHA_INEQ_SEED", "11").output();
    let by_flag = Command::new(bin).args(["verify", "minkowski", "--trials", "50", "--seed", "11"]).output();
    let other = Command::new(bin).args(["verify", "minkowski", "--trials", "50", "--seed", "12"]).output();
    let (a, b, c) = (by_env.unwrap(), by_flag.unwrap(), other.unwrap());
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    assert_ne!(strip(&a.stdout), strip(&c.stdout));
}

#[test]
fn counterexample_reports_a_shrunk_instance() {
    let (code, out, _) =
        cli(&["counterexample", "minkowski-multi", "--variant", "as-written", "--trials", "100", "--seed", "3"]);
    assert_eq!(code, EXIT_FOUND);
    let v = json(&out);
    assert_eq!(v["status"], "violated");
    let ce = &v["results"]["counterexample"];
    assert!(ce.is_object(), "{v}");
    let rows = ce["trial"]["instance"]["rows"].as_array().or(ce["instance"]["rows"].as_array());
    if let Some(rows) = rows {
        let cells: usize = rows.iter().map(|r| r.as_array().unwrap().len()).sum();
        assert!(cells <= 4, "{ce}");
    }
}

#[test]
fn normalized_counterexample_search_finds_nothing() {
    let (code, out, _) = cli(&["counterexample", "young", "--trials", "500"]);
    assert_eq!(code, EXIT_OK);
    assert!(json(&out)["results"].get("counterexample").is_none_or(|c| c.is_null()));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "cauchy"][..],
        &["verify", "young", "--alpha", "0"],
        &["verify", "young", "--alpha", "1.5"],
        &["verify", "young", "--p", "1"],
        &["verify", "young", "--p", "2", "--q", "3"],
        &["verify", "young", "--variant", "as-written"],
        &["verify", "young", "--trials", "0"],
        &["sweep", "young", "--alpha", "0.5"],
        &["certify", "bernoulli"],
        &["verify", "young", "--y-domain", "below-one"],
    ] {
        let (code, _, err) = cli(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
}

#[test]
fn unwritable_output_exits_two() {
    let (code, out, err) = cli(&["verify", "young", "--trials", "10", "--out", "/nonexistent-dir/r.json"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("r.json"), "{err}");
}

#[test]
fn report_goes_to_the_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = cli(&["sweep", "minkowski", "--format", "csv", "--trials", "100", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let mut rd = csv::Reader::from_path(&path).unwrap();
    let headers = rd.headers().unwrap().clone();
    let status = headers.iter().position(|h| h == "status").unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| &r[status] == "verified"));
}

#[test]
fn file_instances_reproduce_the_generated_verdicts() {
    let dim = Dimension::new(0.5).unwrap();
    let cfg = SuiteConfig::new(InequalityId::Holder, Regime::Holder)
        .seed(9)
        .alpha(AlphaPolicy::Fixed(dim))
        .params(ParamOverrides { p: Some(3.0), ..Default::default() });
    // a file holds one shape; keep the length-3 instances
    let trials: Vec<Trial> =
        (0..2000).map(|i| generate_trial(&cfg, i).unwrap()).filter(|t| t.spec.instance.len() == 3).collect();
    assert!(trials.len() > 100);
    let expected = run_trials(&cfg, &trials).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("instances.csv");
    ingest::write_instances(&path, &trials.iter().map(|t| t.spec.clone()).collect::<Vec<_>>()).unwrap();
    let (code, out, err) = cli(&["verify", "holder", "--p", "3", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v = json(&out);
    assert_eq!(v["trials"], trials.len() as u64);
    assert_eq!(v["results"]["min_gap"].as_f64().unwrap(), expected.min_gap);
    assert_eq!(v["results"]["holds"], expected.holds as u64);
    assert_eq!(v["results"]["equality"], expected.equality as u64);
    assert_eq!(v["results"]["violations"], 0);
}

#[test]
fn bad_rows_are_reported_with_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "a,b\n1.0,2.0\n-3.0,1.0\n").unwrap();
    let (code, _, err) = cli(&["verify", "young", "--p", "2", "--alpha", "0.5", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn certify_passes_for_a_classical_family() {
    let (code, out, err) = cli(&["certify", "holder", "--trials", "3", "--restarts", "2", "--budget", "800"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert_eq!(json(&out)["status"], "certified");
}
