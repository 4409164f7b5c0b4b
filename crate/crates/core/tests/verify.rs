use std::process::Command;

use qball::verify::{run_suite, Suite, SuiteConfig};
use qball::CheckReport;

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("bogus".parse::<Suite>().is_err());
}

#[test]
fn invalid_configs() {
    let bad_n = SuiteConfig { n: 5, ..SuiteConfig::default() };
    assert!(bad_n.validate().is_err());
    let mut bad_key = SuiteConfig::default();
    bad_key.tolerances.insert("nope".into(), 1.0);
    assert!(bad_key.validate().is_err());
    let deep = SuiteConfig { degree: 9, ..SuiteConfig::default() };
    assert!(deep.validate().is_err());
}

#[test]
fn cheap_suites_pass_and_write_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let cfg = SuiteConfig {
        trunc: 4,
        suites: vec![Suite::Vacuum, Suite::Basis, Suite::FockOracle, Suite::Coherent],
        out: Some(out.clone()),
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg).unwrap();
    assert!(report.pass, "{}", report.to_json());
    let saved: CheckReport = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let key = |r: &CheckReport| r.checks.iter().map(|c| (c.name.clone(), c.residual, c.pass)).collect::<Vec<_>>();
    assert_eq!(key(&saved), key(&report));
    assert_eq!(saved.config, report.config);
    assert!(saved.checks.iter().all(|c| c.name.contains(": ")));
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("vacuum.json");
    let status = Command::new(env!("CARGO_BIN_EXE_qball"))
        .args(["vacuum,dilation", "--n", "2", "--trunc", "4", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let report: CheckReport = serde_json::from_slice(&status.stdout).unwrap();
    assert_eq!(report.config.trunc, 4);
    assert!(out.exists());

    let unknown = Command::new(env!("CARGO_BIN_EXE_qball")).arg("nonsense").output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));

    let negative = Command::new(env!("CARGO_BIN_EXE_qball"))
        .args(["relations", "--tol", "relations=-1"])
        .output()
        .unwrap();
    assert_eq!(negative.status.code(), Some(2));
}
