use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use sandwich_cli::{parse_config, run, CheckVerdict, ConfigError, Suite, SuiteVerdict};
use sandwich_core::chevgroup::{ModelKind, ParabolicBlocks, DEFAULT_CAP};
use serde_json::Value;

fn sandwich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sandwich")).args(args).output().expect("binary runs")
}

fn read_report(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn minimal_config_gets_defaults() {
    let cfg = parse_config(b"model = \"SL3\"\nmodulus = 4\n").unwrap();
    assert_eq!(cfg.suite, Suite::All);
    assert_eq!(cfg.cap, DEFAULT_CAP);
    assert_eq!(cfg.jobs, 0);
    assert_eq!(cfg.models.len(), 1);
    let m = &cfg.models[0];
    assert_eq!((m.kind, m.degree, m.modulus), (ModelKind::Sl, 3, 4));
    assert_eq!(m.parabolic, ParabolicBlocks::Sl(vec![1, 1, 1]));
    assert!(!m.expect_violation);
    assert_eq!(cfg.relroots.max_rank, 5);
}

#[test]
fn suite_options_nest_one_level() {
    let text = b"suite = \"group\"\nmodel = \"Sp4\"\nmod = 3\nblocks = \"siegel\"\n\n[group]\ntriples = 10\nextra_moduli = [9]\n";
    let cfg = parse_config(text).unwrap();
    assert_eq!(cfg.suite, Suite::Group);
    assert_eq!(cfg.group.triples, 10);
    assert_eq!(cfg.group.pairs, 100);
    assert_eq!(cfg.group.extra_moduli, vec![9]);
    let cfg = parse_config(b"model = \"SL4\"\nmodulus = 2\nblocks = [2, 2]\n").unwrap();
    assert_eq!(cfg.models[0].parabolic, ParabolicBlocks::Sl(vec![2, 2]));
}

#[test]
fn modulus_one_is_rejected() {
    assert_eq!(parse_config(b"model = \"SL3\"\nmodulus = 1\n").unwrap_err(), ConfigError::Modulus(1));
    let out = sandwich(&["group", "--model", "SL3", "--mod", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_lists_valid_ones() {
    let err = parse_config(b"suite = \"everything\"\n").unwrap_err();
    let msg = err.to_string();
    for name in Suite::NAMES {
        assert!(msg.contains(name), "{msg}");
    }
}

#[test]
fn malformed_input_is_a_parse_error() {
    assert!(matches!(parse_config(b"model = \n"), Err(ConfigError::Parse(_))));
    assert!(matches!(parse_config(b"colour = \"red\"\n"), Err(ConfigError::Parse(_))));
    assert!(matches!(parse_config(b"model = \"SL3\"\n"), Err(ConfigError::IncompleteModel)));
    assert!(matches!(parse_config(b"model = \"SL3\"\nmodulus = 2\nblocks = \"1;2\"\n"), Err(ConfigError::Blocks(_))));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "suite = [").unwrap();
    let out = sandwich(&["all", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed config"));
}

#[test]
fn oversized_group_exits_with_size_error() {
    let out = sandwich(&["group", "--model", "SL4", "--mod", "3", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn negative_control_without_a_violation_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = sandwich(&["group", "--model", "SL3", "--mod", "3", "--expect-violation", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = read_report(&path);
    assert_eq!(report["verdict"], "fail");
    let control = report["checks"].as_array().unwrap().iter().find(|c| c["suite"] == "control").unwrap();
    assert_eq!(control["verdict"], "fail");
}

#[test]
fn relroots_suite_passes_quickly() {
    let start = Instant::now();
    let out = sandwich(&["relroots"]);
    assert!(start.elapsed() < Duration::from_secs(10));
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["verdict"], "pass");
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["suite"] == "relroots"));
}

#[test]
fn sandwich_sl3_mod4_lists_every_orbit() {
    let cfg = parse_config(b"suite = \"sandwich\"\nmodel = \"SL3\"\nmodulus = 4\n").unwrap();
    let report = run(&cfg).unwrap();
    assert_eq!(report.verdict, SuiteVerdict::Pass);
    let classification = report.checks.iter().find(|c| c.name == "sandwich classification").unwrap();
    assert_eq!(classification.anchor, "Theorem main");
    let orbits = classification.witness.as_array().unwrap();
    assert!(!orbits.is_empty());
    assert!(orbits.iter().all(|o| o["verdict"] == "unique"));
    assert!(report.checks.iter().all(|c| !c.anchor.is_empty()));
}

#[test]
fn sp4_mod2_records_expected_exceptions() {
    let cfg = parse_config(b"suite = \"sandwich\"\nmodel = \"Sp4\"\nmodulus = 2\nexpect_violation = true\n").unwrap();
    let report = run(&cfg).unwrap();
    assert_eq!(report.verdict, SuiteVerdict::Pass);
    assert!(!report.hypotheses[0].passes);
    let perfect = report.checks.iter().find(|c| c.name == "perfectness").unwrap();
    assert_eq!(perfect.verdict, CheckVerdict::ExpectedException);
    assert_eq!(perfect.witness["derived_index"], 2);
    assert!(report.summary.expected_exceptions > 0);
}

#[test]
fn identical_configs_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "suite = \"all\"\nmodel = \"SL3\"\nmodulus = 4\n\n[group]\ntriples = 200\n").unwrap();
    let mut bodies = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("r{k}.json"));
        let status = sandwich(&["all", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(status.status.code(), Some(0));
        let text = std::fs::read_to_string(&out).unwrap();
        // The timing block is the last key of the document.
        let cut = text.find("\n  \"timing\"").unwrap();
        bodies.push(text[..cut].to_string());
        assert!(read_report(&out)["timing"]["total_seconds"].is_number());
    }
    assert_eq!(bodies[0], bodies[1]);
}
