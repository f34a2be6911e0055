use std::collections::BTreeSet;
use std::fs;
use std::process::Command;

use serde_json::json;

use cutmet_cli::report::ExportRecord;
use cutmet_cli::{parse_checks, run, run_verify, CheckId, Outcome, RunConfig, VerificationReport};

fn config(n_min: usize, n_max: usize, checks: &str) -> RunConfig {
    RunConfig {
        n_min,
        n_max,
        checks: parse_checks(checks).unwrap(),
        ..RunConfig::default()
    }
}

#[test]
fn n5_all_checks_pass() {
    let report = run_verify(&config(5, 5, "all"));
    assert_eq!(report.summary.failed, 0, "{}", report.to_text());
    assert_eq!(report.summary.errors, 0, "{}", report.to_text());
    // reflect4 only runs at n = 4
    assert_eq!(report.summary.total, 12);
    assert_eq!(report.summary.passed, 12);
    let aut = report.find(CheckId::Aut, 5).unwrap();
    assert_eq!(aut.details["aut_order"], json!("120"));
    let t1 = report.find(CheckId::Theorem1, 5).unwrap();
    assert_eq!(t1.details["aut_order"], json!("120"));
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn n4_reports_both_orders_144() {
    let report = run_verify(&config(4, 4, "all"));
    assert_eq!(report.exit_code(), 0, "{}", report.to_text());
    let t1 = report.find(CheckId::Theorem1, 4).unwrap();
    assert_eq!(t1.outcome, Outcome::Pass);
    assert_eq!(t1.details["aut_order"], json!("144"));
    let r4 = report.find(CheckId::Reflect4, 4).unwrap();
    assert_eq!(r4.outcome, Outcome::Pass);
    assert_eq!(r4.details["matrix_order"], json!(144));
    for id in [CheckId::Gamma, CheckId::Johnson] {
        assert_eq!(report.find(id, 4).unwrap().outcome, Outcome::Skipped);
    }
}

#[test]
fn n6_gamma_reports_order_pair() {
    let report = run_verify(&config(6, 6, "gamma"));
    assert_eq!(report.checks.len(), 1);
    let g = &report.checks[0];
    assert_eq!(g.outcome, Outcome::Pass, "{:?}", g.message);
    assert_eq!(g.details["aut_gamma"], json!("1440"));
    assert_eq!(g.details["aut_complement"], json!("720"));
    assert_eq!(g.details["antipodal_pairing"], json!(true));
}

#[test]
fn reflect4_absent_outside_n4() {
    let report = run_verify(&config(5, 6, "reflect4,cuts"));
    let ids: BTreeSet<CheckId> = report.checks.iter().map(|c| c.id).collect();
    assert_eq!(ids, BTreeSet::from([CheckId::Cuts]));
}

#[test]
fn records_follow_n_then_check_order() {
    let report = run_verify(&config(4, 6, "incidence,cuts"));
    let order: Vec<(CheckId, usize)> = report.checks.iter().map(|c| (c.id, c.n)).collect();
    assert_eq!(
        order,
        vec![
            (CheckId::Cuts, 4),
            (CheckId::Incidence, 4),
            (CheckId::Cuts, 5),
            (CheckId::Incidence, 5),
            (CheckId::Cuts, 6),
            (CheckId::Incidence, 6),
        ]
    );
}

#[test]
fn deterministic_apart_from_timing() {
    let c = config(4, 6, "all");
    let a = run_verify(&c).without_timing().to_json();
    let b = run_verify(&c).without_timing().to_json();
    assert_eq!(a, b);
}

#[test]
fn json_round_trip() {
    let mut report = run_verify(&config(4, 5, "cuts,aut,reflect4,gamma"));
    report.export = Some(ExportRecord {
        directory: "out".into(),
        files: vec!["g4.g6".into()],
        error: None,
    });
    let text = report.to_json();
    let back = VerificationReport::from_json(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.to_json(), text);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["schema_version"], json!(1));
    assert_eq!(value["checks"][0]["id"], json!("cuts"));
}

#[test]
fn resource_cap_is_an_error_not_a_failure() {
    let mut c = config(5, 6, "aut");
    c.aut_vertex_cap = 40;
    let report = run_verify(&c);
    assert_eq!(report.find(CheckId::Aut, 5).unwrap().outcome, Outcome::Pass);
    let capped = report.find(CheckId::Aut, 6).unwrap();
    assert_eq!(capped.outcome, Outcome::Error);
    assert!(capped.message.as_ref().unwrap().contains("cap"));
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn text_table_has_one_row_per_record() {
    let report = run_verify(&config(4, 5, "cuts,facets"));
    let text = report.to_text();
    let rows = text
        .lines()
        .filter(|l| l.starts_with("cuts ") || l.starts_with("facets "))
        .count();
    assert_eq!(rows, 4);
    assert!(text.contains("summary: 4 checks, 4 passed, 0 failed, 0 errors, 0 skipped"));
}

#[test]
fn export_n5_and_n4() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(4, 5, "cuts");
    c.export_dir = Some(dir.path().to_path_buf());
    let report = run(&c);
    let export = report.export.as_ref().unwrap();
    assert!(export.error.is_none(), "{:?}", export.error);
    assert_eq!(report.exit_code(), 0);

    for stem in ["g5", "gbar5", "gamma5"] {
        assert!(dir.path().join(format!("{stem}.g6")).is_file());
        assert!(dir.path().join(format!("{stem}.edges")).is_file());
    }
    assert!(!dir.path().join("gamma4.g6").exists());
    let m4: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest4.json")).unwrap())
            .unwrap();
    assert_eq!(m4["omitted"][0]["graph"], json!("triangle"));
    let m5: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest5.json")).unwrap())
            .unwrap();
    assert_eq!(m5["graphs"].as_object().unwrap().len(), 3);
    assert_eq!(m5["graphs"]["triangle"]["vertices"], json!(10));

    // graph6 and edge list decode to the same graph as the labels describe
    let g6 = fs::read_to_string(dir.path().join("gamma5.g6")).unwrap();
    let gamma = cutmet_core::Graph::from_graph6(g6.trim()).unwrap();
    assert_eq!(gamma.regular_degree(), Some(6));
    let edges = fs::read_to_string(dir.path().join("gamma5.edges")).unwrap();
    assert_eq!(edges.lines().count(), gamma.edge_count());
    let labels = fs::read_to_string(dir.path().join("facets5.labels")).unwrap();
    let mut lines = labels.lines();
    assert_eq!(lines.next(), Some("# vertex i j k facet"));
    assert_eq!(lines.next(), Some("0 1 2 3 T(12;3)"));
    assert_eq!(lines.count(), 29);
}

#[test]
fn unwritable_export_dir_leaves_checks_intact() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let mut c = config(5, 5, "cuts,facets");
    c.export_dir = Some(blocker.join("sub"));
    let report = run(&c);
    assert_eq!(report.summary.passed, 2);
    let err = report.export.as_ref().unwrap().error.as_ref().unwrap();
    assert!(err.contains("sub"), "{err}");
    assert_eq!(report.exit_code(), 2);
}

fn cutmet(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cutmet"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn binary_exit_codes() {
    let ok = cutmet(&[
        "verify",
        "--n-min",
        "5",
        "--n-max",
        "5",
        "--checks",
        "cuts,theorem1",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("theorem1"));

    let bad_range = cutmet(&["verify", "--n-min", "3", "--n-max", "5"]);
    assert_eq!(bad_range.status.code(), Some(2));
    let bad_check = cutmet(&["verify", "--checks", "nope"]);
    assert_eq!(bad_check.status.code(), Some(2));
    let bad_format = cutmet(&["verify", "--format", "xml"]);
    assert_eq!(bad_format.status.code(), Some(2));

    let capped = cutmet(&[
        "verify",
        "--n-min",
        "5",
        "--n-max",
        "5",
        "--checks",
        "aut",
        "--aut-vertex-cap",
        "10",
    ]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn binary_json_output_parses() {
    let out = cutmet(&[
        "verify", "--n-min", "4", "--n-max", "4", "--checks", "reflect4", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = VerificationReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.checks.len(), 1);
    assert_eq!(report.checks[0].outcome, Outcome::Pass);
}
