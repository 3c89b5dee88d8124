// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use qlike_cli::{execute, parse_scenario, Format, Overrides, Report, KINDS};

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn shipped() -> Vec<(String, String)> {
    let mut out: Vec<_> = std::fs::read_dir(scenario_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn json_overrides() -> Overrides {
    Overrides { format: Some(Format::Json), ..Default::default() }
}

fn run_json(text: &str) -> Report {
    let (out, _) = execute(text, &json_overrides()).unwrap();
    serde_json::from_str(&out).unwrap()
}

#[test]
fn every_shipped_scenario_round_trips() {
    let all = shipped();
    let mut kinds: Vec<String> = Vec::new();
    for (name, text) in &all {
        let s = parse_scenario(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        kinds.push(s.kind.clone());
        let (out, _) = execute(text, &json_overrides()).unwrap_or_else(|e| panic!("{name}: {e}"));
        let report: Report = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(report.kind, s.kind);
        assert_eq!(report.config_digest, s.digest);
        assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", out, "{name}");
    }
    for k in KINDS {
        assert!(kinds.iter().any(|x| x == k), "no shipped scenario for {k}");
    }
}

fn strip_header(text: &str) -> String {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("header");
    serde_json::to_string(&v).unwrap()
}

#[test]
fn reports_are_deterministic() {
    for (name, text) in shipped() {
        let (a, _) = execute(&text, &json_overrides()).unwrap();
        let (b, _) = execute(&text, &json_overrides()).unwrap();
        assert_eq!(strip_header(&a), strip_header(&b), "{name}");
    }
}

#[test]
fn seed_override_changes_sampled_chsh() {
    let text = std::fs::read_to_string(scenario_dir().join("chsh-sampled.json")).unwrap();
    let base = run_json(&text);
    let other = {
        let (out, _) = execute(&text, &Overrides { seed: Some(43), ..json_overrides() }).unwrap();
        serde_json::from_str::<Report>(&out).unwrap()
    };
    assert_eq!(base.seed, 42);
    assert_eq!(other.seed, 43);
    assert_ne!(base.result["E11"], other.result["E11"]);
    let s = other.result["S"].as_f64().unwrap();
    assert!((s - 2.0 * 2f64.sqrt()).abs() < 0.1);
}

#[test]
fn qqe_projective_pair_has_zero_residual() {
    let text = std::fs::read_to_string(scenario_dir().join("qqe.json")).unwrap();
    let r = run_json(&text);
    assert!(r.result["qq_residual"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(r.result["qq_equality"], true);
}

#[test]
fn rre_negative_verdict_is_a_result() {
    let text = std::fs::read_to_string(scenario_dir().join("rre.json")).unwrap();
    assert_eq!(run_json(&text).result["rre_holds"], false);
}

#[test]
fn gksl_csv_has_entropy_columns_and_camel_report() {
    let text = std::fs::read_to_string(scenario_dir().join("gksl.json")).unwrap();
    let (csv, _) = execute(&text, &Overrides::default()).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("time,S_vonNeumann,S_linear"));
    let data: Vec<&str> = csv.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 10_001);
    assert!(csv.contains("# hump_count,1\n"));
    assert!(csv.contains("# camel_shaped,true\n"));
    let peak = csv.lines().find(|l| l.starts_with("# peak,")).unwrap();
    assert!(peak.contains("time=0.693"), "{peak}");
}

#[test]
fn compound_trajectory_adds_subsystem_columns_and_state_dump() {
    let text = r#"{"kind":"gksl","inputs":{
        "hamiltonian":[[[0,0],[0,0],[0,0],[1,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[1,0],[0,0],[0,0],[0,0]]],
        "state":{"pure":[[1,0],[0,0],[0,0],[0,0]]},"t_end":0.5,"dt":0.1,"dims":[2,2],"dump_states":true}}"#;
    let (csv, _) = execute(text, &Overrides { format: Some(Format::Csv), ..Default::default() }).unwrap();
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["time", "S_vonNeumann", "S_linear", "S_A", "S_B", "rho"]);
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    let last = &rows[5];
    let rho: qlike::literal::MatrixLiteral = serde_json::from_str(&last[5]).unwrap();
    let m = rho.to_matrix::<f64>().unwrap();
    // XX rotates |00⟩ to cos t|00⟩ − i sin t|11⟩; dt = 0.1 leaves RK4 error near 1e-5
    assert!((m[(0, 0)].re - 0.5f64.cos().powi(2)).abs() < 1e-4);
    assert!((m[(0, 3)].im - 0.5f64.sin() * 0.5f64.cos()).abs() < 1e-4);
    let s_a: f64 = last[3].parse().unwrap();
    assert!(s_a > 0.5 && (s_a - last[4].parse::<f64>().unwrap()).abs() < 1e-12);
}

#[test]
fn non_trajectory_csv_is_key_value() {
    let text = std::fs::read_to_string(scenario_dir().join("chsh.json")).unwrap();
    let (csv, _) = execute(&text, &Overrides { format: Some(Format::Csv), ..Default::default() }).unwrap();
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.lines().any(|l| l.starts_with("S,2.82842712474")));
}

#[test]
fn schema_lists_every_kind() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/scenario.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let kinds: Vec<&str> =
        schema["properties"]["kind"]["enum"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    assert_eq!(kinds, KINDS);
}

fn qlike(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qlike")).args(args).output().unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let rre = scenario_dir().join("rre.json");
    let out = qlike(&["--config", rre.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = write_temp(&dir, "bad.json", r#"{"kind":"teleport","inputs":{}}"#);
    let out = qlike(&["--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("valid kinds"));

    let out = qlike(&["--config", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));

    let unstable = write_temp(
        &dir,
        "unstable.json",
        r#"{"kind":"gksl","inputs":{"hamiltonian":[[[0,0],[50,0]],[[50,0],[0,0]]],
            "jumps":[[[[0,0],[30,0]],[[0,0],[0,0]]]],"state":{"pure":[[0,0],[1,0]]},"t_end":50,"dt":0.5}}"#,
    );
    let out = qlike(&["--config", &unstable]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("smaller dt"));
}

#[test]
fn out_and_format_flags() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.csv");
    let cfg = scenario_dir().join("order-stability.json");
    let out = qlike(&["--config", cfg.to_str().unwrap(), "--out", target.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    assert!(text.starts_with("time,S_vonNeumann,S_A,S_B\n"));
    assert!(text.contains("# order_stable,true"));
}

#[test]
fn tolerance_flag_reaches_certification() {
    let cfg = scenario_dir().join("qqe.json");
    let out = qlike(&["--config", cfg.to_str().unwrap(), "--tolerance", "1e-20"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.tolerance, Some(1e-20));
    assert_eq!(r.result["tolerance"], 1e-20);
    let out = qlike(&["--config", cfg.to_str().unwrap(), "--tolerance", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}
