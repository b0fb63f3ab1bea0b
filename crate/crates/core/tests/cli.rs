use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn wkfi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkfi")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const SMALL: &str = r#"{
  "name": "small",
  "dim": 2,
  "c1": { "sigma": 1.0, "rho": 0.0 },
  "c2": { "sigma": 1.5, "rho": 0.9 },
  "lambda1": 0.99,
  "grid": [{ "min": -2, "max": 2, "count": 21 }, { "min": -2, "max": 2, "count": 21 }]
}"#;

#[test]
fn scan_writes_outputs() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL);
    let out = dir.path().join("out");
    let o = wkfi(&["scan", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("grid.csv")).unwrap();
    assert!(csv.starts_with("t1,t2,sigma,lambda,f1,f2,in_s\n"));
    assert_eq!(csv.lines().count(), 1 + 21 * 21);
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["summary"]["improvement_verdict"], "improvement");
    assert_eq!(summary["config"]["lambda1"], 0.99);
    assert!(summary["tool_version"].is_string());
    assert!(summary["seed"].is_u64());
    let svg = fs::read_to_string(out.join("lambda.svg")).unwrap();
    assert!(svg.contains(r#"version="1.1""#) && svg.contains("<polyline"));
}

#[test]
fn equal_matrices_scan_to_zero() {
    let dir = TempDir::new().unwrap();
    let body = SMALL.replace(r#""sigma": 1.5, "rho": 0.9"#, r#""sigma": 1.0, "rho": 0.0"#);
    let cfg = write_config(dir.path(), "c.json", &body);
    let out = dir.path().join("out");
    assert_eq!(code(&wkfi(&["scan", "--config", &cfg, "--out", out.to_str().unwrap()])), 0);
    let mut reader = csv::Reader::from_path(out.join("grid.csv")).unwrap();
    for row in reader.records() {
        let row = row.unwrap();
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
        assert_eq!(&row[6], "1");
    }
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write_config(dir.path(), "bad.json", &SMALL.replace(r#""rho": 0.9"#, r#""rho": 1.2"#));
    let o = wkfi(&["classify", "--config", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("c2"));
    let junk = write_config(dir.path(), "junk.json", "{ not json");
    assert_eq!(code(&wkfi(&["classify", "--config", &junk])), 2);
    assert_eq!(code(&wkfi(&["check-1d", "--c1", "-1", "--c2", "1", "--lambda1", "0.5"])), 2);
    assert_eq!(code(&wkfi(&["scan", "--config", &bad])), 2);
}

#[test]
fn guard_exits_3() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", SMALL);
    let out = dir.path().join("out");
    let o = wkfi(&["scan", "--config", &cfg, "--out", out.to_str().unwrap(), "--window-scale", "200"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn io_errors_exit_4() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&wkfi(&["classify", "--config", missing.to_str().unwrap()])), 4);
    let cfg = write_config(dir.path(), "c.json", SMALL);
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    assert_eq!(code(&wkfi(&["scan", "--config", &cfg, "--out", out.to_str().unwrap()])), 4);
}

#[test]
fn classify_reports_both_conventions() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "d1.json",
        r#"{"dim": 1, "c1": {"rows": [[1.0]]}, "c2": {"rows": [[3.0]]}, "lambda1": 0.5,
            "grid": [{"min": -1, "max": 1, "count": 11}]}"#,
    );
    let o = wkfi(&["classify", "--config", &cfg]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let def = r["origin"]["hessian"][0][0].as_f64().unwrap();
    let printed = r["origin"]["paper_sign_hessian"][0][0].as_f64().unwrap();
    assert!((def + 0.2616240).abs() < 1e-7);
    assert!((printed - 0.2616240).abs() < 1e-7);
    assert_eq!(r["printed_origin_formula"], "disagree");
    assert_eq!(r["fd_agrees_with_definition"], true);
}

#[test]
fn oracle_verify_succeeds_and_names_variant() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "d1.json",
        r#"{"dim": 1, "c1": {"rows": [[1.0]]}, "c2": {"rows": [[1.0]]}, "lambda1": 0.5,
            "grid": [{"min": -1, "max": 1, "count": 3}]}"#,
    );
    let o = wkfi(&["oracle-verify", "--config", &cfg, "--order", "32"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["phi_matches"], "full-moment");
    assert_eq!(r["order"], 32);
}

#[test]
fn check_1d_runs() {
    let o = wkfi(&["check-1d", "--c1", "1", "--c2", "3", "--lambda1", "0.5", "--t-max", "2", "--n", "41"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((r["second_derivative_printed"].as_f64().unwrap() - 0.2616240).abs() < 1e-7);
    assert_eq!(r["profile"].as_array().unwrap().len(), 41);
    let o = wkfi(&["check-1d", "--c1", "0.05", "--c2", "0.15", "--lambda1", "0.5"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["unbounded_heuristic_fires"], true);
}

#[test]
fn figures_writes_manifest_and_reports_unmet() {
    let dir = TempDir::new().unwrap();
    let o = wkfi(&["figures", "--out", dir.path().to_str().unwrap()]);
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    let figures = m["figures"].as_array().unwrap();
    assert_eq!(figures.len(), 5);
    assert_eq!(m["total_theorem_violations"], 0);
    let expected = if m["all_met"] == true { 0 } else { 5 };
    assert_eq!(code(&o), expected);
    for f in figures {
        let name = f["name"].as_str().unwrap();
        assert!(dir.path().join(name).join("grid.csv").exists());
        assert!(f["provenance"].as_str().unwrap().starts_with("reconstruction"));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&wkfi(&["scan"])), 2);
    assert_eq!(code(&wkfi(&["nonsense"])), 2);
    assert_eq!(code(&wkfi(&["--help"])), 0);
}
