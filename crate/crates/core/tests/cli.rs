//! End-to-end runs of the `isopoly` binary: exit codes, output documents
//! against the shipped schema, `--config` overrides and CSV output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isopoly"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/isopoly.schema.json")
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(schema_path()).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn document(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let doc: Value = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {text}"));
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "schema errors: {errors:#?}\n{text}");
    doc
}

#[test]
fn spectrum_regular_pentagon() {
    let out = run(&["spectrum", "--N", "5", "--d", "2", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    assert_eq!(doc["metadata"]["command"], "spectrum");
    assert!(doc["result"]["eps1"].as_f64().unwrap() < 0.0);
    let v = &doc["result"]["eigvec"];
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn no_spectrum_exit_code_and_alpha_crit() {
    let out = run(&["spectrum", "--N", "6", "--d", "3", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(4));
    let doc = document(&out);
    assert_eq!(doc["error"]["kind"], "no_discrete_spectrum");
    assert_eq!(doc["error"]["exit_code"], 4);
    let crit = doc["error"]["alpha_crit"].as_f64().unwrap();
    assert!(crit < 2.0 && crit > 0.0);
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["spectrum", "--alpha", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let out = run(&["spectrum", "--polygon", "{\"d\": 2", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = document(&out);
    assert_eq!(doc["error"]["kind"], "usage");
    let out = run(&["diagonals", "--N", "6", "--d", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn open_polygon_is_rejected() {
    let poly = r#"{"d": 2, "l": 1.0, "vertices": [[0,0],[1,0],[2,0],[3,0]]}"#;
    let out = run(&["diagonals", "--polygon", poly]);
    assert_eq!(out.status.code(), Some(2));
    document(&out);
}

#[test]
fn kappa_grid_csv_has_100_increasing_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let out = run(&[
        "spectrum", "--N", "5", "--alpha", "0", "--grid", "1e-2:1e2:100", "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    document(&out);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let rows: Vec<(f64, f64)> = reader.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 100);
    assert!(rows.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"N": 8, "alpha": -0.5, "threads": 2}"#).unwrap();
    let out = run(&[
        "spectrum", "--N", "5", "--alpha", "0", "--config", cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    assert_eq!(doc["result"]["N"], 8);
    assert_eq!(doc["result"]["alpha"], -0.5);
    assert_eq!(doc["metadata"]["threads"], 2);
    assert_eq!(doc["metadata"]["config"]["N"], 8);

    std::fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    let out = run(&["spectrum", "--N", "5", "--alpha", "0", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    document(&out);
}

#[test]
fn threads_flag_is_recorded() {
    let out = run(&["--threads", "3", "verify", "p2", "--N", "6", "--samples", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    assert_eq!(doc["metadata"]["threads"], 3);
    assert_eq!(run(&["--threads", "0", "sample", "--N", "5"]).status.code(), Some(2));
}

#[test]
fn runs_are_deterministic() {
    let args = ["search", "--objective", "D2", "--N", "6", "--restarts", "3", "--budget", "300", "--seed", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let one = run(&["--threads", "1", "sample", "--N", "7", "--count", "3", "--seed", "2"]);
    let many = run(&["--threads", "4", "sample", "--N", "7", "--count", "3", "--seed", "2"]);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["metadata"]["threads"] = Value::Null;
        v
    };
    assert_eq!(strip(&one), strip(&many));
}

#[test]
fn diagonals_of_square_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let poly = r#"{"d": 2, "l": 1.0, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#;
    let out = run(&["diagonals", "--polygon", poly, "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    let row = &doc["result"]["diagonals"][0];
    assert_eq!(row["m"], 2);
    assert!((row["total"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("m,count,total,mean,regular_total,gap"));
}

#[test]
fn angle_chart_input() {
    let q = std::f64::consts::FRAC_PI_2;
    let poly = format!(r#"{{"N": 4, "l": 2.0, "phi": 0.0, "beta": [{q},{q},{q},{q}], "w": 1}}"#);
    let out = run(&["diagonals", "--polygon", &poly]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    assert!((doc["result"]["diagonals"][0]["mean"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn verify_suites_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = run(&["verify", "sweeps", "--Nmax", "30", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    assert_eq!(doc["result"]["sweep"]["passed"], true);
    let rows = csv::Reader::from_path(&csv).unwrap().records().count();
    assert_eq!(rows, doc["result"]["sweep"]["triples"].as_u64().unwrap() as usize);

    let out = run(&["verify", "local", "--N", "6", "--d", "2", "--m", "2", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    assert_eq!(doc["result"]["increases"], 0);

    let out = run(&["verify", "stationarity", "--N", "9", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(document(&out)["result"].as_array().unwrap().len(), 3);

    let out = run(&["verify", "p2", "--N", "10", "--samples", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(document(&out)["result"]["violations"], 0);
}

#[test]
fn search_recovers_square_and_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("trace.csv");
    let out = run(&[
        "search", "--objective", "D2", "--N", "4", "--restarts", "4", "--budget", "500", "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    let r = &doc["result"];
    assert_eq!(r["verdict"], "regular-optimal-so-far");
    assert!(r["gap"].as_f64().unwrap().abs() < 1e-8);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("chain,iteration,evaluations,phase,objective"));
}

#[test]
fn spectral_search_in_the_plane() {
    let out = run(&[
        "search", "--objective", "eps1", "--N", "5", "--alpha", "0", "--d", "2", "--restarts", "2",
        "--budget", "400",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    assert!(doc["result"]["gap"].as_f64().unwrap() > -1e-8);
}

#[test]
fn sample_with_angles() {
    let out = run(&["sample", "--N", "6", "--count", "2", "--angles", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = document(&out);
    let items = doc["result"].as_array().unwrap();
    assert_eq!(items.len(), 2);
    assert_eq!(items[0]["angles"]["N"], 6);
    assert_eq!(run(&["sample", "--N", "6", "--d", "3", "--angles"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.json");
    let out = run(&["sample", "--N", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(validator().is_valid(&doc));
}

#[test]
fn schema_rejects_malformed_documents() {
    let out = run(&["spectrum", "--N", "4", "--alpha", "0"]);
    let mut doc = document(&out);
    let v = validator();
    doc["result"]["eps1"] = Value::from(0.5);
    assert!(!v.is_valid(&doc));
    doc["result"]["eps1"] = Value::from(-0.5);
    assert!(v.is_valid(&doc));
    doc["metadata"]["command"] = Value::from("frobnicate");
    assert!(!v.is_valid(&doc));
    let err = serde_json::json!({"tool": "isopoly", "version": "0", "error": {"kind": "usage", "message": "x"}});
    assert!(!v.is_valid(&err));
}
