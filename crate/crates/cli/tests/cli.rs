use std::io::Write;
use std::process::{Command, Output};

fn chromax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chromax"))
        .args(args)
        .env_remove("CHROMAX_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let o = chromax(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn temp_graph(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("chromax-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

fn k33() -> std::path::PathBuf {
    temp_graph("k33.el", "6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n")
}

#[test]
fn count_k33() {
    let p = k33();
    let o = chromax(&["count", "--graph", p.to_str().unwrap(), "--q", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "42");
    let v = json(&["count", "--graph", p.to_str().unwrap(), "--q", "3"]);
    assert_eq!(v["count"], "42");
    assert_eq!(v["graph"], "EFz_");
}

#[test]
fn graph6_input_by_extension() {
    let p = temp_graph("k33.g6", "EFz_\n");
    let o = chromax(&["count", "--graph", p.to_str().unwrap(), "--q", "3"]);
    assert_eq!(stdout(&o).trim(), "42");
    let o = chromax(&["count", "--graph", p.to_str().unwrap(), "--t", "2"]);
    assert_eq!(stdout(&o).trim(), "9");
}

#[test]
fn opt_at_quarter_is_regime_two() {
    let v = json(&["opt", "--q", "3", "--gamma", "0.25"]);
    let value = v["value"].as_f64().unwrap();
    assert!((value - 2f64.ln() / 2.0).abs() < 1e-12);
    assert!((value - 0.34657).abs() < 1e-5);
    assert_eq!(v["regime"], "ii");
}

#[test]
fn sweep_q7() {
    let v = json(&["sweep", "--q", "7"]);
    assert_eq!(v["argmax"], "{1,6}");
    let rows = v["rows"].as_array().unwrap();
    let row = rows.iter().find(|r| r["partition"] == "{2,2,3}").unwrap();
    let value = row["value"].as_f64().unwrap();
    let (a, b) = ((7.0f64 / 3.0).ln(), (7.0f64 / 2.0).ln());
    assert!((value + (-a * a + 4.0 * a * b).sqrt()).abs() < 1e-6, "{value}");
    assert!((value + 1.88).abs() < 5e-3);
}

#[test]
fn sweep_csv_matches_json_rows() {
    let v = json(&["sweep", "--q", "5"]);
    let o = chromax(&["sweep", "--q", "5", "--output", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let rows = v["rows"].as_array().unwrap();
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(lines.next().unwrap(), keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(","));
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let records: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(rows) {
        assert_eq!(&rec[0], row["partition"].as_str().unwrap());
        assert_eq!(rec[1].parse::<f64>().unwrap(), row["value"].as_f64().unwrap());
    }
}

#[test]
fn search_k33() {
    let v = json(&["search", "--n", "6", "--m", "9", "--q", "3", "--mode", "max"]);
    assert_eq!(v["extremal_value"], "42");
    assert_eq!(v["witnesses"], serde_json::json!(["EFz_"]));
    let o = chromax(&["search", "--n", "6", "--m", "9", "--q", "3", "--mode", "max", "--dedup", "--threads", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("EFz_"));
}

#[test]
fn construct_round_trips_through_count() {
    let o = chromax(&["construct", "turan", "--n", "6", "--r", "2", "--format", "g6"]);
    assert_eq!(stdout(&o).trim(), "EFz_");
    let o = chromax(&["construct", "linial", "--n", "5", "--m", "4"]);
    let p = temp_graph("linial.el", &stdout(&o));
    let v = json(&["classify", "--graph", p.to_str().unwrap(), "--q", "3"]);
    assert!(v["tags"].as_array().unwrap().iter().any(|t| t == "linial"), "{v}");
    let v = json(&["construct", "galpha", "--n", "10", "--q", "3", "--alpha", "{1}=0.5,{2,3}=0.5"]);
    assert_eq!(v["m"], 25);
}

#[test]
fn chromatic_report() {
    let p = temp_graph("c4.el", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let v = json(&["chromatic", "--graph", p.to_str().unwrap()]);
    assert_eq!(v["polynomial"], "q^4 - 4q^3 + 6q^2 - 3q");
    assert_eq!(v["acyclic_orientations"], "14");
}

#[test]
fn verify_passes() {
    let o = chromax(&["verify", "--output", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("name,grid,worst_case,passed"));
    assert_eq!(text.lines().count(), 1 + 5);
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(chromax(&["count", "--q", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(chromax(&[]).status.code(), Some(2));
    assert_eq!(chromax(&["opt", "--q", "three", "--gamma", "0.1"]).status.code(), Some(2));
    // Domain errors.
    let o = chromax(&["opt", "--q", "3", "--gamma", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(chromax(&["count", "--graph", "/nonexistent/x.el", "--q", "3"]).status.code(), Some(1));
    let bad = temp_graph("bad.el", "3 1\n0 7\n");
    assert_eq!(chromax(&["count", "--graph", bad.to_str().unwrap(), "--q", "3"]).status.code(), Some(1));
    assert_eq!(chromax(&["construct", "turan", "--n", "5"]).status.code(), Some(1));
    assert_eq!(chromax(&["search", "--n", "9", "--m", "3", "--q", "3"]).status.code(), Some(1));
    assert_eq!(chromax(&["opt2", "--q", "4", "--partition", "1,2"]).status.code(), Some(1));
    assert_eq!(chromax(&["--help"]).status.code(), Some(0));
}
