use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn rgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgt"))
        .args(args)
        .env_remove("RGT_CONFIG")
        .output()
        .expect("rgt runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn compute_csv() {
    let o = rgt(&["compute", "--a", "0.5", "--xi", "0", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a_re,a_im,xi,method,value_re,value_im,err_est,evals,status"));
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields.len(), 9);
    assert_eq!(fields[8], "ok");
    let v: f64 = fields[4].parse().unwrap();
    assert!((v - std::f64::consts::PI).abs() < 1e-13);
    assert!(lines.next().is_none());
}

#[test]
fn compute_timing_column() {
    let o = rgt(&["compute", "--a", "1", "--xi", "0.5"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with(",seconds"));
}

#[test]
fn compute_json_strip() {
    let o = rgt(&["compute", "--a=-0.5", "--xi=0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["meta"]["command"], "compute");
    let row = &v["rows"][0];
    let value: f64 = row["value_re"].as_str().unwrap().parse().unwrap();
    assert!((value - 4.0 * std::f64::consts::PI * std::f64::consts::LN_2).abs() < 1e-8);
    assert_eq!(row["status"], "ok");
}

#[test]
fn exit_codes() {
    let domain = rgt(&["compute", "--a", "0.3i", "--xi", "1"]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("excluded line"));
    assert!(domain.stdout.is_empty());

    assert_eq!(rgt(&["compute", "--a", "-3.5", "--xi", "0"]).status.code(), Some(2));
    assert_eq!(rgt(&["compute", "--a", "foo", "--xi", "0"]).status.code(), Some(1));
    assert_eq!(rgt(&["compute", "--xi", "0"]).status.code(), Some(1));
    assert_eq!(rgt(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rgt(&["compute", "--a", "1", "--xi", "0", "--rel-tol", "-1"]).status.code(), Some(1));
    assert_eq!(rgt(&["--help"]).status.code(), Some(0));
    assert_eq!(rgt(&["--version"]).status.code(), Some(0));
}

#[test]
fn sweep_partial_failure() {
    let o = rgt(&["sweep", "--a=1,0.2i", "--xi-lo=0", "--xi-hi=1", "--xi-steps=2", "--no-timing"]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows.iter().filter(|r| r.ends_with(",ok")).count(), 2);
    assert_eq!(rows.iter().filter(|r| r.ends_with(",domain")).count(), 2);
}

#[test]
fn sweep_grid_order() {
    let o = rgt(&["sweep", "--a=1,2", "--xi-lo=-1", "--xi-hi=1", "--xi-steps=3", "--methods=closed,direct", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 12);
    let xi: Vec<f64> = rows.iter().take(6).map(|r| r[2].parse().unwrap()).collect();
    assert!(xi.contains(&-1.0) && xi.contains(&0.0) && xi.contains(&1.0));
    for pair in rows.chunks(2) {
        let (a, b): (f64, f64) = (pair[0][4].parse().unwrap(), pair[1][4].parse().unwrap());
        assert!((a - b).abs() <= 1e-8 * a.abs(), "{pair:?}");
    }
}

#[test]
fn config_file_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rgt.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# test config\nrel_tol = 1e-6\nformat = json\nno_timing = true").unwrap();
    drop(f);

    let o = rgt(&["compute", "--a", "1", "--xi", "0", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["meta"]["spec"]["rel_tol"], "9.9999999999999995e-7");
    assert!(v["rows"][0].get("seconds").is_none());

    let o = Command::new(env!("CARGO_BIN_EXE_rgt"))
        .args(["compute", "--a", "1", "--xi", "0", "--rel-tol", "1e-9", "--format", "csv"])
        .env("RGT_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("a_re,"), "flags beat the config file");

    std::fs::write(&path, "bogus_key = 1\n").unwrap();
    let o = rgt(&["compute", "--a", "1", "--xi", "0", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let o = rgt(&["compute", "--a", "2", "--xi", "1", "--no-timing", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 2);
}

#[test]
fn jump_json() {
    let o = rgt(&["jump", "--p", "0.5i"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["meta"]["command"], "jump");
    assert_eq!(v["estimate"]["deltas"].as_array().unwrap().len(), 3);
    assert_eq!(rgt(&["jump", "--p", "0.1+0.5i"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = rgt(&["verify", "--suite", "gamma"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["meta"]["seed"], 20_240_917);
    assert!(!v["reports"].as_array().unwrap().is_empty());

    // Lerch is report-only and never fails the run.
    assert_eq!(rgt(&["verify", "--suite", "lerch"]).status.code(), Some(0));
    assert_eq!(rgt(&["verify", "--suite", "nonsense"]).status.code(), Some(1));
}
