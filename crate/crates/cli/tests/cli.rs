use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const JUG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/jug_bridge.txt");

fn condmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_condmc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = condmc(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    condmc(args).status.code().expect("exited normally")
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn stats_of_jug_data() {
    let text = ok(&["stats", "--family", "gamma", "--data", JUG]);
    assert!(text.contains("t1      52.720000"), "{text}");
    let v: Value = serde_json::from_str(&ok(&["stats", "--family", "both", "--data", JUG, "--json"])).unwrap();
    let ig = &v[0];
    let gamma = &v[1];
    assert_eq!(ig["family"], "invgauss");
    assert!((ig["t2"].as_f64().unwrap() - 13.8363).abs() <= 5e-5);
    assert!((gamma["t1"].as_f64().unwrap() - 52.72).abs() <= 5e-3);
    assert!((gamma["t2"].as_f64().unwrap() - 15.7815).abs() <= 5e-5);
    assert_eq!(gamma["n"], 24);
}

#[test]
fn empty_data_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = tmp(&dir, "empty.txt");
    fs::write(&p, "# nothing here\n").unwrap();
    assert_eq!(code(&["stats", "--family", "gamma", "--data", s(&p)]), 2);
    assert_eq!(code(&["stats", "--family", "gamma", "--data", s(&tmp(&dir, "missing.txt"))]), 2);
}

#[test]
fn malformed_data_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = tmp(&dir, "bad.txt");
    fs::write(&p, "1.0 2.0\n3.0 abc\n").unwrap();
    let out = condmc(&["stats", "--family", "gamma", "--data", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn gamma_samples_conserve_the_sum() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "gamma.csv");
    ok(&[
        "sample", "--model", "gamma", "--t1", "4.86", "--t2", "1.02", "-n", "3", "-m", "10000",
        "--seed", "7", "--out", s(&out),
    ]);
    let r = rows(&out);
    assert_eq!(r.len(), 10_000);
    for x in &r {
        assert_eq!(x.len(), 3);
        assert!((x.iter().sum::<f64>() - 4.86).abs() <= 1e-6);
        let t2: f64 = x.iter().map(|v| v.ln()).sum();
        assert!((t2 - 1.02).abs() <= 1e-6);
    }
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("gamma.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 7);
    assert_eq!(meta["method"], "mh");
    assert!(meta["acceptance_rate"].as_f64().unwrap() > 0.0);
    assert!(meta["theta_hat"]["beta"]["min"].as_f64().unwrap() >= 0.5);
}

#[test]
fn single_coordinate_uniform_sum_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "u.csv");
    ok(&[
        "sample", "--model", "uniform-sum", "--t1", "0.5", "-n", "1", "-m", "200", "--seed", "1",
        "--out", s(&out),
    ]);
    let r = rows(&out);
    assert_eq!(r.len(), 200);
    assert!(r.iter().all(|x| x == &[0.5]));
}

#[test]
fn same_config_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (tmp(&dir, "a.csv"), tmp(&dir, "b.csv"));
    let args = |out: &Path| {
        vec![
            "sample".to_string(),
            "--model".into(),
            "invgauss".into(),
            "--data".into(),
            JUG.into(),
            "-m".into(),
            "3000".into(),
            "--chains".into(),
            "3".into(),
            "--seed".into(),
            "11".into(),
            "--out".into(),
            s(out).into(),
        ]
    };
    let a_args = args(&a);
    ok(&a_args.iter().map(String::as_str).collect::<Vec<_>>());
    let mut b_args = args(&b);
    b_args.insert(0, "--sequential".into());
    ok(&b_args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn json_samples_match_csv_samples() {
    let dir = tempfile::tempdir().unwrap();
    let (c, j) = (tmp(&dir, "s.csv"), tmp(&dir, "s.json"));
    let base = ["sample", "--model", "normal-range", "--t1", "1", "-n", "2", "-m", "50", "--seed", "3"];
    ok(&[&base[..], &["--out", s(&c)]].concat());
    ok(&[&base[..], &["--out", s(&j), "--format", "json"]].concat());
    let v: Value = serde_json::from_str(&fs::read_to_string(&j).unwrap()).unwrap();
    let from_json: Vec<Vec<f64>> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(from_json, rows(&c));
}

#[test]
fn ecdf_of_uniform_sum_is_linear() {
    let dir = tempfile::tempdir().unwrap();
    let (out, e) = (tmp(&dir, "u.csv"), tmp(&dir, "e.csv"));
    ok(&[
        "sample", "--model", "uniform-sum", "--t1", "0.3", "-n", "2", "-m", "10000", "--seed", "5",
        "--out", s(&out),
    ]);
    ok(&["ecdf", "--in", s(&out), "--col", "1", "--out", s(&e)]);
    let pts = rows(&e);
    assert_eq!(pts.len(), 10_000);
    let n = pts.len() as f64;
    let dev = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let line = p[0] / 0.3;
            (p[1] - line).abs().max((i as f64 / n - line).abs())
        })
        .fold(0.0, f64::max);
    assert!(dev < 0.02, "{dev}");
    assert_eq!(code(&["ecdf", "--in", s(&out), "--col", "3", "--out", s(&e)]), 2);
    assert_eq!(code(&["ecdf", "--in", s(&out), "--col", "0", "--out", s(&e)]), 2);
}

#[test]
fn ecdf_of_a_single_row_is_one_step() {
    let dir = tempfile::tempdir().unwrap();
    let (input, e) = (tmp(&dir, "one.csv"), tmp(&dir, "e.csv"));
    fs::write(&input, "x1,x2\n0.25,0.75\n").unwrap();
    ok(&["ecdf", "--in", s(&input), "--col", "2", "--out", s(&e)]);
    assert_eq!(rows(&e), vec![vec![0.75, 1.0]]);
}

#[test]
fn gof_with_one_sample_is_an_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "g.json");
    ok(&[
        "gof", "--family", "invgauss", "--data", JUG, "--stat", "all", "-k", "1", "--seed", "2",
        "--out", s(&out),
    ]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        let p = r["p_value"].as_f64().unwrap();
        assert!(p == 0.0 || p == 1.0);
    }
}

#[test]
fn gof_prints_a_table() {
    let text = ok(&["gof", "--family", "both", "--data", JUG, "-k", "2000", "--seed", "1"]);
    let header = text.lines().nth(1).unwrap();
    assert!(header.contains("invgauss") && header.contains("gamma"));
    for stat in ["A2", "W2", "D"] {
        let line = text.lines().find(|l| l.starts_with(stat)).unwrap();
        let p: Vec<f64> = line.split_whitespace().skip(1).map(|v| v.parse().unwrap()).collect();
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|v| (0.0..=1.0).contains(v)));
    }
}

#[test]
fn gamma_gof_rejects_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = tmp(&dir, "zero.txt");
    fs::write(&p, "1.2 0 3.4 2.2\n").unwrap();
    assert_eq!(code(&["gof", "--family", "gamma", "--data", s(&p), "-k", "10", "--seed", "1"]), 2);
}

#[test]
fn identical_samplers_have_zero_distance() {
    let out = ok(&[
        "compare", "--model", "normal-range", "--t1", "2", "-n", "3", "-m", "5000",
        "--method-a", "rejection", "--method-b", "rejection", "--seed", "4", "--json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sup_distance"].as_f64().unwrap(), 0.0);
}

#[test]
fn mh_and_naive_agree_on_invgauss_case() {
    let out = ok(&[
        "compare", "--model", "invgauss", "--t1", "3.67", "--t2", "6.01", "-n", "3", "-m", "10000",
        "--eps", "0.1,0.1", "--thin", "20", "--seed", "8", "--json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["sup_distance"].as_f64().unwrap() < 0.05, "{v}");
    assert_eq!(v["b"]["samples"], 10000);
}

#[test]
fn bad_requests_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "x.csv");
    let o = s(&out);
    // no envelope bound for gamma
    assert_eq!(
        code(&["sample", "--model", "gamma", "--t1", "4.86", "--t2", "1.02", "-n", "3", "-m", "10",
            "--method", "rejection", "--seed", "1", "--out", o]),
        2
    );
    // unattainable: sum of two uniforms above 2
    assert_eq!(code(&["sample", "--model", "uniform-sum", "--t1", "2.5", "-n", "2", "-m", "10", "--seed", "1", "--out", o]), 2);
    // missing t2
    assert_eq!(code(&["sample", "--model", "gamma", "--t1", "4.86", "-n", "3", "-m", "10", "--seed", "1", "--out", o]), 2);
    // naive without tolerances
    assert_eq!(
        code(&["sample", "--model", "normal-range", "--t1", "1", "-n", "2", "-m", "10", "--method", "naive",
            "--seed", "1", "--out", o]),
        2
    );
    assert_eq!(code(&["sample", "--model", "no-such-model"]), 2);
}

#[test]
fn exhausted_budget_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "x.csv");
    assert_eq!(
        code(&["sample", "--model", "uniform-sum", "--t1", "0.001", "-n", "2", "-m", "100",
            "--max-draws", "1000", "--seed", "1", "--out", s(&out)]),
        3
    );
}
