use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn rkt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rkt"))
        .args(args)
        .env_remove("RKT_THREADS")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    v["report"].clone()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn verify_random_symbol() {
    let out = rkt(&[
        "verify-rkt",
        "--random",
        "--seed",
        "7",
        "--m",
        "8",
        "--d",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let ratio = r["ratio"].as_f64().unwrap();
    assert!((1.0..=3.30744).contains(&ratio), "{ratio}");
    assert_eq!(r["pass"], true);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["meta"]["seed"], 7);
    assert!(v["meta"]["wall_time_s"].is_number());
    assert_eq!(
        v["meta"]["config"]["verify-rkt"]["symbol"]["random_args"]["m"],
        8
    );
}

#[test]
fn lp_check_passes() {
    let out = rkt(&["lp-check", "--degree", "16", "--nr", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(r["identity"], "littlewood-paley");
}

#[test]
fn failed_check_exits_one() {
    let out = rkt(&["lp-check", "--degree", "16", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["pass"], false);
}

#[test]
fn malformed_input_exits_two_with_key_path() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dim":1,"gamma":[[[1,0]],[[1e999,0]]]}"#,
    );
    let out = rkt(&["verify-rkt", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gamma[1][0][0]"), "{err}");

    let extra = write(
        &dir,
        "extra.json",
        r#"{"dim":1,"gamma":[[[1,0]]],"oops":3}"#,
    );
    let out = rkt(&["verify-rkt", &extra]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oops"));

    let wrong_dim = write(&dir, "dim.json", r#"{"dim":2,"gamma":[[[1,0]]]}"#);
    assert_eq!(rkt(&["verify-rkt", &wrong_dim]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rkt(&["verify-rkt"]).status.code(), Some(2));
    assert_eq!(rkt(&["lp-check", "--nr", "0"]).status.code(), Some(2));
    assert_eq!(rkt(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        rkt(&["verify-rkt", "/nonexistent/symbol.json"])
            .status
            .code(),
        Some(2)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_rkt"))
        .args(["lp-check"])
        .env("RKT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_rkt"))
        .args(["lp-check", "--degree", "4"])
        .env("RKT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["meta"]["threads"], 2);
}

fn heatmap_rows(p: &Path) -> Vec<[f64; 3]> {
    let text = fs::read_to_string(p).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,value"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

#[test]
fn heatmap_single_point_and_closed_form() {
    let dir = TempDir::new().unwrap();
    let sym = write(&dir, "s.json", r#"{"dim":1,"gamma":[[[1,0]]]}"#);
    let one = write(&dir, "g1.json", r#"{"radii":[0.0]}"#);
    let csv = path(&dir, "one.csv");
    let out = rkt(&["verify-rkt", &sym, "--grid", &one, "--heatmap", &csv]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(heatmap_rows(Path::new(&csv)).len(), 1);

    let grid = write(
        &dir,
        "g.json",
        r#"{"radii":[0.0,0.3,0.6,0.9,0.99],"min_angles":8,"max_angles":64}"#,
    );
    let csv = path(&dir, "h.csv");
    let out = rkt(&["verify-rkt", &sym, "--grid", &grid, "--heatmap", &csv]);
    assert_eq!(out.status.code(), Some(0));
    let rows = heatmap_rows(Path::new(&csv));
    assert!(rows.len() > 1);
    let mut last_r = 0.0;
    for [re, im, v] in rows {
        let r2 = re * re + im * im;
        assert!((v - (1.0 - r2)).abs() <= 1e-12, "{re} {im} {v}");
        // radius-major order
        assert!(r2.sqrt() >= last_r - 1e-12);
        last_r = r2.sqrt();
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "a.csv");
    let args = [
        "verify-rkt",
        "--random",
        "--seed",
        "3",
        "--m",
        "5",
        "--d",
        "2",
        "--deterministic",
        "--heatmap",
        &csv,
    ];
    let a = rkt(&args);
    let first = fs::read(&csv).unwrap();
    let b = rkt(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first, fs::read(&csv).unwrap());
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["meta"].get("wall_time_s").is_none());
}

#[test]
fn unwritable_heatmap_exits_two() {
    let out = rkt(&[
        "verify-rkt",
        "--random",
        "--heatmap",
        "/nonexistent/dir/h.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_symbol_round_trips() {
    let dir = TempDir::new().unwrap();
    let sym = path(&dir, "s.json");
    let out = rkt(&[
        "gen-symbol",
        "--seed",
        "11",
        "--m",
        "6",
        "--d",
        "2",
        "--decay",
        "0.5",
        "--out",
        &sym,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let from_file = rkt(&["verify-rkt", &sym, "--deterministic"]);
    let random = rkt(&[
        "verify-rkt",
        "--random",
        "--seed",
        "11",
        "--m",
        "6",
        "--d",
        "2",
        "--decay",
        "0.5",
        "--deterministic",
    ]);
    assert_eq!(report(&from_file), report(&random));
}

#[test]
fn disk_checkers_pass() {
    for args in [
        vec!["green-check", "--degree", "60", "--samples", "5"],
        vec!["green-check", "--harmonic", "--tol", "1e-10"],
        vec!["uchiyama-check", "--m", "6", "--d", "2", "--samples", "5"],
        vec!["proof-check", "--m", "6", "--d", "2", "--samples", "5"],
    ] {
        let out = rkt(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let r = report(&out);
        assert_eq!(r["pass"], true, "{args:?}");
    }
}

#[test]
fn uchiyama_rejects_zero_symbol() {
    let dir = TempDir::new().unwrap();
    let sym = write(&dir, "z.json", r#"{"dim":1,"gamma":[[[0,0]]]}"#);
    assert_eq!(rkt(&["uchiyama-check", &sym]).status.code(), Some(2));
}

#[test]
fn proof_check_requires_vanishing_g() {
    let dir = TempDir::new().unwrap();
    let sym = write(&dir, "s.json", r#"{"dim":1,"gamma":[[[1,0]],[[0.5,0]]]}"#);
    let f = write(
        &dir,
        "f.json",
        r#"{"dim":1,"n_min":0,"coeffs":[[[1,0]],[[2,0]]]}"#,
    );
    let good = write(
        &dir,
        "g.json",
        r#"{"dim":1,"n_min":1,"coeffs":[[[1,0]],[[0,1]]]}"#,
    );
    let bad = write(&dir, "b.json", r#"{"dim":1,"n_min":0,"coeffs":[[[1,0]]]}"#);
    let out = rkt(&["proof-check", &sym, "--f", &f, "--g", &good]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["samples"], 1);
    assert_eq!(
        rkt(&["proof-check", &sym, "--f", &f, "--g", &bad])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_trace_and_csv() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "c.json",
        r#"{"m":2,"restarts":2,"steps":40,"seed":9}"#,
    );
    let csv = path(&dir, "t.csv");
    let args = [
        "search-extremal",
        &cfg,
        "--trace-csv",
        &csv,
        "--deterministic",
    ];
    let a = rkt(&args);
    let first = fs::read(&csv).unwrap();
    let b = rkt(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first, fs::read(&csv).unwrap());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 40);
    let r = report(&a);
    assert_eq!(r["bound_exceeded"], false);
    assert!(r["best_ratio"].as_f64().unwrap() >= 1.0);

    let bad = write(
        &dir,
        "bad.json",
        r#"{"m":2,"restarts":2,"steps":4,"seed":1,"grid":{"radii":[1.5]}}"#,
    );
    assert_eq!(rkt(&["search-extremal", &bad]).status.code(), Some(2));
    let typo = write(
        &dir,
        "typo.json",
        r#"{"m":2,"restarts":2,"steps":4,"sead":1}"#,
    );
    assert_eq!(rkt(&["search-extremal", &typo]).status.code(), Some(2));
}

#[test]
fn embedding_of_projection_onto_constants() {
    let dir = TempDir::new().unwrap();
    let mu = write(
        &dir,
        "mu.json",
        r#"{"atoms":[{"lambda":[0,0],"weight":1}]}"#,
    );
    let out = rkt(&["embed-test", &mu, "--N", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((r["C_est"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((r["A_test"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(r["N"], 16);

    let empty = write(&dir, "e.json", r#"{"atoms":[]}"#);
    let out = rkt(&["embed-test", &empty]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["C_est"], 0.0);

    let outside = write(
        &dir,
        "o.json",
        r#"{"atoms":[{"lambda":[1.0,0],"weight":1}]}"#,
    );
    assert_eq!(rkt(&["embed-test", &outside]).status.code(), Some(2));
}

#[test]
fn carleson_constant_is_linear_in_weights() {
    let dir = TempDir::new().unwrap();
    let a = write(
        &dir,
        "a.json",
        r#"{"atoms":[{"lambda":[0.5,0.1],"weight":1},{"lambda":[0.9,0],"weight":2}]}"#,
    );
    let b = write(
        &dir,
        "b.json",
        r#"{"atoms":[{"lambda":[0.5,0.1],"weight":2},{"lambda":[0.9,0],"weight":4}]}"#,
    );
    let ra = report(&rkt(&["carleson-check", &a]));
    let rb = report(&rkt(&["carleson-check", &b]));
    let (ca, cb) = (
        ra["dyadic_carleson_constant"].as_f64().unwrap(),
        rb["dyadic_carleson_constant"].as_f64().unwrap(),
    );
    assert!((cb - 2.0 * ca).abs() < 1e-12);
    assert_eq!(ra["pass"], true);
}
