//! End-to-end tests of the binary: exit codes, output formats, and
//! byte-level determinism.

use std::process::{Command, Output};

fn norlund(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_norlund"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = norlund(args);
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exact_odd_midpoint_is_zero() {
    let s = stdout(&["exact", "--n", "3", "--z", "1/2"]);
    assert!(s.contains("re = 0\n"), "{s}");
    assert!(s.contains("im = 0\n"), "{s}");
}

#[test]
fn exact_degree_zero_is_one() {
    let s = stdout(&["exact", "--n", "0", "--z", "5"]);
    assert!(s.contains("re = 1\n"), "{s}");
}

#[test]
fn exact_decimal_input() {
    let s = stdout(&["exact", "--n", "2", "--z", "0.5", "--format", "csv"]);
    assert!(s.contains("2,1/2,0,-1/6,0,"), "{s}");
}

#[test]
fn poly_lists_exact_coefficients() {
    let s = stdout(&["poly", "--n", "4"]);
    assert!(s.contains("z^0: 251/30"), "{s}");
    assert!(s.contains("z^2: 22"), "{s}");
}

#[test]
fn asym_real_point_relative_error() {
    let s = stdout(&["asym", "--n", "20", "--z", "2", "--K", "3", "--compare-exact"]);
    assert!(s.contains("regime = real-greater-one"), "{s}");
    assert!(s.contains("relative_error = 1.051(-9)"), "{s}");
}

#[test]
fn asym_stokes_line_warns() {
    let s = stdout(&["asym", "--n", "10", "--z", "1,1", "--K", "2"]);
    assert!(s.contains("regime = stokes-line"), "{s}");
    assert!(s.contains("warning:"), "{s}");
}

#[test]
fn usage_error_is_exit_2() {
    assert_eq!(norlund(&["asym", "--n", "10"]).status.code(), Some(2));
    assert_eq!(
        norlund(&["exact", "--n", "2", "--z", "1/0"]).status.code(),
        Some(2)
    );
}

#[test]
fn domain_error_is_exit_3() {
    let out = norlund(&["asym", "--n", "10", "--z", "1", "--K", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exclusion band"), "{err}");
}

#[test]
fn widening_the_band_moves_the_refusal() {
    let out = norlund(&["asym", "--n", "10", "--z", "13/10", "--eps", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(norlund(&["asym", "--n", "10", "--z", "13/10"]).status.success());
}

#[test]
fn coeffs_closed_form_deltas_are_tiny() {
    let s = stdout(&["coeffs", "--z", "2", "--kmax", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    for row in v["coefficients"].as_array().unwrap() {
        if let Some(d) = row.get("closed_form_delta") {
            assert!(d.as_f64().unwrap() < 1e-40);
        }
    }
}

#[test]
fn paths_csv_shape() {
    let s = stdout(&["paths", "--z", "2"]);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("branch_label,xi,eta,re_psi"));
    let labels: std::collections::BTreeSet<&str> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(
        labels.into_iter().collect::<Vec<_>>(),
        vec!["ascent+", "ascent-", "descent+", "descent-"]
    );
}

#[test]
fn check_exact_suite_passes() {
    let s = stdout(&["check", "--suite", "exact", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn table_output_is_deterministic_across_jobs() {
    let a = stdout(&["table", "--id", "1", "--format", "json", "--jobs", "1"]);
    let b = stdout(&["table", "--id", "1", "--format", "json", "--jobs", "4"]);
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("norlund-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.json");
    let direct = stdout(&["coeffs", "--z", "2/3,1/4", "--kmax", "5", "--format", "json"]);
    let out = norlund(&[
        "coeffs", "--z", "2/3,1/4", "--kmax", "5", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}
