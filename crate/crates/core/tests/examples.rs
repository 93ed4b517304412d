//! Runs every example binary and checks a line of its output. Cargo builds
//! examples before integration tests, next to the test executable.

use std::path::PathBuf;
use std::process::Command;

fn example(name: &str) -> String {
    let mut path: PathBuf = std::env::current_exe().unwrap();
    path.pop();
    if path.ends_with("deps") {
        path.pop();
    }
    path.push("examples");
    path.push(name);
    let out = Command::new(&path)
        .output()
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(out.status.success(), "{name} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn basis_functions_sum_to_one() {
    let out = example("basis_functions");
    let rows: Vec<&str> = out.lines().filter(|l| l.contains('[') && !l.starts_with(char::is_alphabetic)).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|l| l.contains("1.00e0")), "{out}");
}

#[test]
fn kronecker_operators_agree() {
    let out = example("kronecker_operators");
    let line = out.lines().find(|l| l.starts_with("K u:")).unwrap();
    let diff: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(diff < 1e-12, "{line}");
}

#[test]
fn heat_2d_reports_every_scheme() {
    let out = example("heat_2d");
    for name in ["unsplit", "split_lhs", "split_both", "split_both_mod"] {
        let line = out.lines().find(|l| l.split_whitespace().next() == Some(name)).unwrap();
        let l2: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!(l2 < 1e-3, "{line}");
    }
}

#[test]
fn manual_stepping_runs() {
    let out = example("manual_stepping");
    assert!(out.lines().any(|l| l.trim_start().starts_with("0.100")), "{out}");
}

#[test]
fn stability_certificate_flags_split_both_in_3d() {
    let out = example("stability_certificate");
    let three_d = out.split("3D,").nth(1).unwrap();
    assert!(three_d.lines().any(|l| l.contains("split_both ") && l.contains("UNSTABLE")), "{out}");
    assert!(out.contains("certificate fails"));
}

#[test]
fn convergence_study_writes_slopes() {
    let out = example("convergence_study");
    assert!(out.starts_with("study,scheme,rho_inf"));
    assert_eq!(out.lines().filter(|l| l.starts_with("tau_convergence:slope")).count(), 4);
}

#[test]
fn cost_benchmark_prints_a_slope() {
    let out = example("cost_benchmark");
    assert!(out.contains("log-log slope"));
}

#[test]
fn config_file_applies_overrides() {
    let out = example("config_file");
    assert!(out.lines().skip(1).all(|l| l.contains("rho Some(1.0)")), "{out}");
}
