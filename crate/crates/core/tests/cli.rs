use std::process::Command;

use sepalpha::study::{read_csv, CSV_COLUMNS};

fn sepalpha(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sepalpha")).args(args).output().unwrap()
}

#[test]
fn missing_final_time_is_rejected_by_name() {
    let out = sepalpha(&["--study", "h_convergence", "--n", "4,8"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("T"), "{err}");
}

#[test]
fn unknown_study_is_rejected() {
    let out = sepalpha(&["--study", "nonsense", "--T", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("study"));
}

#[test]
fn h_convergence_writes_the_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.csv");
    let out = sepalpha(&[
        "--study", "h_convergence", "--n", "4,8", "--tau", "1e-3", "--T", "0.01",
        "--scheme", "split_lhs,unsplit", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    let rows = read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.iter().filter(|r| !r.is_summary()).count(), 4);
    assert!(rows.iter().all(|r| r.err_l2.is_some_and(f64::is_finite)));
}

#[test]
fn certify_goes_to_stdout() {
    let out = sepalpha(&["--study", "certify", "--n", "8", "--rho", "0,1", "--scheme", "unsplit,split_lhs"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_csv(out.stdout.as_slice()).unwrap();
    assert!(rows.iter().filter(|r| !r.is_summary()).all(|r| r.cert_pass == Some(true)));
}
