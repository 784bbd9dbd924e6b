//! End-to-end checks of the command-line binary: exit codes, report
//! formats, the config file, and the diagnostic stream.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_cosine_table() {
    let o = run(&["eval", "cos()", "--variant", "base", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("-0.5"), "{out}");
    assert!(out.contains("point_mass"), "{out}");
}

#[test]
fn eval_zeta_csv() {
    let o = run(&["eval", "power(z=2)", "--variant", "base", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "series,variant,alpha,value_re,value_im,err_est,path,oracle_gap"
    );
    let row = lines.next().unwrap();
    let value: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert!((value - 1.6449340668482264).abs() <= 1e-9, "{value}");
}

#[test]
fn eval_json_fields() {
    let o = run(&["eval", "power(z=3)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(
        sorted,
        ["checks", "err_est", "oracle_gap", "path", "value_im", "value_re", "warnings"]
    );
    assert!((v["value_re"].as_f64().unwrap() - 1.2020569031595943).abs() <= 1e-9);
}

#[test]
fn exit_codes() {
    // usage: malformed expression
    let o = run(&["eval", "power(z=2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("ERROR syntax"), "{}", stderr(&o));
    // usage: unknown flag
    let o = run(&["eval", "power(z=2)", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    // validation: divergent combination
    let o = run(&["validate", "power(z=2)", "--variant", "differentiated"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ERROR divergent"), "{}", stderr(&o));
    // validation: point-mass summand on the numerical-inversion route
    let o = run(&["eval", "cos()", "--method", "ilt-quadrature"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ERROR unsuitable_transform"), "{}", stderr(&o));
    assert!(o.stdout.is_empty(), "no bare number on a gate failure");
    // validation: unknown variant
    let o = run(&["eval", "power(z=2)", "--variant", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    // success: validate a sound combination
    let o = run(&["validate", "power(z=3)", "--variant", "differentiated"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn diagnostics_are_single_lines() {
    let o = run(&["validate", "power(z=2)", "--variant", "differentiated"]);
    let err = stderr(&o);
    for line in err.lines() {
        let mut parts = line.splitn(3, ' ');
        let level = parts.next().unwrap();
        assert!(matches!(level, "ERROR" | "WARN" | "INFO"), "{line}");
        assert!(parts.next().is_some(), "{line}");
        assert!(parts.next().is_some(), "{line}");
    }
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir();
    let path = dir.join("lapsum_cli_test.cfg");
    std::fs::write(&path, "tol = 1e-6\nmax_terms = 32\ntalbot_m = 24\n").unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["eval", "power(z=2)", "--config", p, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // flag overrides the file
    let o = run(&["eval", "power(z=2)", "--config", p, "--tol", "1e-10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // malformed config is a validation failure
    std::fs::write(&path, "tol 1e-6\n").unwrap();
    let o = run(&["eval", "power(z=2)", "--config", p]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&path, "unknown_key = 1\n").unwrap();
    let o = run(&["eval", "power(z=2)", "--config", p]);
    assert_eq!(o.status.code(), Some(2));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn zeta_identity_and_loop_check() {
    let o = run(&["zeta-identity", "--a", "1", "--b", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["loop-check", "power(z=2)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("PASS")).count(), 2, "{out}");
    // non-evaluable dual shape is rejected, not silently skipped
    let o = run(&["loop-check", "power(z=2)", "--variant", "exponential"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn listing_commands() {
    let o = run(&["variants"]);
    assert_eq!(o.status.code(), Some(0));
    // 24 variants plus the header
    assert_eq!(stdout(&o).lines().count(), 25);
    let o = run(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("shifted_power"));
}

#[test]
fn bench_emits_matrix() {
    let o = run(&["bench"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("variant,power(z=3)"), "{header}");
    assert_eq!(lines.count(), 24);
}
