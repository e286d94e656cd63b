//! End-to-end tests for the `padic-zeta` binary.
//!
//! Each test invokes the compiled binary through `CARGO_BIN_EXE_padic-zeta`
//! so the exit-code contract, the output formats, and the configuration
//! precedence are checked exactly as a shell user would see them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_padic-zeta"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be utf-8")
}

#[test]
fn zeta_compute_reports_the_valuation_and_unit() {
    let out = run(&["zeta", "compute", "--s", "5", "--bits", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("valuation=-3"), "missing valuation: {text}");
    assert!(
        text.contains("2^-3 * 5636308508409 + O(2^40)"),
        "missing 40-bit value: {text}"
    );
}

#[test]
fn zeta_compute_flags_values_indistinguishable_from_zero() {
    let out = run(&["zeta", "compute", "--s", "4", "--bits", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("is zero at precision 64"),
        "even arguments should carry the zero note: {text}"
    );
    assert!(text.contains("valuation=null"));
}

#[test]
fn verification_failure_exits_one_with_a_witness() {
    let out = run(&["verify", "zeta3-coincidence", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "no failure marker: {text}");
    assert!(
        text.contains("first witness"),
        "summary should carry the first witness: {text}"
    );
}

#[test]
fn empty_ranges_are_usage_errors() {
    let out = run(&["verify", "recurrence", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("must be positive"));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = run(&["verify", "recurrence", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_line_delimited_with_a_summary() {
    let out = run(&["--format", "json", "verify", "determinant", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7, "6 rows plus summary: {text}");
    for line in &lines {
        serde_json::from_str::<serde_json::Value>(line).expect("each line parses as JSON");
    }
    let summary: serde_json::Value = serde_json::from_str(lines[6]).unwrap();
    assert_eq!(summary["summary"]["rows"], 6);
    assert_eq!(summary["summary"]["failures"], 0);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(
        first["determinant"], "786432",
        "big integers must arrive as decimal strings"
    );
}

#[test]
fn csv_output_keeps_stdout_machine_clean() {
    let out = run(&["--format", "csv", "forms", "table", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,rho0_num,rho0_den,rho3_num,rho3_den");
    assert_eq!(lines[1], "0,0,1,768,1");
    assert_eq!(lines[2], "1,-1024,1,73728,1");
    assert_eq!(lines.len(), 4, "header plus three rows only: {text}");
    assert!(
        stderr(&out).contains("summary"),
        "summary belongs on stderr in csv mode"
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["--format", "json", "verify", "telescoping", "--n-max", "4"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn config_file_sets_format_and_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("padic-zeta.conf");
    std::fs::write(&conf, "format = json\nn_max.telescoping = 2\n").unwrap();
    let out = run(&["--config", conf.to_str().unwrap(), "verify", "telescoping"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3, "2 rows plus summary: {text}");
    assert!(text.starts_with('{'), "config format=json should apply");
}

#[test]
fn command_line_overrides_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("padic-zeta.conf");
    std::fs::write(&conf, "format = json\nn_max.telescoping = 5\n").unwrap();
    let out = run(&[
        "--config",
        conf.to_str().unwrap(),
        "--format",
        "text",
        "verify",
        "telescoping",
        "--n-max",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with('#'), "flag format=text should win: {text}");
    assert!(text.contains("1 rows"), "flag n-max should win: {text}");
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("padic-zeta.conf");
    std::fs::write(&conf, "n_max.frobnication = 7\n").unwrap();
    let out = run(&["--config", conf.to_str().unwrap(), "forms", "table"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("frobnication"));
}

#[test]
fn cache_warm_writes_a_reloadable_table() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = run(&[
        "--cache-dir",
        cache.to_str().unwrap(),
        "cache",
        "warm",
        "--bernoulli",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(cache.join("bernoulli.txt").is_file());

    let reuse = run(&[
        "--cache-dir",
        cache.to_str().unwrap(),
        "zeta",
        "compute",
        "--s",
        "5",
        "--bits",
        "40",
    ]);
    assert_eq!(reuse.status.code(), Some(0));
    assert!(stdout(&reuse).contains("2^-3 * 5636308508409"));
}

#[test]
fn cache_dir_env_variable_is_honoured_below_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let from_env = dir.path().join("from-env");
    let out = Command::new(bin())
        .env("PADIC_ZETA_CACHE_DIR", from_env.to_str().unwrap())
        .args(["cache", "warm", "--bernoulli", "16"])
        .output()
        .expect("binary should spawn");
    assert_eq!(out.status.code(), Some(0));
    assert!(from_env.join("bernoulli.txt").is_file());

    let from_flag = dir.path().join("from-flag");
    let out = Command::new(bin())
        .env("PADIC_ZETA_CACHE_DIR", from_env.to_str().unwrap())
        .args([
            "--cache-dir",
            from_flag.to_str().unwrap(),
            "cache",
            "warm",
            "--bernoulli",
            "16",
        ])
        .output()
        .expect("binary should spawn");
    assert_eq!(out.status.code(), Some(0));
    assert!(from_flag.join("bernoulli.txt").is_file());
}

#[test]
fn measure_report_emits_the_certificate_schema_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["--format", "json", "measure", "report", "--n-max", "3"],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let cert: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    for key in [
        "alpha",
        "beta",
        "mu_bound",
        "alpha_n",
        "beta_n",
        "nonvanishing",
    ] {
        assert!(cert.get(key).is_some(), "certificate missing {key}");
    }
    assert_eq!(cert["alpha_n"].as_array().unwrap().len(), 3);
    assert_eq!(cert["nonvanishing"], true);
    let mu = cert["mu_bound"].as_f64().unwrap();
    assert!((mu - 20.342_651_7).abs() < 1e-6);
}

#[test]
fn denominator_audit_reports_conjecture_findings_without_failing() {
    let out = run(&["verify", "denominators", "--n-max", "12"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "conjecture findings must not affect the exit code: {}",
        stderr(&out)
    );
    let text = stdout(&out);
    assert!(text.contains("lemma=true"));
    assert!(text.contains("0 failures"));
}
