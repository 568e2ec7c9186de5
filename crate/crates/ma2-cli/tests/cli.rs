//! End-to-end tests that spawn the compiled `ma2` binary.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn ma2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ma2"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn ma2_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ma2"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary should spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout_text(out)
        .lines()
        .map(|line| serde_json::from_str(line).expect("each stdout line should be valid JSON"))
        .collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ma2-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn identify_recovers_the_frozen_example() {
    // gamma = (5.25, 0.5, -2) comes from theta = (0.5, 2), sigma2 = 1; the
    // invertible twin is theta = (-0.25, 0.5), sigma2 = 4 with candidate
    // variances x3 = 1 and x4 = 4.
    let out = ma2(&["identify", "5.25", "0.5", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    assert!(text.contains("theta1 = -0.25"), "got:\n{text}");
    assert!(text.contains("theta2 = 0.5"), "got:\n{text}");
    assert!(text.contains("sigma2 = 4"), "got:\n{text}");
    assert!(text.contains("x3 = 1"), "got:\n{text}");
    assert!(text.contains("x4 = 4"), "got:\n{text}");
}

#[test]
fn identify_json_is_parseable_and_exact() {
    let out = ma2(&["--format", "json", "identify", "5.25", "0.5", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    let rec = &lines[0];
    assert_eq!(rec["ok"], true);
    assert!((rec["theta1"].as_f64().unwrap() + 0.25).abs() < 1e-12);
    assert!((rec["theta2"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((rec["sigma2"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!((rec["candidates"]["x3"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((rec["candidates"]["x4"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!(rec["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn identify_boundary_triple_fails_with_exit_3() {
    // (1.5, -0.25, -0.5) comes from the boundary point theta = (0.5, 0.5),
    // which has a characteristic root at +1; no invertible version exists.
    let out = ma2(&["identify", "1.5", "-0.25", "-0.5"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout_text(&out);
    assert!(text.contains("no invertible version"), "got:\n{text}");
}

#[test]
fn identify_rejects_gamma2_zero_per_row() {
    let out = ma2(&["identify", "1", "0", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout_text(&out);
    assert!(text.contains("gamma2 must be nonzero"), "got:\n{text}");
}

#[test]
fn identify_batch_preserves_order_and_reports_per_row() {
    let path = temp_file(
        "batch.csv",
        "gamma0,gamma1,gamma2\n# generated pair plus one boundary triple\n\n\
         5.25,0.5,-2\n1.5,-0.25,-0.5\n11,-6,1\n",
    );
    let out = ma2(&[
        "--format",
        "json",
        "identify",
        "--input",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    // One row failed but two succeeded, so the batch as a whole succeeds.
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    for (i, rec) in lines.iter().enumerate() {
        assert_eq!(rec["row"], i as u64 + 1);
    }
    assert_eq!(lines[0]["ok"], true);
    assert_eq!(lines[1]["ok"], false);
    assert_eq!(lines[2]["ok"], true);
    assert!((lines[2]["sigma2"].as_f64().unwrap() - 6.854101966249685).abs() < 1e-9);
}

#[test]
fn identify_reads_stdin_when_input_is_dash() {
    let out = ma2_stdin(
        &["--format", "json", "identify", "--input", "-"],
        "5.25,0.5,-2\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["ok"], true);
}

#[test]
fn identify_exits_3_when_every_row_fails() {
    let out = ma2_stdin(&["identify", "--input", "-"], "1,0,0\n1.5,-0.25,-0.5\n");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_batch_line_exits_2() {
    let out = ma2_stdin(&["identify", "--input", "-"], "5.25,0.5,-2\nfoo,bar,baz\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_text(&out).contains("line 2"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn acf_reports_gamma_invertibility_and_case() {
    let out = ma2(&["acf", "0.5", "0.3", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    assert!(text.contains("gamma0 = 1.34"), "got:\n{text}");
    assert!(text.contains("gamma1 = -0.35"), "got:\n{text}");
    assert!(text.contains("gamma2 = -0.3"), "got:\n{text}");
    assert!(text.contains("invertibility: invertible"), "got:\n{text}");
    assert!(text.contains("case 1a"), "got:\n{text}");
}

#[test]
fn acf_flags_boundary_points() {
    // theta1 + theta2 = 1 puts a characteristic root at z = +1.
    let out = ma2(&["acf", "0.5", "0.5", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    assert!(text.contains("boundary (root at +1)"), "got:\n{text}");
    assert!(text.contains("warning"), "got:\n{text}");
}

#[test]
fn acf_rejects_theta2_zero_with_exit_2() {
    let out = ma2(&["acf", "0.5", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_text(&out).contains("theta2 must be nonzero"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn enumerate_counts_match_the_root_structure() {
    // Distinct real roots: four versions.
    let out = ma2(&["--format", "json", "enumerate", "5.25", "0.5", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["count"], 4);

    // Complex conjugate roots: only the identity and the modulus flip.
    let out = ma2(&["--format", "json", "enumerate", "1.0625", "0", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["count"], 2);

    // Reciprocal real roots: flipping one root reproduces the other pair.
    let out = ma2(&["--format", "json", "enumerate", "11", "-6", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["count"], 2);
}

#[test]
fn enumerate_marks_exactly_one_invertible_version() {
    let out = ma2(&["--format", "json", "enumerate", "5.25", "0.5", "-2"]);
    let rec = &json_lines(&out)[0];
    let versions = rec["versions"].as_array().unwrap();
    let invertible: Vec<_> = versions
        .iter()
        .filter(|v| v["invertible"] == true)
        .collect();
    assert_eq!(invertible.len(), 1);
    let idx = rec["invertible_index"].as_u64().unwrap() as usize;
    assert_eq!(versions[idx]["invertible"], true);
}

#[test]
fn classify_names_case_and_candidate() {
    let out = ma2(&["classify", "-3", "-1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    assert!(text.contains("case: 6"), "got:\n{text}");
    assert!(
        text.contains("correct variance candidate: x1"),
        "got:\n{text}"
    );
    assert!(text.contains("simplified rule: x1"), "got:\n{text}");
}

#[test]
fn classify_rejects_theta2_zero_with_exit_2() {
    let out = ma2(&["classify", "0.7", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic_per_seed() {
    let args = [
        "--format", "json", "simulate", "0.5", "2", "1", "5000", "42",
    ];
    let first = ma2(&args);
    let second = ma2(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let other_seed = ma2(&[
        "--format", "json", "simulate", "0.5", "2", "1", "5000", "43",
    ]);
    assert_ne!(first.stdout, other_seed.stdout);
}

#[test]
fn simulate_rejects_short_paths_with_exit_2() {
    let out = ma2(&["simulate", "0.5", "0.3", "1", "2", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_text(&out).contains("path too short"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn simulate_then_identify_recovers_the_invertible_version() {
    // The generator theta = (0.5, 2) is non-invertible; identification from
    // the sample autocovariances must land near its invertible twin
    // theta = (-0.25, 0.5), sigma2 = 4.
    let out = ma2(&[
        "--format",
        "json",
        "simulate",
        "0.5",
        "2",
        "1",
        "100000",
        "7",
        "--then-identify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    let fit = &rec["fit"];
    assert!((fit["theta1"].as_f64().unwrap() + 0.25).abs() < 0.05);
    assert!((fit["theta2"].as_f64().unwrap() - 0.5).abs() < 0.05);
    assert!((fit["sigma2"].as_f64().unwrap() - 4.0).abs() < 0.2);
    assert_eq!(fit["invertibility"], "invertible");
}

#[test]
fn csv_identify_uses_the_documented_header() {
    let out = ma2(&["--format", "csv", "identify", "5.25", "0.5", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_text(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "row,gamma0,gamma1,gamma2,status,theta1,theta2,sigma2,\
         x1,x2,x3,x4,g,h_minus,h_plus,residual,error"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("1,5.25,0.5,-2,ok,"), "got: {row}");
}

#[test]
fn csv_values_round_trip_at_full_precision() {
    let out = ma2(&["--format", "csv", "identify", "11", "-6", "1"]);
    let text = stdout_text(&out);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    // Column 7 is sigma2; parsing the printed value back must reproduce the
    // f64 exactly.
    let sigma2: f64 = fields[7].parse().unwrap();
    assert!((sigma2 - 6.854101966249685).abs() < 1e-15);
}
