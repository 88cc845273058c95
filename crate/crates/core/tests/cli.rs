use std::process::{Command, Output};

use sortition::experiments::{default_s_grid, sweep_m_max, write_csv};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sortition"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn select_is_deterministic() {
    let args = [
        "select",
        "--algorithm",
        "rec",
        "--weights",
        &fixture("rec_example.csv"),
        "--size",
        "2",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["seats"].as_array().unwrap().len(), 2);
    assert_eq!(json["ids"].as_array().unwrap().len(), 2);
}

#[test]
fn wrs_select_reads_integer_weights() {
    let out = run(&[
        "select",
        "--algorithm",
        "wrs",
        "--weights",
        &fixture("wrs_example.csv"),
        "--size",
        "2",
        "--seed",
        "1",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = json["ids"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(ids.contains(&"d") || ids == ["c", "d"]);
}

#[test]
fn analyze_reports_lambda() {
    let out = run(&[
        "analyze",
        "--algorithm",
        "rec",
        "--weights",
        &fixture("rec_example.csv"),
        "--size",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((json["lambda"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(json["lambda_kind"], "exact");
    assert!((json["adversary_tolerance"].as_f64().unwrap() - 0.125).abs() < 1e-12);
}

#[test]
fn infeasible_crs_exits_two_with_bounds() {
    let out = run(&[
        "analyze",
        "--algorithm",
        "crs",
        "--weights",
        &fixture("crs_infeasible.csv"),
        "--size",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("upper bound (N-2M+M^2)/(M^2(N-1)) = 0.2"), "{err}");
}

#[test]
fn wrs_without_alpha_exits_one() {
    let out = run(&[
        "analyze",
        "--algorithm",
        "wrs",
        "--weights",
        &fixture("wrs_example.csv"),
        "--size",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["select"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_file_exits_one() {
    let out = run(&[
        "analyze",
        "--algorithm",
        "rec",
        "--weights",
        "/nonexistent.csv",
        "--size",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fairness_emits_result() {
    let out = run(&[
        "fairness",
        "--algorithm",
        "stitch",
        "--weights",
        &fixture("rec_example.csv"),
        "--size",
        "2",
        "--trials",
        "20000",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["trials"], 20000);
    assert!(json["max_sigma_deviation"].as_f64().unwrap() < 5.0);
}

#[test]
fn experiment_mmax_matches_library() {
    let out = run(&["experiment", "mmax", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let mut expect = Vec::new();
    write_csv(&sweep_m_max(1000, &default_s_grid()), &mut expect).unwrap();
    assert_eq!(stdout(&out), String::from_utf8(expect).unwrap());
}

#[test]
fn experiment_lambda_alpha_flags_rows() {
    let out = run(&["experiment", "lambda-alpha", "--n", "1000", "--m", "20", "--s", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,alpha,lambda,feasible,best"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 19);
    assert!(rows.iter().any(|r| r.ends_with(",false,false")));
}

#[test]
fn experiment_lambda_s_with_custom_grid() {
    let out = run(&["experiment", "lambda-s", "--n", "200", "--m", "10", "--grid", "0,0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("s,algorithm,lambda,lambda_kind,feasible,alpha\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 4);
    assert!(text.contains("0,stitch,0.05,exact,true,"));
    assert!(text.contains("0,rec,0.05,exact,true,"));
}

#[test]
fn malformed_weight_files_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("header.csv", "name,stake\na,1\n"),
        ("negative.csv", "id,weight\na,1\nb,-2\n"),
        ("text.csv", "id,weight\na,x\n"),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = run(&[
            "analyze",
            "--algorithm",
            "rec",
            "--weights",
            path.to_str().unwrap(),
            "--size",
            "1",
        ]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn permuted_stitch_select_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    std::fs::write(&path, "id,weight\na,3\nb,2\nc,2\nd,2\ne,2\n").unwrap();
    let args = [
        "select",
        "--algorithm",
        "stitch",
        "--weights",
        path.to_str().unwrap(),
        "--size",
        "3",
        "--seed",
        "4",
        "--permute",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, run(&args).stdout);
}
