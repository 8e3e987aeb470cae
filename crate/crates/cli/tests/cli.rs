use std::fs;
use std::process::Command;

fn rkdg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rkdg"))
}

#[test]
fn run_writes_reports_and_report_reads_them() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = rkdg()
        .args(["run", "--problem", "example2", "--p", "2", "--h", "0.5", "--tau", "0.01", "--tfinal", "0.1"])
        .args(["--outputs", "0.05", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for name in [
        "indicators_spatial_0.05.csv",
        "indicators_temporal_0.1.csv",
        "solution_0.1.csv",
        "error_budget.csv",
        "summary.json",
    ] {
        assert!(out.join(name).exists(), "{name}");
    }
    let budget = fs::read_to_string(out.join("error_budget.csv")).unwrap();
    // header, E0 row and ten steps
    assert_eq!(budget.lines().count(), 12);

    let report = rkdg().args(["report", "--out"]).arg(&out).output().unwrap();
    assert!(report.status.success());
    let text = String::from_utf8(report.stdout).unwrap();
    assert!(text.contains("example2"));
    assert!(text.contains("budget rows"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    fs::write(&config, "# small periodic run\nproblem = example2\np = 1\nh = 0.5\ntau = 0.02\ntfinal = 0.04\n").unwrap();
    let out = dir.path().join("o");
    let status = rkdg()
        .arg("run")
        .arg("--config")
        .arg(&config)
        .args(["--p", "2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["p"], 2);
    assert_eq!(summary["config"]["h"], 0.5);
    assert_eq!(summary["steps"], 2);
    let header = fs::read_to_string(out.join("indicators_spatial_0.04.csv")).unwrap();
    assert!(header.starts_with("t,j,M0,M1,M2,J0,J1,J2,D0,D1,D2,loghJ0,loghJ1,loghJ2\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "colour = blue\n").unwrap();
    let code = |args: &[&str]| {
        rkdg().args(args).current_dir(dir.path()).status().unwrap().code()
    };
    assert_eq!(code(&["run", "--config", bad.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["run", "--k", "7"]), Some(2));
    assert_eq!(code(&["run", "--problem", "nope"]), Some(2));
    assert_eq!(code(&["run", "--h", "0.5", "--tau", "0.6", "--tfinal", "5", "--out", "blow"]), Some(3));
    assert!(dir.path().join("blow/summary.json").exists());
    assert_eq!(code(&["converge", "--problem", "example2", "--tfinal", "6", "--hs", "0.5,0.25"]), Some(4));
}

#[test]
fn converge_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c");
    let output = rkdg()
        .args(["converge", "--problem", "linear", "--p", "1", "--gamma", "0.2", "--hs", "0.5,0.25,0.125", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let csv = fs::read_to_string(out.join("convergence.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    let table: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("convergence.json")).unwrap()).unwrap();
    assert!(table["fitted_order"].as_f64().unwrap() > 1.7);
}
