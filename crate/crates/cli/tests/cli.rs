use std::process::Command;

fn abscon(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_abscon")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn passing_scenario_exits_zero() {
    let (code, out, _) = abscon(&["--format", "json", "scenario", "fig2-maxrule"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
}

#[test]
fn failing_instance_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{ "name": "bad", "domain": { "backend": "grid", "points": [0, 1] }, "families": { "L": ["-x", "x"] },
             "checks": [{ "check": "operator-monotone", "family": "L", "pairs": [[0, "x"], [1, "-x"]] }] }"#,
    )
    .unwrap();
    let (code, out, _) = abscon(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn load_errors_exit_two() {
    assert_eq!(abscon(&["scenario", "no-such-scenario"]).0, 2);
    assert_eq!(abscon(&["check", "/no/such/file.json"]).0, 2);
    assert_eq!(abscon(&["bogus-command"]).0, 2);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.csv");
    let (code, out, _) = abscon(&[
        "--out", path.to_str().unwrap(), "plot-data", "fig1-separation", "--functions", "H", "--range", "-4:4", "--step", "1/4",
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 34);
}

#[test]
fn small_suite_runs() {
    let (code, out, _) = abscon(&["--format", "json", "suite", "--seed", "3", "--count", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["scenario"], "suite seed=3 count=1");
    assert!(v.get("elapsed_ms").is_none());
}
