use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stabilab"))
}

fn rate_config(out: &Path, test_m: usize) -> Value {
    json!({
        "kind": "rate",
        "spec": {
            "d": 3, "x_family": "uniform_ball", "b_x": 1.0, "y_model": "linear_clipped",
            "beta_star": [0.5, -0.3, 0.2], "noise_scale": 0.3, "b_y": 1.0
        },
        "algorithm": {"ridge": {"lambda": 0.5, "eta": 0.5}},
        "n_grid": [16, 32, 64, 128],
        "q_grid": [2.0],
        "x_grid": [1.0],
        "reps": 100,
        "test_m": test_m,
        "base_seed": 11,
        "out_dir": out
    })
}

fn write_config(dir: &Path, cfg: &Value) -> std::path::PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(cfg).unwrap()).unwrap();
    path
}

fn run(args: &[&str], config: &Path, threads: Option<&str>) -> Output {
    let mut cmd = bin();
    cmd.args(args).arg("--config").arg(config);
    if let Some(t) = threads {
        cmd.env("STABILAB_THREADS", t);
    }
    cmd.output().unwrap()
}

#[test]
fn successful_run_writes_named_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let config = write_config(dir.path(), &rate_config(&out, 5000));
    let res = run(&["rate", "--emit", "csv,json,svg", "--seed", "42"], &config, None);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    for ext in ["csv", "json", "svg"] {
        assert!(out.join(format!("rate_42.{ext}")).exists());
    }
    assert!(!out.join(".stabilab.lock").exists());
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &rate_config(&dir.path().join("unused"), 5000));
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}"));
        let res = run(&["rate", "--out", out.to_str().unwrap()], &config, Some(threads));
        assert_eq!(res.status.code(), Some(0));
        outputs.push((std::fs::read(out.join("rate_11.csv")).unwrap(), std::fs::read(out.join("rate_11.json")).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &rate_config(&dir.path().join("out"), 5000));
    // kind mismatch
    assert_eq!(run(&["coverage"], &config, None).status.code(), Some(2));
    // malformed JSON
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["rate"], &bad, None).status.code(), Some(2));
    // unknown emit format
    assert_eq!(run(&["rate", "--emit", "pdf"], &config, None).status.code(), Some(2));
    // geometric grid violated
    let mut cfg = rate_config(&dir.path().join("out"), 5000);
    cfg["n_grid"] = json!([16, 32, 50, 128]);
    let config = write_config(dir.path(), &cfg);
    assert_eq!(run(&["rate"], &config, None).status.code(), Some(2));
    // bad thread count
    assert_eq!(run(&["rate"], &config, Some("zero")).status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let mut cfg = rate_config(&out, 5000);
    cfg["kind"] = json!("coverage");
    cfg["algorithm"] = json!({"ridge": {"lambda": 0.001, "eta": 0.5}});
    cfg["reps"] = json!(50);
    let config = write_config(dir.path(), &cfg);
    let res = run(&["coverage"], &config, None);
    assert_eq!(res.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&res.stderr).contains("validity domain"));

    // a held lock
    let config = write_config(dir.path(), &rate_config(&out, 5000));
    std::fs::create_dir_all(&out).unwrap();
    std::fs::write(out.join(".stabilab.lock"), b"").unwrap();
    assert_eq!(run(&["rate"], &config, None).status.code(), Some(3));
}

/// With two test points per replication the prediction-error noise swamps the
/// deviation at every n, so the fitted slope leaves the admissible window.
#[test]
fn broken_rate_signal_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let config = write_config(dir.path(), &rate_config(&out, 2));
    let res = run(&["rate"], &config, None);
    assert_eq!(res.status.code(), Some(4), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(String::from_utf8_lossy(&res.stderr).contains("rate slope"));
    assert!(out.join("rate_11.csv").exists());
}
