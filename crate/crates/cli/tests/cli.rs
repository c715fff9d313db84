use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn lab(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_petty-lab"));
    cmd.args(args).env_remove("PETTY_LAB_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn petty-lab")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(lab(&["no-such-command"], &[]).status.code(), Some(1));
    assert_eq!(lab(&["thm12"], &[]).status.code(), Some(1));
    let sq = config("square.json");
    assert_eq!(lab(&["thm12", "--config", sq.to_str().unwrap()], &[]).status.code(), Some(1));
    assert_eq!(lab(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn verify_kernel_passes() {
    let out = lab(&["verify-kernel"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn petty_on_bare_body() {
    let sq = config("square.json");
    let out = lab(&["petty", "--config", sq.to_str().unwrap()], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    let row = &report["table"]["rows"][0];
    assert!((row[3].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert!((row[2].as_f64().unwrap() - 2.0).abs() < 1e-4);
    let ball = std::f64::consts::PI * std::f64::consts::PI / 4.0;
    assert!((report["values"]["ball_value"].as_f64().unwrap() - ball).abs() < 1e-9);
}

#[test]
fn seeded_runs_repeat_exactly() {
    let cfg = config("thm12_gaussian.json");
    let args = ["thm12", "--config", cfg.to_str().unwrap(), "--seed", "7", "--trials", "300"];
    let a = lab(&args, &[]);
    let b = lab(&args, &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = lab(&["thm12", "--config", cfg.to_str().unwrap(), "--seed", "8", "--trials", "300"], &[]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let cfg = config("empmixed.json");
    let args = ["empmixed", "--config", cfg.to_str().unwrap(), "--trials", "500"];
    let one = lab(&args, &[("PETTY_LAB_THREADS", "1")]);
    let four = lab(&args, &[("PETTY_LAB_THREADS", "4")]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(lab(&args, &[("PETTY_LAB_THREADS", "0")]).status.code(), Some(1));
}

#[test]
fn csv_and_out_file() {
    let cfg = config("lln.json");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lln.csv");
    let out = lab(
        &["lln", "--config", cfg.to_str().unwrap(), "--trials", "200", "--format", "csv", "--out", path.to_str().unwrap()],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let cols = header.split(',').count();
    assert!(cols >= 2);
    assert_eq!(lines.clone().count(), 3);
    assert!(lines.all(|l| l.split(',').count() == cols));
}

#[test]
fn timing_is_opt_in() {
    let cfg = config("symmetrize.json");
    let plain = json(&lab(&["symmetrize", "--config", cfg.to_str().unwrap()], &[]));
    assert!(plain.get("wall_time_s").is_none_or(|v| v.is_null()));
    let timed = json(&lab(&["symmetrize", "--config", cfg.to_str().unwrap(), "--timing"], &[]));
    assert!(timed["wall_time_s"].as_f64().unwrap() >= 0.0);
}
