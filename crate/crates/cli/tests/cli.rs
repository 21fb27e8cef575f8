use std::process::{Command, Output};

use serde_json::{json, Value};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grid-domino-lab")).args(args).output().expect("binary runs")
}

fn payload(args: &[&str]) -> Value {
    let out = lab(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

#[test]
fn solve_examples() {
    let v = payload(&["solve", "--problem", "2dom", "-n", "3", "-m", "3"]);
    assert_eq!((&v["status"], &v["value"]), (&json!("ok"), &json!(4)));
    let v = payload(&["solve", "--problem", "ab:1,1", "-n", "1", "-m", "1"]);
    assert_eq!(v["status"], "infeasible");
    assert!(v.get("value").is_none());
}

#[test]
fn verify_small_two_dom_sweep() {
    let v = payload(&["verify", "--problem", "2dom", "--max-n", "5", "--max-m", "20"]);
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["checked"], 90);
}

#[test]
fn counts_are_decimal_strings() {
    let v = payload(&["count", "--problem", "dom", "-n", "8", "-m", "8"]);
    assert!(v["count"].as_str().unwrap().chars().all(|c| c.is_ascii_digit()));
    let v = payload(&["oracle", "--problem", "dom", "-n", "2", "-m", "2"]);
    assert_eq!((&v["value"], &v["count"]), (&json!(2), &json!("11")));
}

#[test]
fn keys_are_sorted_and_timing_stays_on_stderr() {
    let out = lab(&["formula", "--problem", "2dom", "-n", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("elapsed"));
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(String::from_utf8(out.stderr).unwrap().contains("elapsed_seconds"));
}

#[test]
fn errors_set_exit_codes() {
    assert_eq!(lab(&["solve", "--problem", "nope", "-n", "1", "-m", "1"]).status.code(), Some(2));
    assert_eq!(lab(&["solve", "--problem", "2dom", "-n", "1"]).status.code(), Some(2));
    let out = lab(&["loss-bound", "--problem", "2dom", "-n", "5", "-m", "9", "--height", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let v = payload(&["oracle", "--problem", "dom", "-n", "6", "-m", "6"]);
    assert_eq!(v["status"], "capacity_exceeded");
}

#[test]
fn state_cache_does_not_change_results() {
    let dir = std::env::temp_dir().join(format!("gdl-cli-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let d = dir.to_str().unwrap();
    for args in [
        &["solve", "--problem", "roman", "-n", "6", "-m", "17"][..],
        &["count", "--problem", "total", "-n", "5", "-m", "9"][..],
        &["growth", "--problem", "minimal-dom", "-n", "4"][..],
    ] {
        let plain = lab(args).stdout;
        let cold = lab(&[&["--state-cache", d][..], args].concat()).stdout;
        let warm = lab(&[&["--state-cache", d][..], args].concat()).stdout;
        assert_eq!(plain, cold);
        assert_eq!(plain, warm);
    }
    assert!(std::fs::read_dir(&dir).unwrap().count() >= 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_identical_across_worker_counts() {
    let args = ["rauzy", "--problem", "roman"];
    let base = lab(&[&["--threads", "1"][..], &args].concat()).stdout;
    for t in ["2", "8"] {
        assert_eq!(lab(&[&["--threads", t][..], &args].concat()).stdout, base);
    }
    let env = Command::new(env!("CARGO_BIN_EXE_grid-domino-lab"))
        .args(args)
        .env("GDL_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, base);
    assert!(String::from_utf8(env.stderr).unwrap().contains("\"threads\":3"));
}
