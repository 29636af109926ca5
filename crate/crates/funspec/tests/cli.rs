use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_funspec"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report on stdout")
}

fn task<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["tasks"].as_array().unwrap().iter().find(|t| t["task"] == name).unwrap()
}

#[test]
fn a2_all_tasks() {
    let out = run(&["quiver", "--config", config("a2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(task(&r, "points")["details"]["count"], 2);
    assert_eq!(task(&r, "ideals")["details"]["count"], 4);
    assert_eq!(task(&r, "primes")["details"]["count"], 2);
    assert_eq!(task(&r, "path-algebra")["details"]["dim"], 3);
    assert!(r["tasks"].as_array().unwrap().iter().all(|t| t["status"] == "pass" && t["shadows"].is_string()));
}

#[test]
fn z12_stalks() {
    let out = run(&["ring", "--config", config("z12.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let rings: Vec<&str> = task(&r, "stalks")["details"]["stalks"].as_array().unwrap().iter().map(|s| s["ring"].as_str().unwrap()).collect();
    assert_eq!(rings, ["Z/4", "Z/3"]);
    assert_eq!(task(&r, "comparison")["details"]["injective"], true);
}

#[test]
fn ring_shortcut_runs_every_applicable_task() {
    let out = run(&["ring", "--zmod", "6", "--task", "points", "--task", "primes", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["seed"], 3);
    assert_eq!(r["tasks"].as_array().unwrap().len(), 2);
}

#[test]
fn orbit_has_no_points_and_one_prime() {
    let out = run(&["orbit", "--config", config("orbit2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(task(&r, "points")["details"]["count"], 0);
    assert_eq!(task(&r, "primes")["details"]["count"], 1);
    assert_eq!(task(&r, "comparison")["details"]["non_surjective"], true);

    let out = run(&["orbit", "check", "--m", "5", "--field", "f3", "--samples", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"instance": {"orbit": {"m": 2, "field": "f6"}}, "tasks": ["stalks"]}"#).unwrap();
    let out = run(&["orbit", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["status"], "invalid");
    assert_eq!(diag["diagnostics"].as_array().unwrap().len(), 2);

    let out = run(&["quiver", "--config", config("z12.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["quiver"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["ring", "--zmod", "12", "--task", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cyclic_quiver_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.json");
    std::fs::write(
        &path,
        r#"{"instance": {"quiver": {"vertices": ["1", "2"], "arrows": [["1", "2", "a"], ["2", "1", "b"]], "field": "f2"}},
            "tasks": ["points"]}"#,
    )
    .unwrap();
    assert_eq!(run(&["quiver", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = run(&["quiver", "--config", config("a2.json").to_str().unwrap(), "--seed", "11", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&out.stdout).contains("[pass]"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn corrupted_suite_fails() {
    let out = run(&["verify", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[FAIL] 4."));
    assert!(text.contains("support of a tensor is the intersection"));
    assert!(text.contains("8/9 criteria passed"));
}
