//! The binary against the bundled instance files.

use std::path::PathBuf;
use std::process::{Command, Output};

use quantcat::cli::{parse_instance, serialize_instance};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn quantcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantcat"))
        .args(args)
        .env_remove("QUANTCAT_BUDGET")
        .output()
        .expect("binary runs")
}

fn run_json(name: &str, threads: &str) -> (i32, Value, String) {
    let path = fixture(name);
    let out = quantcat(&["--json", "--threads", threads, "run", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).expect("report is JSON");
    (out.status.code().unwrap(), json, text)
}

fn task<'a>(report: &'a Value, command: &str) -> &'a Value {
    report["tasks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["command"] == command)
        .unwrap_or_else(|| panic!("no {} task", command))
}

const FIXTURES: [(&str, i32); 7] = [
    ("validate.json", 0),
    ("split_lawvere.json", 0),
    ("vcat_lawvere.json", 0),
    ("colimits.json", 0),
    ("monoid_lawvere.json", 1),
    ("noncauchy_colimit.json", 1),
    ("metric.json", 1),
];

#[test]
fn fixtures_exit_with_their_verdicts() {
    for (name, code) in FIXTURES {
        let (exit, report, _) = run_json(name, "2");
        assert_eq!(exit, code, "{}", name);
        assert_eq!(report["exit_code"], code, "{}", name);
    }
}

#[test]
fn json_is_independent_of_thread_count() {
    for (name, _) in FIXTURES {
        assert_eq!(run_json(name, "1").2, run_json(name, "4").2, "{}", name);
    }
}

#[test]
fn monoid_is_rejected_at_its_idempotent() {
    let (_, report, _) = run_json("monoid_lawvere.json", "1");
    for command in ["split", "lawvere"] {
        let t = task(&report, command);
        assert_eq!(t["status"], "fail");
        assert_eq!(t["summary"], "idempotent e does not split");
    }
}

#[test]
fn non_cauchy_colimit_names_the_value() {
    let (_, report, _) = run_json("noncauchy_colimit.json", "1");
    let t = task(&report, "colimit");
    assert_eq!(t["status"], "fail");
    assert!(t["summary"].as_str().unwrap().contains("evaluates to 0"), "{}", t["summary"]);
}

#[test]
fn single_commands_share_the_exit_codes() {
    let monoid = fixture("monoid_lawvere.json");
    assert_eq!(quantcat(&["split", monoid.to_str().unwrap(), "M"]).status.code(), Some(1));
    let split = fixture("split_lawvere.json");
    assert_eq!(quantcat(&["lawvere", split.to_str().unwrap(), "A"]).status.code(), Some(0));
    assert_eq!(quantcat(&["lawvere", split.to_str().unwrap(), "Nope"]).status.code(), Some(2));
}

#[test]
fn budget_overruns_exit_with_three() {
    let split = fixture("split_lawvere.json");
    assert_eq!(quantcat(&["--budget", "5", "run", split.to_str().unwrap()]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_quantcat"))
        .args(["run", split.to_str().unwrap()])
        .env("QUANTCAT_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_carry_a_position() {
    let path = std::env::temp_dir().join(format!("quantcat-bad-{}.json", std::process::id()));
    std::fs::write(&path, "{\n  \"quantale\": \"bool2\",\n  \"objects\": {},\n  \"tasks\": [],\n}\n").unwrap();
    let out = quantcat(&["run", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":5:1:"), "{}", err);
}

#[test]
fn instances_survive_a_round_trip() {
    for (name, _) in FIXTURES {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let inst = parse_instance(&text).unwrap();
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst, "{}", name);
    }
}
