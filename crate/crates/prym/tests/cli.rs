use std::process::{Command, Output};

use prym::jobs::{run_with, Command as Job, ExitStatus, JobSpec};
use prym::report::strip_timings;
use prym_core::counting::Serial;
use prym_core::prym::{split, BiellipticQuartic};
use prym_core::{Field, GaloisField};
use serde_json::Value;

const REFERENCE: &str = r#"{"p": 7, "k": 1, "f": [0,1,0], "g": [1,1,1], "h": [1,0,-1]}"#;

fn prym(args: &[&str]) -> (i32, Value, String) {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_prym")).args(args).output().expect("binary runs");
    let report = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().expect("exit code"), report, String::from_utf8_lossy(&stderr).into_owned())
}

#[test]
fn split_reports_the_same_sextic_as_the_library() {
    let (code, report, _) = prym(&["split", "--curve", REFERENCE]);
    assert_eq!(code, 0);
    assert_eq!(report["schema"], "prym-report/1");
    let k = GaloisField::prime(7).unwrap();
    let c = BiellipticQuartic::from_ints(k.clone(), [0, 1, 0], [1, 1, 1], [1, 0, -1]).unwrap();
    let s = split(&c, false).unwrap();
    let as_ints = |v: &Value| -> Vec<u64> { v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect() };
    let from_lib = |p: &prym_core::poly::UniPoly<prym_core::Gf>| -> Vec<u64> { p.coeffs().iter().map(|c| k.render(c).parse().unwrap()).collect() };
    let r = &report["result"]["split"];
    assert_eq!(as_ints(&r["F"]), from_lib(&s.sextic));
    for (key, poly) in [("a", &s.a), ("b", &s.b), ("c", &s.c)] {
        assert_eq!(as_ints(&r[key]), from_lib(poly), "{key}");
    }
    assert!(r["X"].as_str().unwrap().starts_with("y^2 = "));
}

#[test]
fn corrupted_curve_is_rejected_before_counting() {
    // f = g puts a square factor in fg.
    let doc = r#"{"p": 7, "f": [1,0,2], "g": [1,0,2], "h": [0,1,0]}"#;
    let (code, report, _) = prym(&["verify", "--curve", doc]);
    assert_eq!(code, 3);
    assert_eq!(report["status"], "rejected-input");
    assert!(report["error"]["message"].as_str().unwrap().contains("fg squarefree"));
}

#[test]
fn unknown_keys_are_named() {
    let (code, report, stderr) = prym(&["split", "--curve", r#"{"p": 7, "f": [0,1,0], "g": [1,1,1], "h": [1,0,-1], "eps": 2}"#]);
    assert_eq!(code, 3);
    assert!(report["error"]["message"].as_str().unwrap().contains("`eps`"));
    assert!(stderr.contains("`eps`"));
}

#[test]
fn verify_report_round_trips() {
    let (code, report, _) = prym(&["verify", "--curve", REFERENCE]);
    assert_eq!(code, 0);
    let again = run_with(&JobSpec::inline(Job::Verify, report["input"].to_string()), &Serial);
    assert_eq!(again.status, ExitStatus::Success);
    assert_eq!(strip_timings(&again.report), strip_timings(&report));
}

#[test]
fn report_is_written_to_the_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = prym(&["verify", "--curve", REFERENCE, "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, Value::Null);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["result"]["verdict"]["passed"], true);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn evaluation_cap_exits_with_four() {
    let (code, report, _) = prym(&["verify", "--curve", REFERENCE, "--cap-evals", "10"]);
    assert_eq!(code, 4);
    assert_eq!(report["status"], "resource-cap");
}

#[test]
fn rational_curves_are_checked_at_three_primes() {
    let doc = r#"{"f": [0,1,0], "g": [1,1,1], "h": ["1/2",0,-1]}"#;
    let (code, report, _) = prym(&["verify", "--curve", doc]);
    assert_eq!(code, 0);
    let primes: Vec<u64> = report["result"]["primes"].as_array().unwrap().iter().map(|p| p["p"].as_u64().unwrap()).collect();
    assert_eq!(primes.len(), 3);
    assert!(primes.iter().all(|&p| p >= 5 && p != 2));
}

#[test]
fn bruin_needs_a_finite_field() {
    let (code, _, _) = prym(&["bruin", "--curve", r#"{"f": [0,1,0], "g": [1,1,1], "h": [1,0,-1]}"#]);
    assert_eq!(code, 3);
    let (code, report, _) = prym(&["bruin", "--curve", r#"{"f": [0,1,0], "g": [1,1,1], "h": [1,0,-1]}"#, "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["verdict"]["passed"], true);
}

#[test]
fn golden_discriminant_without_input() {
    let (code, report, _) = prym(&["disc-check"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["paths"]["discriminant"], "-1099511627776");
}

#[test]
fn text_format_and_missing_input() {
    let (code, _, _) = prym(&["verify"]);
    assert_eq!(code, 3);
    let out = Command::new(env!("CARGO_BIN_EXE_prym")).args(["validate", "--curve", REFERENCE, "--format", "text"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: success (exit 0)"));
}

#[test]
fn exit_codes_are_distinct() {
    let all = [ExitStatus::Success, ExitStatus::Internal, ExitStatus::VerificationFailed, ExitStatus::Rejected, ExitStatus::ResourceCap];
    let mut codes: Vec<i32> = all.iter().map(|s| s.code()).collect();
    codes.sort();
    assert_eq!(codes, vec![0, 1, 2, 3, 4]);
}
