use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhowe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v = serde_json::from_str(&stdout(&o)).expect("valid json");
    (o.status.code().unwrap(), v)
}

#[test]
fn qfun_row_partition() {
    let o = run(&["qfun", "--lambda", "2", "--vars", "2", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2*x1^2 + 4*x1*x2 + 2*x2^2");
}

#[test]
fn howe_json_report() {
    let (code, v) = json(&["howe-verify", "--m", "1", "--n", "1", "--k", "2"]);
    assert_eq!(code, 0);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["check", "detail", "dims", "elapsed_ms", "params", "status"]);
    assert_eq!(v["check"], "howe");
    assert_eq!(v["status"], "verified");
    assert_eq!(v["dims"][0]["lambda"], serde_json::json!([2]));
    assert_eq!(v["dims"][0]["contribution"], 2);
}

#[test]
fn tamper_fails_with_exit_one() {
    let o = run(&["--tamper", "sympower-verify", "--m", "1", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let (code, v) = json(&["--tamper", "regular-verify", "--n", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failed");
    assert!(v["detail"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["dims", "--m", "0", "--k", "2"][..],
        &["qfun", "--lambda", "2,2", "--vars", "2", "--degree", "3"],
        &["no-such-command"],
        &["sergeev-verify", "--m", "4", "--k", "4"],
        &["spingroup-mult", "a1", "b7"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn spingroup_product() {
    let (code, v) = json(&["spingroup-mult", "a1", "s1"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "a1*(1 2)");
    let (_, v) = json(&["spingroup-mult", "a1", "a1"]);
    assert_eq!(v["coeff"], "-1");
    assert_eq!(v["eps"], serde_json::json!([0]));
}

#[test]
fn csv_has_header_and_rows() {
    let o = run(&["--format", "csv", "dims", "--m", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("check,params,status"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "zero-weight", "--lambda", "2,1"];
    let strip = |s: String| {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        v["elapsed_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(stdout(&run(&args))), strip(stdout(&run(&args))));
}
