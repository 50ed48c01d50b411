use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnc")).args(args).output().expect("spawn gnc")
}

fn stdout(args: &[&str]) -> String {
    let out = gnc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "4", "--avoid", "h", "--method", "formula"]), "217\n");
    assert_eq!(stdout(&["count", "2"]), "12\n");
    for m in ["brute", "formula", "series"] {
        assert_eq!(stdout(&["count", "3", "--avoid", "h,d", "--method", m]), "11\n");
    }
    assert_eq!(stdout(&["count", "5", "--avoid", "uu,h,dd", "--method", "series"]), "456\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gnc(&["count", "4", "--avoid", "uu,ud", "--method", "series"]).status.code(), Some(2));
    assert_eq!(gnc(&["count", "4", "--avoid", "uu,ud", "--method", "formula"]).status.code(), Some(2));
    assert_eq!(gnc(&["count", "4", "--avoid", "x"]).status.code(), Some(2));
    assert_eq!(gnc(&["count", "9"]).status.code(), Some(2));
    assert_eq!(gnc(&["series", "master", "--order", "30"]).status.code(), Some(2));
    assert_eq!(gnc(&["count"]).status.code(), Some(2));
}

#[test]
fn census_output() {
    let csv = stdout(&["census", "3", "--avoid", "h"]);
    assert_eq!(csv, "u,h,d,count\n1,0,2,6\n2,0,1,14\n3,0,0,11\n");
    assert_eq!(stdout(&["census", "0"]), "u,h,d,count\n0,0,0,1\n");
    assert_eq!(stdout(&["census", "1", "--star"]), "u,h,d,count\n1,0,0,1\n");
    assert_eq!(stdout(&["census", "2"]).lines().count(), 5);
    let json: serde_json::Value = serde_json::from_str(&stdout(&["census", "3", "--avoid", "h", "--format", "json"])).unwrap();
    assert!(json.is_object() || json.is_array());
}

#[test]
fn jobs_do_not_change_output() {
    for args in [
        vec!["census", "6", "--avoid", "uu"],
        vec!["census", "6", "--star", "--format", "json"],
        vec!["count", "6", "--avoid", "h,du"],
    ] {
        let one = gnc(&[args.as_slice(), &["--jobs", "1"]].concat());
        let eight = gnc(&[args.as_slice(), &["--jobs", "8"]].concat());
        assert!(one.status.success());
        assert_eq!(one.stdout, eight.stdout, "{args:?}");
    }
}

#[test]
fn series_output() {
    let text = stdout(&["series", "master", "--order", "2"]);
    assert_eq!(text, "t^0: 1\nt^1: x + y\nt^2: 3*x^2 + 4*x*y + 2*x*z + 3*y^2\n");
    assert_eq!(stdout(&["series", "master", "--order", "4", "--at", "1,1,1"]), "1,2,12,96,880\n");
    assert_eq!(stdout(&["series", "ternary", "--order", "4", "--at", "1,1,1"]), "1,1,3,12,55\n");
    assert_eq!(
        stdout(&["series", "uu-dd", "--order", "4", "--at", "1,0,1"]),
        "uu: 1,1,4,20,116\ndd: 1,1,5,29,185\n"
    );
    assert_eq!(stdout(&["series", "ternary", "--order", "5", "--at", "1,1,1"]), "1,1,3,12,55,273\n");
    assert!(stdout(&["series", "ud-du", "--order", "6", "--at", "1,0,1"]).starts_with("ud: 1,1,3,11,45,197,903\n"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["series", "uudd", "--order", "3", "--format", "json"])).unwrap();
    assert!(json.get("uudd").is_some());
}

#[test]
fn bijection_commands() {
    let three = stdout(&["bijection", "check", "3"]);
    assert!(three.contains("trees: 11\n") && three.contains("distinct encodings: 11\n"));
    let ud: serde_json::Value = serde_json::from_str(&stdout(&["bijection", "decode", "UD"])).unwrap();
    assert_eq!(ud["labels"], serde_json::json!([1, 2]));
    let check = stdout(&["bijection", "check", "4"]);
    assert!(check.contains("trees: 45\n"));
    assert!(check.ends_with("result: pass\n"));

    let tree = stdout(&["bijection", "decode", "UFFUFDDUUDD"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_gnc"))
        .args(["bijection", "encode", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(tree.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "UFFUFDDUUDD\n");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("tree.json");
    std::fs::write(&file, &tree).unwrap();
    assert_eq!(stdout(&["bijection", "encode", file.to_str().unwrap()]), "UFFUFDDUUDD\n");

    assert_eq!(gnc(&["bijection", "decode", "UDD"]).status.code(), Some(1));
}

#[test]
fn oeis_output() {
    assert_eq!(stdout(&["oeis", "gnc-h", "--max-n", "4"]), "0 1\n1 1\n2 5\n3 31\n4 217\n");
    assert_eq!(
        stdout(&["oeis", "gnc-du-h", "--max-n", "3", "--format", "csv"]),
        "n,value\n0,1\n1,1\n2,5\n3,27\n"
    );
    assert!(stdout(&["oeis", "gnc-du-h", "--max-n", "6"]).ends_with("6 6025\n"));
    assert!(stdout(&["oeis", "gnc-total", "--max-n", "4"]).ends_with("4 880\n"));
    assert_eq!(gnc(&["oeis", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let ok = gnc(&["verify", "--suite", "theorems", "--max-n", "5", "-o", report.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["pass"], true);

    let bad = gnc(&["verify", "--suite", "theorems", "--max-n", "5", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(json["pass"], false);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("FAIL"));
}
