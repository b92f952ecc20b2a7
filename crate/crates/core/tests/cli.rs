use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const FIRST: &str = r#"{"base":[{"kind":"surface","genus":5},{"kind":"surface","genus":3}],"K":[[2,1],[1,3]],"split":[0,0]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fiberjoin"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(args: &[&str], stdin: &str) -> Value {
    let out = run(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_from_stdin() {
    let v = json_out(&["classify"], FIRST);
    let verdicts = v["verdicts"].as_array().unwrap();
    let csc = verdicts.iter().find(|x| x["kind"] == "csc_regular_ray").unwrap();
    assert_eq!(csc["rule"], "R7");
    assert_eq!(csc["witness"]["s"], "-1/1");
    assert_eq!(csc["witness"]["Q"], json!(["3/4", "-1/6", "1/12"]));
    assert_eq!(v["invariants"]["euler"], 7);
    assert_eq!(v["invariants"]["cone_decomposable"], false);
}

#[test]
fn file_input_and_subcommands() {
    let dir = std::env::temp_dir().join(format!("fiberjoin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    std::fs::write(&path, FIRST).unwrap();
    let p = path.to_str().unwrap();

    let csc = json_out(&["csc", p], "");
    assert_eq!(csc["s"], "-1/1");
    assert_eq!(csc["verdict"], "csc");
    assert_eq!(csc["data"][0]["s"], "-8/1");
    assert_eq!(csc["data"][1]["r"], "-1/2");

    let ext = json_out(&["extremal", p], "");
    // F = (1 - z²) Q when d0 = dinf = 0
    assert_eq!(ext["F_extr"], json!(["3/4", "-1/6", "-2/3", "1/6", "-1/12"]));
    assert_eq!(ext["positive"], true);

    let inv = json_out(&["invariants", p], "");
    assert_eq!(inv["cohomology"][4], "H^4 = Z^16 + Z_7");

    let se = json_out(&["se", "-"], FIRST);
    assert_eq!(se["status"], "obstructed");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn survey_formats() {
    let doc = r#"{"base":[{"kind":"projective_space","n":1},{"kind":"projective_space","n":1}],"split":[0,0]}"#;
    let v = json_out(&["survey", "--max-entry", "2"], doc);
    assert_eq!(v["metadata"]["enumerated"], 16);
    assert_eq!(v["entries"].as_array().unwrap().len(), v["metadata"]["entries"].as_u64().unwrap() as usize);

    let out = run(&["survey", "--max-entry", "2", "--format", "csv"], doc);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("K,c1,colinear"));
    assert_eq!(lines.count(), v["metadata"]["entries"].as_u64().unwrap() as usize);

    let empty = json_out(&["survey", "--min-entry", "3", "--max-entry", "2"], doc);
    assert_eq!(empty["entries"], json!([]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify"], "not json").status.code(), Some(1));
    assert_eq!(run(&["classify"], r#"{"base":[{"kind":"torus"}],"K":[[1],[0]]}"#).status.code(), Some(1));
    let too_big = r#"{"base":[{"kind":"torus"},{"kind":"torus"}]}"#;
    assert_eq!(run(&["survey", "--max-entry", "50", "--cap", "10"], too_big).status.code(), Some(1));
    // equal r on both factors makes the CSC system degenerate
    let degenerate = r#"{"base":[{"kind":"surface","genus":2},{"kind":"surface","genus":3}],"K":[[2,2],[1,1]]}"#;
    let out = run(&["csc"], degenerate);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("same r"));
    assert_eq!(run(&["extremal", "/nonexistent/spec.json"], "").status.code(), Some(1));
}
