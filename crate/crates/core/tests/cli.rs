use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

const DOUBLE_TRIANGLE: &str = include_str!("data/double_triangle.json");
const DOUBLE_PATH: &str = include_str!("data/double_path.json");

/// A scratch directory per test, so tests can run in parallel.
struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_string()
    }
}

fn chipfire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chipfire")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn canonical_divisor_output_is_exact() {
    let s = Scratch::new("canonical");
    let g = s.file("g.json", DOUBLE_TRIANGLE);
    let out = chipfire(&["canonical", "--graph", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"v1\":2,\"v2\":2,\"v3\":2}\n");
}

#[test]
fn validate_reports_genus() {
    let s = Scratch::new("validate");
    let g = s.file("g.json", DOUBLE_PATH);
    let v = stdout_json(&chipfire(&["validate", "--graph", &g]));
    assert_eq!(v, json!({"valid": true, "vertices": 3, "edges": 4, "genus": 2}));

    let bad = s.file("bad.json", r#"{"vertices":[{"id":"a"},{"id":"b"}],"edges":[]}"#);
    let out = chipfire(&["validate", "--graph", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Disconnected");
}

#[test]
fn effective_certificate() {
    let s = Scratch::new("effective");
    let g = s.file("g.json", DOUBLE_TRIANGLE);
    let d = s.file("d.json", r#"{"v1":2,"v2":2,"v3":-1}"#);
    let v = stdout_json(&chipfire(&["effective", "--graph", &g, "--divisor", &d]));
    assert_eq!(v["verdict"], "effective");
    assert_eq!(v["representative"], json!({"v1":0,"v2":0,"v3":3}));
    assert_eq!(v["script"], json!({"v1":1,"v2":1,"v3":0}));
    assert_eq!(v["firings"], 1);
    assert!(v.get("trace").is_none());

    let traced = stdout_json(&chipfire(&["effective", "--graph", &g, "--divisor", &d, "--trace"]));
    assert_eq!(traced["trace"].as_array().unwrap().len(), 1);
    assert_eq!(traced["trace"][0]["fired"], json!(["v1", "v2"]));

    let hopeless = s.file("n.json", r#"{"v1":0,"v2":0,"v3":-1}"#);
    let v = stdout_json(&chipfire(&["effective", "--graph", &g, "--divisor", &hopeless]));
    assert_eq!(v["verdict"], "not_effective");
}

#[test]
fn dhar_on_a_reduced_divisor_is_empty() {
    let s = Scratch::new("dhar");
    let g = s.file("g.json", DOUBLE_TRIANGLE);
    let d = s.file("d.json", r#"{"v1":2,"v2":2,"v3":2}"#);
    let v = stdout_json(&chipfire(&["dhar", "--graph", &g, "--divisor", &d, "--set", "v1,v2"]));
    assert_eq!(v["w_dhar"], json!([]));

    let d = s.file("d2.json", r#"{"v1":2,"v2":2,"v3":-1}"#);
    let v = stdout_json(&chipfire(&["dhar", "--graph", &g, "--divisor", &d, "--set", "v3"]));
    assert_eq!(v["w_dhar"], json!(["v1", "v2"]));
}

#[test]
fn fire_and_reduce() {
    let s = Scratch::new("fire");
    let g = s.file("g.json", DOUBLE_PATH);
    let d = s.file("d.json", r#"{"v1":3,"v2":0,"v3":0}"#);
    let v = stdout_json(&chipfire(&["fire", "--graph", &g, "--divisor", &d, "--set", "v1"]));
    assert_eq!(v, json!({"v1":1,"v2":2,"v3":0}));

    let v = stdout_json(&chipfire(&["reduce", "--graph", &g, "--divisor", &d, "--vertex", "v3"]));
    assert_eq!(v["divisor"], json!({"v1":1,"v2":0,"v3":2}));
    assert_eq!(v["script"], json!({"v1":2,"v2":1,"v3":0}));

    let v = stdout_json(&chipfire(&["reduce", "--graph", &g, "--divisor", &d, "--set", "v3"]));
    assert_eq!(v["divisor"], json!({"v1":1,"v2":0,"v3":2}));

    let out = chipfire(&["reduce", "--graph", &g, "--divisor", &d, "--vertex", "v1", "--set", "v2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = chipfire(&["reduce", "--graph", &g, "--divisor", &d]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn residual_output_feeds_back_in() {
    let s = Scratch::new("residual");
    let g = s.file("g.json", DOUBLE_TRIANGLE);
    let d = s.file("d.json", r#"{"v1":5,"v2":-1,"v3":0}"#);
    let once = chipfire(&["residual", "--graph", &g, "--divisor", &d]);
    assert_eq!(stdout_json(&once), json!({"v1":-3,"v2":3,"v3":2}));
    let star = s.file("star.json", std::str::from_utf8(&once.stdout).unwrap());
    let twice = stdout_json(&chipfire(&["residual", "--graph", &g, "--divisor", &star]));
    assert_eq!(twice, json!({"v1":5,"v2":-1,"v3":0}));
}

#[test]
fn witness_output_is_a_valid_target() {
    let s = Scratch::new("witness");
    let g = s.file("g.json", DOUBLE_PATH);
    let d = s.file("d.json", r#"{"v1":1,"v2":3,"v3":2}"#);
    let out = chipfire(&["witness-e", "--graph", &g, "--divisor", &d, "--set", "v1,v3"]);
    assert_eq!(stdout_json(&out), json!({"v1":"5/2","v2":"0","v3":"7/2"}));
    let e = s.file("e.json", std::str::from_utf8(&out.stdout).unwrap());

    let q = stdout_json(&chipfire(&["qfun", "--graph", &g, "--divisor", &d, "--target", &e]));
    assert_eq!(q, json!({"q": {"v1":"0","v2":"3/4","v3":"0"}, "zero_set": ["v1","v3"], "total": "3/4"}));

    let r = stdout_json(&chipfire(&["ereduced", "--graph", &g, "--divisor", &d, "--target", &e]));
    assert_eq!(r["e_reduced"], true);
    assert_eq!(r["set"], json!(["v1", "v3"]));
    assert_eq!(r["bound"], 12);
    assert_eq!(r["improvement"], Value::Null);
}

#[test]
fn ereduced_is_independent_of_jobs() {
    let s = Scratch::new("jobs");
    let g = s.file("g.json", DOUBLE_PATH);
    let d = s.file("d.json", r#"{"v1":1,"v2":3,"v3":2}"#);
    let e = s.file("e.json", r#"{"v1":-4,"v2":0,"v3":10}"#);
    let run = |jobs: &str| {
        chipfire(&["ereduced", "--graph", &g, "--divisor", &d, "--target", &e, "--bound", "5", "--jobs", jobs]).stdout
    };
    let serial = run("1");
    let parsed: Value = serde_json::from_slice(&serial).unwrap();
    assert_eq!(parsed["e_reduced"], false);
    assert!(parsed["improvement"]["divisor"].is_object());
    assert_eq!(run("2"), serial);
    assert_eq!(run("4"), serial);

    let out = chipfire(&["ereduced", "--graph", &g, "--divisor", &d, "--target", &e, "--jobs", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn uniform_special_and_quasi_uniform() {
    let s = Scratch::new("uniform");
    let g = s.file("g.json", DOUBLE_TRIANGLE);
    let d = s.file("d.json", r#"{"v1":0,"v2":0,"v3":3}"#);
    let u = stdout_json(&chipfire(&["uniform", "--graph", &g, "--divisor", &d]));
    assert_eq!(u, json!({"uniform": false, "semistable": true, "uniform_guarantee": false}));

    let sp = stdout_json(&chipfire(&["special", "--graph", &g, "--divisor", &d]));
    assert_eq!(sp["is_special"], true);
    assert_eq!(sp["effective_rep"], json!({"v1":0,"v2":0,"v3":3}));
    assert_eq!(sp["certificates"]["residual"]["verdict"], "effective");
    assert!(sp["certificates"]["divisor"].get("trace").is_none());
    let traced = stdout_json(&chipfire(&["special", "--graph", &g, "--divisor", &d, "--trace"]));
    assert!(traced["certificates"]["divisor"]["trace"].is_array());

    let q = stdout_json(&chipfire(&["quasi-uniform", "--graph", &g, "--divisor", &d]));
    assert_eq!(q["representative"], json!({"v1":0,"v2":0,"v3":3}));
    assert_eq!(q["firings"], 1);
    assert!(q["near_uniform"].is_object());

    let not_special = s.file("n.json", r#"{"v1":0,"v2":0,"v3":7}"#);
    let out = chipfire(&["quasi-uniform", "--graph", &g, "--divisor", &not_special]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "NotSpecialClass");
}

#[test]
fn errors_and_exit_codes() {
    let s = Scratch::new("errors");
    let g = s.file("g.json", DOUBLE_TRIANGLE);
    let d = s.file("d.json", r#"{"v1":2,"v2":2,"v3":-1}"#);

    let out = chipfire(&["dhar", "--graph", &g, "--divisor", &d, "--set", "v9"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "UnknownVertex");
    assert!(err["message"].as_str().unwrap().contains("v9"));
    assert!(out.stdout.is_empty());

    let missing = s.file("m.json", r#"{"v1":2,"v2":2}"#);
    let out = chipfire(&["effective", "--graph", &g, "--divisor", &missing]);
    assert_eq!(out.status.code(), Some(1));

    let out = chipfire(&["effective", "--graph", &g, "--divisor", &d, "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = chipfire(&["effective", "--graph", "/nonexistent/g.json", "--divisor", &d]);
    assert_eq!(out.status.code(), Some(2));
    let out = chipfire(&[]);
    assert_eq!(out.status.code(), Some(2));
    let out = chipfire(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_deterministic_and_pretty_prints() {
    let s = Scratch::new("pretty");
    let g = s.file("g.json", DOUBLE_TRIANGLE);
    let d = s.file("d.json", r#"{"v1":-2,"v2":5,"v3":-1}"#);
    let args = ["effective", "--graph", g.as_str(), "--divisor", d.as_str(), "--trace"];
    let first = chipfire(&args).stdout;
    for _ in 0..3 {
        assert_eq!(chipfire(&args).stdout, first);
    }
    let compact: Value = serde_json::from_slice(&first).unwrap();
    let mut pretty_args = args.to_vec();
    pretty_args.push("--pretty");
    let pretty = chipfire(&pretty_args).stdout;
    assert!(pretty.iter().filter(|&&b| b == b'\n').count() > 1);
    assert_eq!(serde_json::from_slice::<Value>(&pretty).unwrap(), compact);
}
