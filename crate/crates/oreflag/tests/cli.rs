use std::fs;
use std::path::Path;

use oreflag::cli::run;
use oreflag_core::corpus::EXAMPLES;
use serde_json::Value;

fn oreflag(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("oreflag").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = oreflag(&full);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    (code, value)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn normal_form_of_a_swapped_pair() {
    let (code, out, _) = oreflag(&["--example", "qplane-q2", "nf", "y x"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2*x*y");
    let (_, v) = json(&["--example", "qplane-q2", "mul", "y", "x^2"]);
    assert_eq!(v["product"], "4*x^2*y");
}

#[test]
fn emitted_examples_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for e in EXAMPLES {
        let (code, dsl, _) = oreflag(&["examples", "emit", e.name]);
        assert_eq!(code, 0);
        let path = write(dir.path(), &format!("{}.ore", e.name), &dsl);
        let (code, v) = json(&["--presentation", &path, "validate"]);
        assert_eq!(code, 0, "{}", e.name);
        assert_eq!(v["consistent"], true, "{}: {v}", e.name);
        if e.module.is_none() {
            continue;
        }
        let (code, module, _) = oreflag(&["examples", "emit", e.name, "--module-json"]);
        assert_eq!(code, 0);
        let mpath = write(dir.path(), &format!("{}.json", e.name), &module);
        let (code, v) = json(&["--module", &mpath, "check-module"]);
        assert_eq!(code, 0, "{}", e.name);
        assert_eq!(v["passed"], true, "{}: {v}", e.name);
        let (code, _) = json(&["--presentation", &path, "--module", &mpath, "triangularize"]);
        assert!(code == 0 || code == 1);
    }
}

#[test]
fn exit_codes_ignore_output_format() {
    let cases: &[&[&str]] = &[
        &["--example", "borel", "triangularize"],
        &["--example", "qplane-qm1", "triangularize"],
        &["--example", "heisenberg", "strict"],
        &["--example", "borel", "strict"],
        &["--example", "qplane-gf5", "verify", "--theorem", "t3"],
        &["--example", "qmatrix22", "verify", "--theorem", "t3"],
        &["--example", "heisenberg", "verify", "--theorem", "na1"],
        &["--example", "s3", "--regular", "triangularize"],
        &["--example", "t2-upper", "extract"],
        &["--example", "jordan3", "ladder"],
        &["--example", "borel", "loewy"],
        &["--example", "qplane-q2", "characters", "--level", "1"],
    ];
    for args in cases {
        let (text_code, _, _) = oreflag(args);
        let (json_code, _) = json(args);
        assert_eq!(text_code, json_code, "{args:?}");
    }
}

#[test]
fn verdicts_map_to_exit_codes() {
    assert_eq!(oreflag(&["--example", "qplane-q2", "verify", "--theorem", "t3"]).0, 0);
    assert_eq!(oreflag(&["--example", "qplane-gf5", "verify", "--theorem", "t3"]).0, 1);
    assert_eq!(oreflag(&["--example", "qmatrix22", "verify", "--theorem", "t3"]).0, 3);
    assert_eq!(oreflag(&["--example", "qplane-qm1", "triangularize"]).0, 1);
    assert_eq!(oreflag(&["--presentation", "/nonexistent/file.ore", "validate"]).0, 2);
    assert_eq!(oreflag(&["frobnicate"]).0, 2);
    assert_eq!(oreflag(&["--help"]).0, 0);
}

#[test]
fn failing_triangularization_reports_a_certificate() {
    let (code, v) = json(&["--example", "qplane-qm1", "triangularize"]);
    assert_eq!(code, 1);
    let text = v.to_string();
    assert!(text.contains("NoCommonEigenvector"), "{text}");
}

#[test]
fn t3_failure_cites_a_cycle() {
    let (code, v) = json(&["--example", "qplane-gf5", "verify", "--theorem", "t3"]);
    assert_eq!(code, 1);
    assert_eq!(v["overall"], "fail");
    assert!(v.to_string().contains("Cycle"), "{v}");
}

#[test]
fn seeded_search_orders_agree_on_characters() {
    let (_, base) = json(&["--example", "borel", "triangularize"]);
    let mut expected: Vec<String> = base["layer_characters"].as_array().unwrap().iter().map(Value::to_string).collect();
    expected.sort();
    for seed in ["1", "2", "99"] {
        let (code, v) = json(&["--example", "borel", "--seed", seed, "triangularize"]);
        assert_eq!(code, 0);
        let mut got: Vec<String> = v["layer_characters"].as_array().unwrap().iter().map(Value::to_string).collect();
        got.sort();
        assert_eq!(got, expected);
    }
}

#[test]
fn modules_from_json_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "borel.ore", "field Q\ngens h e\nswap e h : sigma = h - 2\nleftswap h e : sigma = h + 2\n");
    let module = r#"{"presentation": "borel.ore", "dim": 3,
        "action": {"h": [[2,0,0],[0,0,0],[0,0,-2]], "e": [[0,1,0],[0,0,"1/2"],[0,0,0]]}}"#;
    let path = write(dir.path(), "m.json", module);
    let (code, v) = json(&["--module", &path, "triangularize"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["layer_characters"].as_array().unwrap().len(), 3);

    let bad =
        write(dir.path(), "bad.json", r#"{"presentation": "borel.ore", "dim": 2, "action": {"h": [[1,0],[0,1]]}}"#);
    let (code, _, err) = oreflag(&["--module", &bad, "check-module"]);
    assert_eq!(code, 2);
    assert!(err.contains("no action matrix"), "{err}");
}

#[test]
fn orbit_and_ext_queries() {
    let (code, v) = json(&["--example", "qplane-gf5", "orbit", "--level", "1", "--character", "x:1"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "Cycle");
    assert_eq!(v["length"], 4);
    let (code, out, _) = oreflag(&["--example", "borel", "ext1", "--level", "1", "--lam", "0", "--mu", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1");
}
