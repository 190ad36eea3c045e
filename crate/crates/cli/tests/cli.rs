use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn demo(name: &str) -> String {
    root().join("demos").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratgit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn expected(name: &str) -> Value {
    let text = std::fs::read_to_string(root().join("demos/expected").join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn analyze_companion_of_t12_plus_t() {
    let v = ok_json(&["endo", "analyze", "--field", "Fp(t):p=2", "--matrix", &demo("comp_T12_plus_t.json")]);
    assert_eq!(v["result"]["cocharacter_closed"], json!(true));
    assert_eq!(v["result"]["geometrically_closed"], json!(false));
    assert_eq!(v["result"], expected("analyze_T12_plus_t.json"));
}

#[test]
fn envelope_is_complete_and_deterministic() {
    let args = ["endo", "analyze", "--matrix", "[[1,1],[0,1]]", "--field", "GF(3)", "--seed", "7"];
    let a = ok_json(&args);
    assert_eq!(a["tool"], json!("ratgit"));
    assert_eq!(a["version"], json!(env!("CARGO_PKG_VERSION")));
    assert_eq!(a["command"], json!("endo analyze"));
    assert_eq!(a["descriptor"], json!("GF(3)"));
    assert_eq!(a["seed"], json!(7));
    assert_eq!(a["inputs"]["matrix"], json!([[1, 1], [0, 1]]));
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn figure_p3_matches_fixture() {
    let out = run(&["g2", "figure", "--p", "3", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let fixture = std::fs::read_to_string(demo("g2_figure_p3.dot")).unwrap();
    assert!(stdout.ends_with(&fixture));
    assert!(stdout.starts_with("// ratgit "));
}

#[test]
fn rsquares_closure_of_minus_one() {
    let v = ok_json(&["graph", "access", "--model", "rsquares", "--field", "Q", "--seed-point", "-1"]);
    let nodes = v["result"]["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 2);
    assert_eq!(v["result"]["minimal"], json!("0"));
    assert_eq!(v["result"], expected("access_rsquares_minus_one.json"));
}

#[test]
fn demos_match_fixtures() {
    for d in ["rsquares", "pgl2", "fromf4", "insepext"] {
        let v = ok_json(&["demo", d]);
        assert_eq!(v["result"], expected(&format!("{d}.json")), "demo {d}");
    }
}

#[test]
fn domain_errors_exit_two() {
    let out = run(&["endo", "analyze", "--matrix", "[[1,2,3],[4,5,6]]"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], json!("NonSquare"));
    let out = run(&["g2", "collect", "--word", "u(-a;1)", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], json!("NonClosedSupport"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["endo", "frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["poly", "factor"]).status.code(), Some(1));
    assert_eq!(run(&["poly", "factor", "--poly", "T^2+1", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(run(&["graph", "access", "--model", "fromf4", "--seed-point", "0,0,0,0,0", "--max-nodes", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn poly_reports() {
    let v = ok_json(&["poly", "factor", "--field", "GF(2)", "--poly", "T^4+T^2+1"]);
    assert_eq!(v["result"]["factors"], json!([{"factor": "T^2+T+1", "multiplicity": 2}]));
    let v = ok_json(&["poly", "squarefree", "--field", "Fp(t):p=2", "--poly", "T^2+t"]);
    assert_eq!(v["result"]["squarefree"], json!(true));
    assert_eq!(v["result"]["separable"], json!(false));
    let v = ok_json(&["poly", "factor", "--poly", r#"{"descriptor": "Q", "coeffs": [-1, 0, 1]}"#]);
    assert_eq!(v["result"]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn endo_outputs_round_trip() {
    let v = ok_json(&["endo", "semisimplify", "--field", "Q", "--matrix", "[[2,1],[0,2]]"]);
    let m = serde_json::to_string(&v["result"]["matrix"]).unwrap();
    let again = ok_json(&["endo", "analyze", "--matrix", &m]);
    assert_eq!(again["result"]["cocharacter_closed"], json!(true));
    assert_eq!(again["descriptor"], json!("Q"));

    let w = ok_json(&["endo", "witness", "--field", "Q", "--matrix", "[[2,1],[0,2]]"]);
    let c = serde_json::to_string(&w["result"]["cocharacter"]).unwrap();
    let lim = ok_json(&["endo", "limit", "--field", "Q", "--matrix", "[[2,1],[0,2]]", "--cocharacter", &c]);
    assert_eq!(lim["result"]["limit"], w["result"]["limit"]);
    let u = ok_json(&[
        "endo", "ru-conjugate", "--field", "Q", "--matrix", "[[1,1],[0,2]]", "--limit", "[[1,0],[0,2]]", "--weights", "1,-1",
    ]);
    assert_eq!(u["result"]["conjugator"]["rows"], json!([["1", "-1"], ["0", "1"]]));
    let j = run(&["endo", "ru-conjugate", "--field", "Q", "--matrix", "[[2,1],[0,2]]"]);
    assert_eq!(j.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["error"]["kind"], json!("NotRuConjugate"));

    let l = ok_json(&["endo", "limit", "--field", "Q", "--matrix", "[[1,2],[3,4]]", "--weights", "1,-1"]);
    assert_eq!(l["result"]["exists"], json!(false));
}

#[test]
fn tuples_and_graphs() {
    let t = r#"{"descriptor": "GF(2)", "matrices": [[[1,1],[0,1]], [[1,0],[0,1]]]}"#;
    let v = ok_json(&["tuple", "semisimple", "--tuple", t]);
    assert_eq!(v["result"]["semisimple"], json!(false));
    let g = ok_json(&["tuple", "gcr", "--tuple", t]);
    assert_eq!(g["result"]["gcr"], json!(false));
    let a = ok_json(&["graph", "access", "--model", "tuple", "--seed-point", t]);
    assert_eq!(a["result"]["nodes"].as_array().unwrap().len(), 2);
    let e = ok_json(&["graph", "antisymmetry", "--model", "endo", "--field", "GF(2)", "--n", "2"]);
    assert_eq!(e["result"]["antisymmetric"], json!(true));
    assert_eq!(e["result"]["points"], json!(16));
    let dot = run(&["graph", "access", "--model", "endo", "--seed-point", "[[0,1],[0,0]]", "--format", "dot"]);
    assert!(String::from_utf8(dot.stdout).unwrap().contains("digraph accessibility"));
}

#[test]
fn g2_words() {
    let v = ok_json(&["g2", "collect", "--p", "5", "--word", "u(b;1)*u(a;1)", "--strategy", "rightmost"]);
    assert_eq!(v["result"]["normal_form"].as_str().unwrap().split('*').next(), Some("u(a;1)"));
    let l = ok_json(&["g2", "limit", "--p", "2", "--word", "u(a;1)*u(b;1)", "--coweight", "3,5"]);
    assert_eq!(l["result"]["limit"], json!("1"));
    let n = ok_json(&["g2", "limit", "--field", "Q", "--word", "u(a;1)", "--coroot", "-a"]);
    assert_eq!(n["result"]["exists"], json!(false));
    let bad = run(&["g2", "figure", "--p", "5", "--convention", "1,2,1,1"]);
    assert_eq!(bad.status.code(), Some(2));
}
