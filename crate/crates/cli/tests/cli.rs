use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use qv_cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn qv(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("qv").chain(args.iter().copied()));
    let report = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).unwrap() };
    (out.code, report)
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn dims_on_jordan_file() {
    let (code, r) = qv(&["dims", "--quiver", &fixture("jordan.json"), "--v", "3", "--w", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["nakajima_dim"], 6);
    assert_eq!(r["seed"], 0);
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn hecke_relation_is_reported() {
    let (code, r) = qv(&["conv", "hecke", "--n", "2", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["relation"], "T^2 = 1*T + 2*Id");
    let (_, r) = qv(&["conv", "hecke", "--n", "2", "--q", "3"]);
    assert_eq!(r["results"]["relation"], "T^2 = 2*T + 3*Id");
}

#[test]
fn double_of_a2_has_star_pairing() {
    let (code, r) = qv(&["quiver", "double", "--quiver", &fixture("a2.json")]);
    assert_eq!(code, 0);
    let q = &r["results"]["quiver"];
    assert_eq!(q["edges"].as_array().unwrap().len(), 2);
    assert_eq!(q["provenance"]["star_pairs"][0], serde_json::json!(["a1", "a1*"]));
    // the output is itself a valid quiver
    let f = temp_json(&q.to_string());
    let (code, r) = qv(&["quiver", "cartan", "--quiver", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    // the double counts each edge twice
    assert_eq!(r["results"]["cartan"], serde_json::json!([[2, -2], [-2, 2]]));
}

#[test]
fn reports_are_deterministic() {
    let args = ["mckay", "build", "--group", "bi"];
    assert_eq!(run(std::iter::once("qv").chain(args)), run(std::iter::once("qv").chain(args)));
    let a = run(["qv", "--seed", "3", "selftest", "--only", "7"]);
    let b = run(["qv", "--seed", "3", "selftest", "--only", "7"]);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
}

#[test]
fn digest_tracks_file_contents() {
    let a = temp_json(r#"{"vertices":["0"],"edges":[{"name":"x","tail":"0","head":"0"}]}"#);
    let b = temp_json(r#"{"vertices":["0"],"edges":[{"name":"y","tail":"0","head":"0"}]}"#);
    let d = |f: &tempfile::NamedTempFile| {
        let (code, r) = qv(&["dims", "--quiver", f.path().to_str().unwrap(), "--v", "2"]);
        assert_eq!(code, 0);
        r["inputs_digest"].clone()
    };
    assert_ne!(d(&a), d(&b));
}

#[test]
fn input_errors_exit_with_two() {
    let out = run(["qv", "dims", "--quiver", "no-such-quiver", "--v", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("no-such-quiver"));
    let bad = temp_json("{not json");
    assert_eq!(qv(&["dims", "--quiver", bad.path().to_str().unwrap(), "--v", "1"]).0, 2);
    assert_eq!(qv(&["dims", "--quiver", "a2", "--v", "[1]"]).0, 2);
    assert_eq!(qv(&["roots", "gg", "--quiver", "a2", "--v", "[1,1]", "--lambda", "[1,0]"]).0, 2);
    assert_eq!(qv(&["selftest", "--only", "99"]).0, 2);
    assert_eq!(qv(&["frobnicate"]).0, 2);
    assert_eq!(run(["qv", "--help"]).code, 0);
}

#[test]
fn failed_checks_exit_with_one() {
    let rep = fixture("a2_rep.json");
    assert_eq!(qv(&["rep", "stable", "--rep", &rep, "--theta", "minus", "--expect", "stable"]).0, 0);
    let (code, r) = qv(&["rep", "stable", "--rep", &rep, "--theta", "plus", "--expect", "stable"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["stable"], false);
    assert_eq!(qv(&["rep", "check", "--rep", &rep, "--lambda", "[1,-1]"]).0, 0);
    assert_eq!(qv(&["rep", "check", "--rep", &rep, "--lambda", "[0,0]"]).0, 1);
    let not_cyclic = temp_json(r#"{"n": 2, "x": [[0,0],[0,0]], "y": [[0,0],[0,0]], "i": [[1],[0]]}"#);
    assert_eq!(qv(&["adhm", "check", "--data", not_cyclic.path().to_str().unwrap()]).0, 1);
    assert_eq!(qv(&["adhm", "check", "--data", &fixture("hilb2.json")]).0, 0);
}

#[test]
fn adhm_commands() {
    let (code, r) = qv(&["adhm", "ideal", "--data", &fixture("hilb2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["generators"], serde_json::json!(["y", "x^2"]));
    let (code, r) = qv(&["adhm", "cm", "--data", &fixture("cm2.json"), "--lambda", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["report"]["expected_dim"], 4);
    assert_eq!(qv(&["adhm", "cm", "--data", &fixture("cm2.json"), "--lambda", "2"]).0, 2);
}

#[test]
fn mckay_and_convolution_commands() {
    let (code, r) = qv(&["mckay", "build", "--group", "bt"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["report"]["affine_type"], "affine E_6");
    let (_, r) = qv(&["mckay", "build", "--group", "cyclic:5"]);
    assert_eq!(r["results"]["delta"], serde_json::json!([1, 1, 1, 1, 1]));
    let (code, r) = qv(&["conv", "group", "--table", &fixture("s3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["center_dimension"], 3);
    let (code, r) = qv(&["conv", "mul", "--k1", &fixture("k1.json"), "--k2", &fixture("k2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["kernel"]["entries"][2], serde_json::json!(["6", "-3/2"]));
    // inner sets must agree
    assert_eq!(qv(&["conv", "mul", "--k1", &fixture("k2.json"), "--k2", &fixture("k2.json")]).0, 2);
    assert_eq!(qv(&["conv", "mul", "--k1", &fixture("k1.json"), "--k2", &fixture("k1.json")]).0, 2);
}

#[test]
fn roots_commands() {
    let (_, r) = qv(&["roots", "gg", "--quiver", "a2", "--v", "[1,1]"]);
    assert_eq!(r["results"]["report"]["component_dim"], 1);
    let (_, r) = qv(&["roots", "weight", "--quiver", "a2", "--v", "[1,1]", "--w", "[1,1]"]);
    assert_eq!(r["results"]["multiplicity"], 2);
    let (_, r) = qv(&["roots", "regular", "--quiver", "a2", "--v", "[1,1]", "--theta", "[1,-1]"]);
    assert_eq!(r["results"]["regular"], false);
    let (_, r) = qv(&["roots", "regular", "--quiver", "a2", "--v", "[1,1]", "--theta", "[1,1]"]);
    assert_eq!(r["results"]["regular"], true);
}

#[test]
fn binary_honours_qv_limit() {
    let bin = env!("CARGO_BIN_EXE_qv");
    let rep = fixture("a2_rep_f2.json");
    let ok = Command::new(bin).args(["rep", "brute", "--rep", &rep]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["results"]["count"], 3);
    let capped = Command::new(bin).args(["rep", "brute", "--rep", &rep]).env("QV_LIMIT", "1").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("limit"));
}
