//! End-to-end runs of the command-line front end on the bundled fixtures.

use std::path::PathBuf;

use serde_json::Value;
use simptot::cli::{main_with_args, run};
use simptot::io::{read_document, to_canonical_string};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn simptot(args: &[&str]) -> simptot::cli::RunReport {
    run(std::iter::once("simptot").chain(args.iter().copied()))
}

#[test]
fn surrogate_bracket_is_nonvanishing() {
    let r = simptot(&["toda", "--map", &fixture("surrogate.json"), "--order", "2", "--position", "0"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.verdict, "nonvanishing");
    assert_eq!(r.results["class"], serde_json::json!(["-1"]));
    assert_eq!(r.results["indeterminacy_dim"], 0);
    assert_eq!(r.inputs.len(), 1);
    assert_eq!(r.inputs[0].sha256.len(), 64);
}

#[test]
fn zero_complex_has_no_homology() {
    let r = simptot(&["homology", "--input", &fixture("zero.json")]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.results["homology"], serde_json::json!([]));
}

#[test]
fn cyclic_homology_of_z2() {
    let r = simptot(&["group", "hc", "--table", &fixture("z2.tbl")]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.results["dims"], serde_json::json!([2, 0, 2, 0, 2]));
}

#[test]
fn burghelea_holds_for_s3() {
    let r = simptot(&["group", "burghelea", "--table", &fixture("s3.tbl"), "--degrees", "0..2"]);
    assert_eq!(r.exit_code, 0, "{}", r.to_json());
}

#[test]
fn bad_inputs_exit_2_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"format_version\": 1,\n  \"kind\": \"chain_complex\",\n  oops\n}\n").unwrap();
    let r = simptot(&["homology", "--input", bad.to_str().unwrap()]);
    assert_eq!(r.exit_code, 2);
    assert_eq!(r.verdict, "invalid input");
    let msg = r.results["error"].as_str().unwrap();
    assert!(msg.contains("line 4"), "{msg}");

    let missing = dir.path().join("missing.json");
    assert_eq!(simptot(&["homology", "--input", missing.to_str().unwrap()]).exit_code, 2);
    assert_eq!(simptot(&["frobnicate"]).exit_code, 2);
}

#[test]
fn fixtures_are_canonical() {
    for name in ["surrogate.json", "zero.json"] {
        let path = fixture(name);
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = read_document(path.as_ref()).unwrap();
        assert_eq!(to_canonical_string(&doc), text, "{name}");
    }
}

#[test]
fn surrogate_example_matches_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let r = simptot(&["example", "surrogate", "--output", out.to_str().unwrap()]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(fixture("surrogate.json")).unwrap());
}

#[test]
fn json_and_text_agree() {
    let table = fixture("z3.tbl");
    let (json, code) = main_with_args(["simptot", "--format", "json", "group", "hc", "--table", &table]);
    let (text, code2) = main_with_args(["simptot", "group", "hc", "--table", &table]);
    assert_eq!((code, code2), (0, 0));
    let v: Value = serde_json::from_str(&json).unwrap();
    let dims: Vec<String> = v["results"]["dims"].as_array().unwrap().iter().map(|d| d.to_string()).collect();
    assert!(text.contains(&format!("[{}]", dims.join(", "))), "{text}");
}
