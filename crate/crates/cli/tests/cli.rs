use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn hkq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkq"))
        .args(args)
        .env_remove("HKQ_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

fn block(text: &str) -> String {
    // the presentation block: from the ring line to the closing bracket
    let start = text.find("H*_{T^d x S^1}(M)").expect("presentation present");
    let end = text[start..].find("\n>\n").expect("block closes") + start + 3;
    text[start..end].to_string()
}

#[test]
fn equivariant_presentation_matches_golden() {
    let golden = include_str!("golden/fig2a_equivariant.txt");
    let a = fixture("fig2a.json");
    let o = hkq(&["hypertoric", "--arrangement", a.to_str().unwrap(), "--flavor", "HTdS1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(block(&stdout(&o)), block(golden));
    assert_eq!(stdout(&o), golden);
}

#[test]
fn artifacts_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let arr = fixture("figure3.json");
    let mut bodies = Vec::new();
    for run in ["one", "two"] {
        let stem = dir.path().join(run);
        let o = hkq(&["hypertoric", "--arrangement", arr.to_str().unwrap(), "--core", "--out", stem.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        let read = |ext: &str| fs::read(stem.with_extension(ext)).unwrap();
        bodies.push((read("json"), read("txt"), read("dot")));
    }
    assert_eq!(bodies[0], bodies[1]);
    let json: Value = serde_json::from_slice(&bodies[0].0).unwrap();
    assert_eq!(json["simple"], Value::Bool(true));
    assert!(String::from_utf8(bodies[0].1.clone()).unwrap().contains("t1*t2"));
}

#[test]
fn flow_graph_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("tri");
    let o = hkq(&["hypertoric", "--fixture", "triangle", "--core", "--out", stem.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let dot = fs::read_to_string(stem.with_extension("dot")).unwrap();
    // the triangle is the zero section: one fixed component holding all
    // three vertices and no flow lines
    assert!(dot.starts_with("digraph flow {"));
    assert_eq!(dot.matches("subgraph cluster_").count(), 1);
    for v in ["(0,0)", "(0,1)", "(1,0)"] {
        assert!(dot.contains(&format!("[label=\"{v}\"]")), "{v}");
    }
    assert!(!dot.contains("->"));

    let stem = dir.path().join("f3");
    let o = hkq(&["hypertoric", "--fixture", "figure3", "--core", "--out", stem.to_str().unwrap()]);
    assert!(o.status.success());
    let dot = fs::read_to_string(stem.with_extension("dot")).unwrap();
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 4);
    let json: Value = serde_json::from_str(&fs::read_to_string(stem.with_extension("json")).unwrap()).unwrap();
    let edges = json["flow"]["component_edges"].as_array().unwrap();
    assert_eq!(edges.len(), 2);
}

#[test]
fn malformed_json_exits_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"d\": 2, \"normals\": [[1, 0],\n").unwrap();
    let o = hkq(&["hypertoric", "--arrangement", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error[parse]:"), "{err}");
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn non_generic_lengths_exit_two_naming_subset() {
    let p = fixture("polygon-tie.json");
    let o = hkq(&["polygon", "--polygon", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error[non-generic]:"), "{err}");
    assert!(err.contains("{1,2}"), "{err}");
}

#[test]
fn non_simple_offsets_exit_two() {
    let o = hkq(&["cogen", "--fixture", "fig2c", "--offsets", "0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[not-simple]:"));
}

#[test]
fn unknown_options_and_bad_seed_rejected() {
    let o = hkq(&["os2", "--fixture", "fig2a", "--colour", "red"]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_hkq"))
        .args(["os2", "--fixture", "fig2a"])
        .env("HKQ_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[usage]:"));
}

#[test]
fn unwritable_output_has_its_own_code() {
    let o = hkq(&["hypertoric", "--fixture", "fig2a", "--out", "/nonexistent-dir/x"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("error[write]:"));
}

#[test]
fn empty_results_are_empty_arrays() {
    // no short set has two elements, so there are no core components
    let o = hkq(&["--json", "polygon", "--alphas", "1,1,1", "--short-sets", "--verify", "jt"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let j = json_of(&o);
    assert_eq!(j["jt"], Value::Array(vec![]));
    assert_eq!(j["s_prime"], Value::Array(vec![]));
    assert_eq!(j["short_sets"].as_array().unwrap().len(), 3);
}

#[test]
fn cogen_reports_polynomials_ideals_and_verdicts() {
    let o = hkq(&[
        "--json",
        "cogen",
        "--fixture",
        "fig2c",
        "--char-decompose",
        "1,4",
        "--samples",
        "200",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let j = json_of(&o);
    assert_eq!(j["chambers"].as_array().unwrap().len(), 6);
    let polys: Vec<&str> = j["polynomials"].as_array().unwrap().iter().map(|p| p["poly"].as_str().unwrap()).collect();
    assert!(polys.contains(&"1/2*x1^2 + x1*x3 + 1/2*x3^2 + x1*x4 + x3*x4 + 1/2*x4^2"), "{polys:?}");
    for key in ["translation_invariant", "intersection_equals_ann_u", "ann_u_equals_presentation", "char_pointwise", "char_polynomial_identity"] {
        assert_eq!(j["verdicts"][key], Value::Bool(true), "{key}");
    }
    assert_eq!(j["ideals"]["ann_u"]["field"], "Q");
    assert_eq!(j["char_decomposition"]["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn os2_fingerprint_and_specializations() {
    let a = fixture("fig2a-prime.json");
    let o = hkq(&["--json", "os2", "--arrangement", a.to_str().unwrap(), "--fingerprint-degree", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let j = json_of(&o);
    let profiles = j["fingerprint"]["profiles"].as_array().unwrap();
    let pair = profiles.iter().find(|p| p["profile"] == serde_json::json!([1, 1])).expect("[1,1] profile");
    // t2 and x + t1 (the latter from the relation (x - t1)*t5)
    assert_eq!(pair["count"], 2);
    assert_eq!(pair["witness"], "t2");
    assert_eq!(j["freeness"]["free"], true);

    let o = hkq(&["--json", "os2", "--fixture", "fig2a", "--specialize", "1"]);
    let j = json_of(&o);
    assert_eq!(j["total_dimension"], 10);
    assert_eq!(j["real_chambers"], 10);
    let o = hkq(&["--json", "os2", "--fixture", "fig2a", "--specialize", "0"]);
    assert_eq!(json_of(&o)["hilbert_function"], serde_json::json!([1, 4, 5, 0, 0]));
}

#[test]
fn polygon_rings_and_checks() {
    let p = fixture("polygon-5.json");
    let o = hkq(&[
        "--json",
        "polygon",
        "--polygon",
        p.to_str().unwrap(),
        "--ring",
        "core:1,2",
        "--verify",
        "hp",
        "--verify",
        "jt",
        "--verify",
        "upsilon",
        "--verify",
        "abelian",
        "--intersection-form",
        "1,2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let j = json_of(&o);
    for (k, v) in j["verdicts"].as_object().unwrap() {
        assert_eq!(v, &Value::Bool(true), "{k}");
    }
    assert_eq!(j["ordinary_ring"]["hilbert_function"], serde_json::json!([1, 4, 1, 0, 0, 0]));
    assert_eq!(j["intersection_form"]["matrix"][0][0], "1");
    assert_eq!(j["upsilon"]["rows"].as_array().unwrap().len(), 15);
}

#[test]
fn verify_paper_table() {
    let o = hkq(&["verify-paper"]);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert!(rows.len() >= 20);
    // the only discrepancy is the sign convention of the S = {1,3} form
    let failed: Vec<&&str> = rows.iter().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert!(failed[0].contains("S = {1,3}") && failed[0].contains("diag(1,-1)"));
    assert_eq!(o.status.code(), Some(3));
}
