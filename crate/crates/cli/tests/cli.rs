use std::fs;
use std::path::Path;
use std::process::Command;

use halg_cli::corpus;
use halg_cli::ingest::{parse_algebra, parse_doc};
use halg_cli::run;
use serde_json::{json, Value};

fn halg(args: &[&str]) -> halg_cli::RunOutput {
    run(std::iter::once("halg").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.display().to_string()
}

fn dual_numbers_json() -> Value {
    json!({
        "field": {"kind": "rational"},
        "labels": ["1", "x"],
        "mul": [[[[1, 1, 0]], [[1, 1, 1]]], [[[1, 1, 1]], []]],
        "unit": [[1, 1, 0]]
    })
}

fn sign_action(table: Value, sign: Value) -> Value {
    json!({
        "elements": ["e", "s"],
        "mul_table": table,
        "identity": 0,
        "images": {"e": [[1, 0], [0, 1]], "s": sign}
    })
}

#[test]
fn quiver_to_algebra_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write(
        dir.path(),
        "q.json",
        &json!({"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}),
    );
    let out = halg(&["build-path-algebra", "--quiver", &quiver]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = parse_doc(&out.stdout, "stdout".into(), dir.path().into()).unwrap();
    let a = parse_algebra(&doc).unwrap();
    assert_eq!(a.dim(), 3);

    let alg = dir.path().join("a2.json");
    fs::write(&alg, &out.stdout).unwrap();
    let from_file = halg(&["check", "nc", "--algebra", alg.to_str().unwrap()]);
    let from_corpus = halg(&["check", "nc", "--corpus", "a2"]);
    assert_eq!(from_file.code, 1);
    assert_eq!(from_corpus.code, 1);
    let v1: Value = serde_json::from_str(&from_file.stdout).unwrap();
    let v2: Value = serde_json::from_str(&from_corpus.stdout).unwrap();
    assert_eq!(v1["evidence"], v2["evidence"]);
}

#[test]
fn prime_field_build() {
    let out = halg(&["build-path-algebra", "--corpus", "example2.8", "--prime", "7"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["field"], json!({"kind": "prime", "p": 7}));
    assert_eq!(v["labels"].as_array().unwrap().len(), 5);
}

#[test]
fn user_action_file() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "d.json", &dual_numbers_json());
    let act = write(dir.path(), "g.json", &sign_action(json!([[0, 1], [1, 0]]), json!([[1, 0], [0, -1]])));
    let out = halg(&["verify", "lemma31", "--algebra", &alg, "--action", &act, "--ext", "skew"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    let out = halg(&["skew", "--algebra", &alg, "--action", &act]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn bad_group_table_is_reported_at_its_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "d.json", &dual_numbers_json());
    let act = write(dir.path(), "g.json", &sign_action(json!([[0, 1], [1, 1]]), json!([[1, 0], [0, -1]])));
    let out = halg(&["skew", "--algebra", &alg, "--action", &act]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("/mul_table"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn non_unital_automorphism_is_reported_at_its_image() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "d.json", &dual_numbers_json());
    // columns are images: 1 ↦ 1 + x
    let act = write(dir.path(), "g.json", &sign_action(json!([[0, 1], [1, 0]]), json!([[1, 0], [1, -1]])));
    let out = halg(&["skew", "--algebra", &alg, "--action", &act]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("/images/s"), "{}", out.stderr);
}

#[test]
fn floats_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = dual_numbers_json();
    a["unit"] = json!([[1.0, 0]]);
    let alg = write(dir.path(), "d.json", &a);
    let out = halg(&["check", "nc", "--algebra", &alg]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("/unit/0/0"), "{}", out.stderr);
}

#[test]
fn malformed_json_names_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    fs::write(&p, "{\n  \"field\": {\"kind\": \"rational\"},\n  \"labels\": [\n").unwrap();
    let out = halg(&["check", "nc", "--algebra", p.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line"), "{}", out.stderr);
}

#[test]
fn non_associative_table_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = dual_numbers_json();
    // x·1 = 1 contradicts the unit
    a["mul"][1][0] = json!([[1, 1, 0]]);
    let alg = write(dir.path(), "d.json", &a);
    let out = halg(&["check", "nc", "--algebra", &alg]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("/mul") || out.stderr.contains("/unit"), "{}", out.stderr);
}

#[test]
fn missing_inputs_and_unknown_names() {
    assert_eq!(halg(&["check", "nc", "--algebra", "/nonexistent/missing.json"]).code, 2);
    assert_eq!(halg(&["check", "nc", "--corpus", "no-such-algebra"]).code, 2);
    assert_eq!(halg(&["check", "nc"]).code, 2);
    assert_eq!(halg(&["frobnicate"]).code, 2);
    assert_eq!(halg(&["skew", "--corpus", "a2"]).code, 2);
    assert_eq!(halg(&["probe", "snc", "--corpus", "a2", "--pick", "simple:9"]).code, 2);
    assert_eq!(halg(&["--help"]).code, 0);
}

#[test]
fn module_file_input() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "d.json", &dual_numbers_json());
    // the simple module: 1 acts as 1, x as 0
    let m = write(dir.path(), "s.json", &json!({"algebra": "d.json", "dim": 1, "action": [[[1]], [[0]]]}));
    let out = halg(&["probe", "snc", "--module", &m]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["evidence"]["witness"], 0);

    let bad = write(dir.path(), "b.json", &json!({"algebra": "d.json", "dim": 1, "action": [[[1]], [[1]]]}));
    let out = halg(&["probe", "snc", "--module", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("/action"), "{}", out.stderr);
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(halg(&["check", "nc", "--corpus", "dual-numbers"]).code, 0);
    assert_eq!(halg(&["check", "nc", "--corpus", "a2"]).code, 1);
    assert_eq!(halg(&["verify", "lemma31", "--corpus", "example2.8", "--cutoff", "10", "--seed", "1"]).code, 0);
    // a simple at a swapped vertex is not G-stable
    let out = halg(&["verify", "prop35", "--corpus", "example2.8", "--against", "simple:0"]);
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("not-g-stable"));
}

#[test]
fn certificates_are_exact_matrices() {
    let out = halg(&["verify", "prop27", "--corpus", "example2.8"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let certs = v["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
    for c in certs {
        let rows = c["matrix"].as_array().unwrap();
        assert_eq!(rows.len(), c["target_dim"].as_u64().unwrap() as usize);
        assert!(rows.iter().flat_map(|r| r.as_array().unwrap()).all(Value::is_string));
    }
}

#[test]
fn text_format_leads_with_the_verdict() {
    let out = halg(&["check", "gsc", "--corpus", "a2", "--format", "text"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "claim: gsc");
    assert_eq!(lines[1], "verdict: holds");
    assert!(out.stdout.contains("command: halg check gsc"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let plain = halg(&["check", "agc", "--corpus", "example2.8"]);
    let to_file = halg(&["check", "agc", "--corpus", "example2.8", "-o", p.to_str().unwrap()]);
    assert_eq!(plain.code, to_file.code);
    assert!(to_file.stdout.is_empty());
    assert_eq!(fs::read_to_string(&p).unwrap(), plain.stdout);
}

#[test]
fn replay_from_embedded_command() {
    let out = halg(&["probe", "gnc", "--corpus", "example2.8-skew", "--seed", "4"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let argv: Vec<String> = v["command"]["argv"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().into()).collect();
    assert!(argv.contains(&"--pick".to_string()) || argv.contains(&"gnc".to_string()));
    let again = run(std::iter::once("halg".to_string()).chain(argv));
    assert_eq!(again, out);
}

#[test]
fn dimension_cap_from_environment() {
    let bin = env!("CARGO_BIN_EXE_halg");
    let capped = Command::new(bin).args(["skew", "--corpus", "example2.8"]).env("HALG_MAX_DIM", "8").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("HALG_MAX_DIM"));
    let open = Command::new(bin).args(["skew", "--corpus", "example2.8"]).env("HALG_MAX_DIM", "10").output().unwrap();
    assert_eq!(open.status.code(), Some(0));
    let junk = Command::new(bin).args(["check", "nc", "--corpus", "a2"]).env("HALG_MAX_DIM", "lots").output().unwrap();
    assert_eq!(junk.status.code(), Some(2));
}

#[test]
fn corpus_cap_refuses_before_building() {
    let err = corpus::load("example2.8-m20", 512).unwrap().unwrap_err();
    assert!(err.contains("2000"), "{err}");
    assert!(corpus::load("example2.8-m2", 512).unwrap().is_ok());
    assert!(corpus::load("nothing", 512).is_none());
    for name in corpus::names() {
        assert!(corpus::load(&name, 512).unwrap().is_ok(), "{name}");
    }
}
