use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(sub)
}

fn ptqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptqft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn files(sub: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(corpus(sub))
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn every_corpus_example_validates() {
    let valid = files("valid");
    assert!(valid.len() >= 6);
    for p in valid {
        let o = ptqft(&["validate", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", p.display(), stdout(&o));
        assert!(stdout(&o).starts_with("ok"));
    }
}

#[test]
fn invalid_examples_name_the_problem() {
    let o = ptqft(&[
        "--format",
        "json",
        "validate",
        corpus("invalid/glue_colour_mismatch.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let d: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(d["message"].as_str().unwrap().contains("glue colour mismatch"));
    assert_eq!(d["piece"], 0);
    assert_eq!(d["circle"], 0);

    let o = ptqft(&["validate", corpus("invalid/genus_one_piece.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("genus"));
    assert!(stdout(&o).contains("piece 0"));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("ptqft-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    fs::write(&bad, "{\"delta\": \"2/1\", \"morphism\": [").unwrap();
    assert_eq!(ptqft(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        ptqft(&["validate", dir.join("missing.json").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ptqft(&["check", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(ptqft(&["check", "oracle", "--delta", "two"]).status.code(), Some(2));
    assert_eq!(ptqft(&["dims", "2:x"]).status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn small_delta_is_a_validation_failure() {
    let id = corpus("valid/identity_2.json");
    assert_eq!(
        ptqft(&["eval", id.to_str().unwrap(), "--delta", "3/2"]).status.code(),
        Some(1)
    );
}

#[test]
fn identity_evaluates_to_the_identity() {
    let o = ptqft(&["eval", corpus("valid/identity_2.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rows: codomain[0]:2\ncols: domain[0]:2\n"));
    assert!(out.ends_with("[1/1, 0/1]\n[0/1, 1/1]\n"));
}

#[test]
fn closed_sphere_is_delta() {
    let o = ptqft(&["invariant", corpus("valid/sphere.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), "2/1\n");
    let o = ptqft(&[
        "invariant",
        corpus("valid/sphere_reversed.json").to_str().unwrap(),
        "--delta",
        "5/2",
    ]);
    assert_eq!(stdout(&o), "5/2\n");
    let o = ptqft(&["invariant", corpus("valid/identity_2.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn trinion_zeta_is_four_times_the_triple_trace() {
    let o = ptqft(&[
        "--format",
        "json",
        "eval",
        "--zeta",
        corpus("valid/trinion_2.json").to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let data: Vec<&str> = v["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    // τ₂ on products of the basis {1, E}: τ(1) = 1, τ(E) = 1/2, E² = 2E.
    let expect = ["4/1", "2/1", "2/1", "4/1", "2/1", "4/1", "4/1", "8/1"];
    assert_eq!(data, expect);
}

#[test]
fn normalized_multiplication() {
    let o = ptqft(&[
        "eval",
        "--normalized",
        corpus("valid/multiplication_2.json").to_str().unwrap(),
    ]);
    assert!(stdout(&o).ends_with("[1/1, 0/1, 0/1, 0/1]\n[0/1, 1/1, 1/1, 2/1]\n"));
}

#[test]
fn check_suites_pass_and_echo_the_seed() {
    let o = ptqft(&["check", "functoriality"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("functoriality seed=20240601 delta=2/1 cases=100: PASS"));

    let o = ptqft(&["check", "unitarity", "--seed", "17", "--count", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed=17"));

    let o = ptqft(&["check", "reconstruct", "--delta", "5/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("δ recovered as 5/2"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "check", "moves", "--seed", "3", "--count", "10"];
    assert_eq!(ptqft(&args).stdout, ptqft(&args).stdout);
    let t = corpus("valid/trinion_2.json");
    let args = ["eval", t.to_str().unwrap()];
    assert_eq!(ptqft(&args).stdout, ptqft(&args).stdout);
}

#[test]
fn dims_of_a_signature() {
    let o = ptqft(&["--format", "json", "dims", "3,1~,0-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["legs"], serde_json::json!(["0-", "3", "1~"]));
}
