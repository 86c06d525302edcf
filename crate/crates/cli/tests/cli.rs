use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lecycles"))
        .args(args)
        .env_remove("LECYCLES_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", String::from_utf8_lossy(&out.stdout)))
}

fn profile_pairs(v: &Value) -> Vec<(u64, u64, String)> {
    v["profiles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["b_nm1"].as_u64().unwrap(),
                p["b_n"].as_u64().unwrap(),
                p["torsion"]["kind"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn analyze_cone_times_plane() {
    let out = run(&["analyze", "--poly", "(z^2-x^2-y^2)*(z-x)", "--vars", "x,y,z"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "VALID");
    assert_eq!(v["invariants"]["lambda0"], 2);
    assert_eq!(v["invariants"]["lambda1"], 3);
    assert_eq!(
        profile_pairs(&v),
        vec![(1, 0, "SINGLE_CYCLIC".into()), (2, 1, "NONE".into())]
    );
}

#[test]
fn analyze_product_with_line() {
    let out = run(&["analyze", "--poly", "z1^2+z2^2", "--vars", "z0,z1,z2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["invariants"]["lambda0"], 0);
    assert_eq!(v["invariants"]["lambda1"], 1);
    assert_eq!(profile_pairs(&v), vec![(1, 0, "NONE".into())]);
}

#[test]
fn analyze_isolated_singularity_is_out_of_scope() {
    let out = run(&["analyze", "--poly", "z0^2+z1^2+z2^2", "--vars", "z0,z1,z2"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["status"], "DIM_NOT_ONE");
}

#[test]
fn analyze_bad_coordinate_still_reports() {
    let out = run(&["analyze", "--poly", "z2^2-z1^3-z0^2*z1^2", "--vars", "z1,z0,z2"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["status"], "NOT_GENERIC");
}

#[test]
fn analyze_parse_error_names_position() {
    let out = run(&["analyze", "--poly", "z0^2+*z1", "--vars", "z0,z1,z2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    assert!(out.stdout.is_empty());
}

#[test]
fn analyze_needs_three_variables() {
    let out = run(&["analyze", "--poly", "x^2", "--vars", "x,y"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn analyze_text_format() {
    let out = run(&[
        "analyze",
        "--poly",
        "z1^2+z2^2",
        "--vars",
        "z0,z1,z2",
        "--format",
        "text",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lambda0 = 0, lambda1 = 1"), "{text}");
}

#[test]
fn same_seed_same_bytes() {
    let args = [
        "analyze",
        "--poly",
        "(z1^2-z0^3+z2)*z2",
        "--vars",
        "z0,z1,z2",
        "--seed",
        "99",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lecycles"))
        .args(["analyze", "--poly", "z1^2+z2^2", "--vars", "z0,z1,z2"])
        .env("LECYCLES_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(json(&out)["diagnostics"]["seed"], 12345);
    let flag = Command::new(env!("CARGO_BIN_EXE_lecycles"))
        .args(["analyze", "--poly", "z1^2+z2^2", "--vars", "z0,z1,z2", "--seed", "7"])
        .env("LECYCLES_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(json(&flag)["diagnostics"]["seed"], 7);
}

#[test]
fn classify_examples() {
    let out = run(&["classify", "--l0", "3", "--l1", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(profile_pairs(&v), vec![(2, 2, "NONE".into())]);
    assert_eq!(v["profiles"][0]["open_example"], true);

    let v = json(&run(&["classify", "--l0", "2", "--l1", "3", "--m", "2"]));
    assert_eq!(profile_pairs(&v), vec![(1, 0, "SINGLE_CYCLIC".into())]);
    assert_eq!(v["profiles"][0]["torsion"]["allowed_primes"], "RULE_3_OR_1_MOD_6");

    let v = json(&run(&["classify", "--l0", "0", "--l1", "4"]));
    assert_eq!(profile_pairs(&v), vec![(4, 0, "NONE".into())]);
}

#[test]
fn classify_interval_and_degree_labels() {
    let v = json(&run(&["classify", "--l0", "2", "--l1", "3", "--r", "1..2", "--n", "4"]));
    assert_eq!(v["degree_labels"]["lower"], "H^3");
    assert_eq!(v["input"]["r"]["hi"], 2);
}

#[test]
fn classify_errors_exit_one() {
    assert_eq!(code(&run(&["classify", "--l0", "2", "--l1", "0"])), 1);
    assert_eq!(code(&run(&["classify", "--l0", "1", "--l1", "1"])), 1);
    assert_eq!(code(&run(&["classify", "--l0", "2", "--l1", "3", "--r", "3..1"])), 1);
    assert_eq!(code(&run(&["classify", "--l0", "x", "--l1", "3"])), 1);
}

#[test]
fn snf_example() {
    let out = run(&["snf", "[[2,0],[0,3]]"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["diag"], serde_json::json!(["1", "6"]));
    assert_eq!(v["kernel_cokernel"]["torsion"], serde_json::json!(["6"]));
}

#[test]
fn snf_accepts_explicit_shape() {
    let out = run(&["snf", r#"{"rows":2,"cols":3,"entries":[0,0,0,0,0,0]}"#]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["kernel_cokernel"]["kernel_rank"], 3);
}

#[test]
fn snf_rejects_ragged_rows() {
    assert_eq!(code(&run(&["snf", "[[1,2],[3]]"])), 1);
    assert_eq!(code(&run(&["snf", "[[1.5]]"])), 1);
}

#[test]
fn charpolys_example() {
    let out = run(&["charpolys", "--degree", "2", "--trace", "-1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out), serde_json::json!(["t^2+t+1"]));
    assert_eq!(code(&run(&["charpolys", "--degree", "0", "--trace", "0"])), 1);
}

#[test]
fn verify_zero_map_reports_each_check() {
    let out = run(&[
        "verify",
        "--d",
        "[[0,0,0],[0,0,0]]",
        "--a0",
        "[[1,0],[0,1]]",
        "--a1",
        "[[1,0,0],[0,1,0],[0,0,1]]",
        "--m",
        "1",
        "--n",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["all_ok"], false);
    assert_eq!(v["checks"]["commutes"], true);
    assert_eq!(v["checks"]["trace_alpha0"]["ok"], false);
}

#[test]
fn verify_shape_mismatch_exits_one() {
    let out = run(&[
        "verify",
        "--d",
        "[[1]]",
        "--a0",
        "[[1,0],[0,1]]",
        "--a1",
        "[[1]]",
        "--m",
        "1",
        "--n",
        "1",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn bundled_corpus_passes_in_parallel() {
    let out = run(&["corpus", "--parallel", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    let names: Vec<&str> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.first(), Some(&"cone-times-plane"));
}

#[test]
fn empty_corpus_passes_with_warning() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let out = run(&["corpus", "--file", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn wrong_expectation_fails_with_diff() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        r#"{{"name":"line-times-node","polynomial":"z1^2+z2^2","variables":["z0","z1","z2"],"expected":{{"lambda0":{{"value":1,"provenance":"DERIVED"}}}}}}"#
    )
    .unwrap();
    let out = run(&["corpus", "--file", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("lambda0: expected 1, computed 0"), "{text}");
}

#[test]
fn corpus_file_errors_exit_one() {
    assert_eq!(code(&run(&["corpus", "--file", "/nonexistent/corpus.jsonl"])), 1);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "{{broken").unwrap();
    assert_eq!(code(&run(&["corpus", "--file", file.path().to_str().unwrap()])), 1);
}

#[test]
fn help_and_version_exit_zero_usage_errors_exit_one() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
}
