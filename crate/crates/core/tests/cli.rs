//! End-to-end runs of the binary, with every JSON output checked against the
//! published schemas.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sparsity-forge"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../../docs/schema/{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn conforms(name: &str, value: &Value) {
    let v = schema(name);
    let errors: Vec<String> = v.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{value} violates {name}: {errors:?}");
}

const K5: &str = "n = 5\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
fn k6_edgelist() -> String {
    let mut text = String::from("n = 6\n");
    for u in 0..6 {
        for v in u + 1..6 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    text
}

#[test]
fn check_exit_codes() {
    let path = run(&["check", "--a", "1", "--b", "-1", "--format", "edgelist"], "0 1\n1 2\n2 3\n");
    assert_eq!(path.status.code(), Some(0));
    conforms("certificate", &json_lines(&path)[0]);

    let triangle = run(&["check", "--a", "1", "--b", "-1"], "Bw\n");
    assert_eq!(triangle.status.code(), Some(1));
    let cert = &json_lines(&triangle)[0];
    conforms("certificate", cert);
    assert_eq!(cert["witness"], serde_json::json!([0, 1, 2]));

    // 10 edges against 35/3 on five vertices: sparse.
    let k5 = run(&["check", "--a", "7/3", "--b", "0", "--format", "edgelist"], K5);
    assert_eq!(k5.status.code(), Some(0));
    // 15 edges against 14 on six vertices: not sparse.
    let k6 = run(&["check", "--a", "7/3", "--b", "0", "--format", "edgelist"], &k6_edgelist());
    assert_eq!(k6.status.code(), Some(1));
    assert_eq!(json_lines(&k6)[0]["max_violation"], "1/1");
}

#[test]
fn check_errors_exit_two() {
    let bad = run(&["check", "--a", "1", "--b", "-1"], "B~~\n");
    assert_eq!(bad.status.code(), Some(2));
    conforms("error", &json_lines(&bad)[0]);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("graph6"));

    let pathological = run(&["check", "--a", "1/2", "--b", "-1"], "Bw\n");
    assert_eq!(pathological.status.code(), Some(2));
    let nonsense = run(&["check", "--a", "x", "--b", "0"], "Bw\n");
    assert_eq!(nonsense.status.code(), Some(2));
    let missing = run(&["check", "--a", "1", "--b", "0", "/nonexistent/graph.g6"], "");
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn batch_output_stays_aligned() {
    // Path, malformed line, triangle, and a header line that is skipped.
    let input = ">>graph6<<Bo\n??\nBw\n\n";
    let out = run_env(&["check", "--a", "1", "--b", "-1"], input, &[("SPARSITY_FORGE_THREADS", "2")]);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["verdict"], "sparse");
    assert!(lines[1]["error"].is_string());
    assert_eq!(lines[2]["verdict"], "not_sparse");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_examples() {
    let k5 = run(&["decompose", "--m", "2", "--verify", "--format", "edgelist"], K5);
    assert_eq!(k5.status.code(), Some(0));
    let d = &json_lines(&k5)[0];
    conforms("decomposition", d);
    assert_eq!(d["verified"], true);
    assert_eq!(d["case"], "large_m_case_A");

    let c5 = run(&["decompose", "--m", "6/5", "--format", "edgelist"], "0 1\n1 2\n2 3\n3 4\n0 4\n");
    assert_eq!(c5.status.code(), Some(0));
    assert_eq!(json_lines(&c5)[0]["case"], "small_m_two_forests");

    let dense = run(&["decompose", "--m", "3/2", "--format", "edgelist"], K5);
    assert_eq!(dense.status.code(), Some(1));
    let cert = &json_lines(&dense)[0];
    conforms("certificate", cert);
    assert_eq!(cert["verdict"], "not_sparse");

    let low = run(&["decompose", "--m", "1"], "Bw\n");
    assert_eq!(low.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&low.stderr).contains("greater than 1"));

    let traced = run(&["decompose", "--m", "5/2", "--trace", "--format", "edgelist"], &k6_edgelist());
    assert_eq!(traced.status.code(), Some(0));
    let d = &json_lines(&traced)[0];
    conforms("decomposition", d);
    assert_eq!(d["trace"]["k"], 2);
    assert_eq!(d["trace"]["slack"], 3);
}

#[test]
fn verify_round_trip() {
    let dir = std::env::temp_dir().join(format!("sf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = run(&["gen", "ring", "--a", "2", "--t", "4"], "");
    let g6 = stdout(&graph);
    let decomposed = run(&["decompose", "--m", "7/2"], &g6);
    assert_eq!(decomposed.status.code(), Some(0));
    let file = dir.join("d.json");
    std::fs::write(&file, stdout(&decomposed)).unwrap();
    let ok = run(&["verify", "--decomposition", file.to_str().unwrap()], &g6);
    assert_eq!(ok.status.code(), Some(0));
    conforms("verification", &json_lines(&ok)[0]);

    // Move all of G' into F, which then has cycles.
    let mut d: Value = serde_json::from_str(&stdout(&decomposed)).unwrap();
    let mut f: Vec<Value> = d["F"].as_array().unwrap().clone();
    f.extend(d["Gprime"].as_array().unwrap().iter().cloned());
    d["F"] = Value::Array(f);
    d["Gprime"] = Value::Array(vec![]);
    std::fs::write(&file, d.to_string()).unwrap();
    let bad = run(&["verify", "--decomposition", file.to_str().unwrap()], &g6);
    assert_eq!(bad.status.code(), Some(1));
    let report = &json_lines(&bad)[0];
    conforms("verification", report);
    assert_eq!(report["forest_acyclic"], false);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn generated_counterexamples_reproduce_deficiencies() {
    let cases = [
        (vec!["ring", "--a", "1", "--t", "3"], ["1", "-1", "1", "-2"]),
        (vec!["disconnected", "--a1", "1", "--a2", "1", "--n", "5", "--t", "2"], ["1", "-1", "1", "1"]),
        (vec!["glued-trees", "--a", "2"], ["2", "-1", "2", "-3"]),
    ];
    for (family, [a1, b1, a2, b2]) in cases {
        let mut args = vec!["gen"];
        args.extend(family.iter().copied());
        let g = run(&args, "");
        assert_eq!(g.status.code(), Some(0));
        let out = run(
            &["partition", "--a1", a1, "--b1", b1, "--a2", a2, "--b2", b2, "--minimize"],
            &stdout(&g),
        );
        assert_eq!(out.status.code(), Some(1), "{family:?}");
        let result = &json_lines(&out)[0];
        conforms("partition", result);
        assert_eq!(result["outcome"], "deficiency");
        let (r1, r2) = (result["r1"].as_u64().unwrap(), result["r2"].as_u64().unwrap());
        assert!(r1 + r2 < result["B"].as_array().unwrap().len() as u64);
    }
}

#[test]
fn gen_formats_and_errors() {
    let g6 = run(&["gen", "ring", "--a", "1", "--t", "3"], "");
    let edges = run(&["gen", "ring", "--a", "1", "--t", "3", "--format", "edgelist"], "");
    let from_g6 = run(&["check", "--a", "2", "--b", "-3"], &stdout(&g6));
    let from_list = run(&["check", "--a", "2", "--b", "-3", "--format", "edgelist"], &stdout(&edges));
    assert_eq!(from_g6.status.code(), Some(0));
    assert_eq!(stdout(&from_g6), stdout(&from_list));
    assert_eq!(json_lines(&from_g6)[0]["min_potential"], "3/1");
    assert!(stdout(&edges).starts_with("n = 9\n"));

    assert_eq!(run(&["gen", "ring", "--a", "1", "--t", "2"], "").status.code(), Some(2));
    assert_eq!(run(&["gen", "glued-trees", "--a", "0"], "").status.code(), Some(2));
}

#[test]
fn partition_outcomes() {
    let c5 = "0 1\n1 2\n2 3\n3 4\n0 4\n";
    let ok = run(&["partition", "--a1", "1", "--b1", "-1", "--a2", "1", "--b2", "-1", "--format", "edgelist"], c5);
    assert_eq!(ok.status.code(), Some(0));
    conforms("partition", &json_lines(&ok)[0]);

    let not_sparse = run(&["partition", "--a1", "1", "--b1", "-1", "--a2", "1", "--b2", "-1", "--format", "edgelist"], K5);
    assert_eq!(not_sparse.status.code(), Some(1));
    conforms("certificate", &json_lines(&not_sparse)[0]);

    let regime = run(&["partition", "--a1", "1", "--b1", "-3", "--a2", "1", "--b2", "0", "--format", "edgelist"], c5);
    assert_eq!(regime.status.code(), Some(2));
}

#[test]
fn bench_is_reproducible() {
    let args = ["bench", "decompose", "--sizes", "40,300", "--seed", "9", "--json"];
    let first = json_lines(&run(&args, ""));
    let second = json_lines(&run(&args, ""));
    assert_eq!(first.len(), 2);
    for (x, y) in first.iter().zip(&second) {
        conforms("bench", x);
        assert_eq!(x["instance_hash"], y["instance_hash"]);
    }
    let big = &first[1];
    let total = big["total_seconds"].as_f64().unwrap();
    let staged: f64 = big["stages"].as_array().unwrap().iter().map(|s| s[1].as_f64().unwrap()).sum();
    assert!((total - staged).abs() <= 0.05 * total, "stages {staged} vs total {total}");

    let table = run(&["bench", "check", "--sizes", "30"], "");
    assert_eq!(table.status.code(), Some(0));
    assert!(stdout(&table).contains("check"));
    assert_eq!(run(&["bench", "nothing"], "").status.code(), Some(2));
}
