//! End-to-end tests of the command-line interface: document shapes, exit
//! codes, and file round trips through temp directories.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sumnet")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn bound_reports_s3() {
    let (code, stdout, stderr) = run(&["bound", "s3"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["upper"], "1");
    assert_eq!(doc["lower"], "2/3");
    assert_eq!(doc["exact"], "2/3");
    assert_eq!(doc["min_cut_bound"], 1);
    assert!(stderr.contains("min-cut bound"));
}

#[test]
fn mincut_full_and_pair() {
    let (code, stdout, _) = run(&["mincut", "s3"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["min_cut_bound"], 1);
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 9);

    let (code, stdout, _) = run(&["mincut", "s3-prime", "--pair", "s1", "t1"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["min_cut"], 3);
}

#[test]
fn catalog_list_and_show() {
    let (code, stdout, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let names: Vec<&str> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"s3") && names.contains(&"s3-prime"));

    let (code, stdout, _) = run(&["catalog", "show", "s3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, sumnet::catalog::s3().to_canonical_json());

    let (code, _, stderr) = run(&["catalog", "show", "nope"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown catalog network"));
}

#[test]
fn reverse_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    let (code, stdout, _) = run(&["reverse", "butterfly"]);
    assert_eq!(code, 0);
    std::fs::write(&path, &stdout).unwrap();
    // Reversing the emitted file again yields the original butterfly.
    let (code, stdout, _) = run(&["reverse", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, sumnet::catalog::butterfly().to_canonical_json());
}

#[test]
fn scheme_dual_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let code_path = dir.path().join("code.json");
    let dual_path = dir.path().join("dual.json");
    let rev_path = dir.path().join("rev.json");

    let (status, stdout, stderr) =
        run(&["scheme", "s3", "--name", "three-terminal", "--field", "gf2", "--seed", "9"]);
    assert_eq!(status, 0);
    assert!(stderr.contains("rate 2/3"));
    std::fs::write(&code_path, &stdout).unwrap();

    let (status, stdout, _) = run(&["verify", "s3", code_path.to_str().unwrap()]);
    assert_eq!(status, 0);
    assert!(stdout.contains("\"verified\": true"));

    let (status, stdout, _) = run(&["dual", "s3", code_path.to_str().unwrap()]);
    assert_eq!(status, 0);
    std::fs::write(&dual_path, &stdout).unwrap();

    let (status, stdout, _) = run(&["reverse", "s3"]);
    assert_eq!(status, 0);
    std::fs::write(&rev_path, &stdout).unwrap();

    let (status, stdout, _) =
        run(&["verify", rev_path.to_str().unwrap(), dual_path.to_str().unwrap()]);
    assert_eq!(status, 0, "dual code must verify on the reverse network");
    assert!(stdout.contains("\"verified\": true"));
}

#[test]
fn verify_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let code_path = dir.path().join("bad.json");
    // An all-zero (1,1) linear code never decodes.
    let doc = r#"{
  "kind": "linear",
  "k": 1,
  "l": 1,
  "alphabet": { "kind": "field", "p": 2, "r": 1 },
  "injection": [],
  "transition": [],
  "decoding": []
}"#;
    std::fs::write(&code_path, doc).unwrap();
    let (status, stdout, _) = run(&["verify", "s3", code_path.to_str().unwrap()]);
    assert_eq!(status, 1);
    assert!(stdout.contains("\"verified\": false"));
}

#[test]
fn search_exit_codes() {
    // Proved absent: exit 1.
    let (status, stdout, _) =
        run(&["search", "s3", "--alphabet", "gf3", "--k", "1", "--l", "1", "--linear"]);
    assert_eq!(status, 1);
    assert!(stdout.contains("exhausted-none"));
    // Gave up: exit 3.
    let (status, stdout, _) = run(&[
        "search", "s3", "--alphabet", "z2", "--k", "2", "--l", "2", "--budget", "100",
    ]);
    assert_eq!(status, 3);
    assert!(stdout.contains("budget-exceeded"));
    // Found: exit 0 with an embedded witness that re-verifies.
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("witness.json");
    let (status, stdout, _) =
        run(&["search", "diamond", "--alphabet", "z2", "--k", "1", "--l", "1"]);
    assert_eq!(status, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["status"], "found");
    std::fs::write(&out_path, serde_json::to_string(&doc["witness"]).unwrap()).unwrap();
    let (status, _, _) = run(&["verify", "diamond", out_path.to_str().unwrap()]);
    assert_eq!(status, 0);
}

#[test]
fn random_search_records_seed() {
    let (status, stdout, _) = run(&[
        "search",
        "butterfly",
        "--alphabet",
        "gf2",
        "--k",
        "2",
        "--l",
        "1",
        "--linear",
        "--random",
        "--seed",
        "7",
        "--trials",
        "512",
    ]);
    assert_eq!(status, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["status"], "found");
}

#[test]
fn usage_errors_exit_two() {
    let (status, _, _) = run(&["search", "s3", "--alphabet", "zebra", "--k", "1", "--l", "1"]);
    assert_eq!(status, 2);
    let (status, _, _) = run(&["bound", "/nonexistent/net.json"]);
    assert_eq!(status, 2);
    let (status, _, _) = run(&["frobnicate"]);
    assert_eq!(status, 2);
}

#[test]
fn malformed_network_file_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"name\": \"x\"}").unwrap();
    let (status, _, stderr) = run(&["bound", path.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(stderr.contains("cannot parse network"));

    // Structurally broken networks are rejected too.
    let cyclic = r#"{
  "name": "cyc",
  "nodes": ["s", "a", "b", "t"],
  "edges": [
    { "id": "s-a", "tail": "s", "head": "a" },
    { "id": "a-b", "tail": "a", "head": "b" },
    { "id": "b-a", "tail": "b", "head": "a" },
    { "id": "a-t", "tail": "a", "head": "t" }
  ],
  "sources": ["s"],
  "terminals": ["t"]
}"#;
    std::fs::write(&path, cyclic).unwrap();
    let (status, _, stderr) = run(&["mincut", path.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(stderr.contains("not well formed"));
}

#[test]
fn user_supplied_network_file_pipeline() {
    // A hand-written network file (not emitted by the tool) drives the full
    // bound / search / scheme pipeline.
    let dir = tempfile::tempdir().unwrap();
    let net_path = dir.path().join("wide-diamond.json");
    let doc = r#"{
  "name": "wide-diamond",
  "nodes": ["s1", "s2", "m", "t1", "t2", "t3"],
  "edges": [
    { "id": "e1", "tail": "s1", "head": "m" },
    { "id": "e2", "tail": "s2", "head": "m" },
    { "id": "e3", "tail": "m", "head": "t1" },
    { "id": "e4", "tail": "m", "head": "t2" },
    { "id": "e5", "tail": "m", "head": "t3" }
  ],
  "sources": ["s1", "s2"],
  "terminals": ["t1", "t2", "t3"]
}"#;
    std::fs::write(&net_path, doc).unwrap();
    let path = net_path.to_str().unwrap();

    let (status, stdout, _) = run(&["bound", path]);
    assert_eq!(status, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["min_cut_bound"], 1);
    assert_eq!(report["case"], "min2");
    assert_eq!(report["exact"], "1");

    // Solvable at rate 1: the relay sums, terminals forward.
    let (status, _, _) = run(&["search", path, "--alphabet", "z2", "--k", "1", "--l", "1"]);
    assert_eq!(status, 0);

    let dir2 = tempfile::tempdir().unwrap();
    let code_path = dir2.path().join("code.json");
    let (status, stdout, _) =
        run(&["scheme", path, "--name", "half-mincut", "--field", "gf2", "--seed", "2"]);
    assert_eq!(status, 0);
    std::fs::write(&code_path, &stdout).unwrap();
    let (status, _, _) = run(&["verify", path, code_path.to_str().unwrap()]);
    assert_eq!(status, 0);
}

#[test]
fn half_mincut_and_pairing_schemes_run() {
    let (status, stdout, stderr) = run(&[
        "scheme",
        "doubled-diamond",
        "--name",
        "half-mincut",
        "--field",
        "gf2",
        "--seed",
        "4",
    ]);
    assert_eq!(status, 0);
    assert!(stderr.contains("rate 1"));
    assert!(stdout.contains("\"kind\": \"linear\""));

    let (status, _, stderr) = run(&[
        "scheme",
        "bipartite-3x3",
        "--name",
        "pairing",
        "--field",
        "gf2",
        "--seed",
        "4",
    ]);
    assert_eq!(status, 0);
    assert!(stderr.contains("rate 2/3"));
}
