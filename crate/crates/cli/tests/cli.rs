use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superpat")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Compares against `tests/golden/NAME`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let got = stdout(args);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(got, want, "{args:?}");
}

#[test]
fn golden_outputs() {
    golden("build_213_2.txt", &["build", "--class", "213", "--n", "2"]);
    golden("superpat_build_213_5.txt", &["superpat", "build", "--class", "213", "--n", "5"]);
    golden("superpat_build_3412_json.txt", &["--json", "superpat", "build", "--class", "213-3412", "--n", "5"]);
    golden("pointset_3.txt", &["pointset", "--n", "3"]);
    golden("pointset_5_json.txt", &["--json", "pointset", "--n", "5"]);
    golden("majorize.txt", &["majorize", "5", "1", "5"]);
    golden("xi.txt", &["majorize", "--xi", "8"]);
    golden("perm_info.txt", &["perm", "info", "231"]);
    golden("perm_contains.txt", &["perm", "contains", "25314", "213"]);
    golden("enumerate.txt", &["perm", "enumerate", "--class", "213-132", "--n", "3"]);
    golden("strahler.txt", &["strahler", "--perm", "2 3 1"]);
    golden("search_minimal_3.txt", &["search", "minimal", "--class", "213", "--n", "3"]);
    golden("search_staged_4.txt", &["search", "staged", "--n", "4"]);
    golden("search_check.txt", &["search", "check", "--perm", "25314", "--avoid", "none", "--n", "3"]);
    golden("draw_k4_json.txt", &["draw", "--graph", concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/k4.json")]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--n"]).status.code(), Some(2));
    assert_eq!(run(&["strahler", "--perm", "213"]).status.code(), Some(1));
    assert_eq!(run(&["build", "--class", "nope", "--n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["search", "minimal", "--n", "5", "--budget", "0.001"]).status.code(), Some(3));
}

#[test]
fn json_search_and_verify() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "search", "minimal", "--n", "4"])).unwrap();
    assert_eq!(v["answer"], 8);
    assert!(v["nodes"].as_u64().unwrap() > 0);
    let out = run(&["--json", "search", "minimal", "--n", "5", "--budget", "0.001"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["indeterminate"].is_string());
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "superpat", "verify", "--class", "213", "--n", "6"])).unwrap();
    assert_eq!(v["checked"], 132);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn bad_graph_file_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, "{\"n\": 3,\n \"rotations\": [[1, 2], [0 2]]}").unwrap();
    let out = run(&["draw", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn draw_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let svg = dir.path().join("d.svg");
    stdout(&["draw", "--n", "12", "--seed", "4", "--out", out.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["crossing_free"], true);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("exact integer coordinates"));
}

#[test]
fn thread_cap_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_superpat"))
        .env("SUPERPAT_THREADS", "1")
        .args(["search", "minimal", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "8");
}
