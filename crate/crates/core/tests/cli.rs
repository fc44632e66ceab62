use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_builtlat"));
    c.env_remove("BUILTLAT_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("builtlat-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn files_in(dir: &Path) -> usize {
    std::fs::read_dir(dir).map_or(0, |d| d.count())
}

#[test]
fn fy_hilbert_of_partition_three() {
    let out = run(&["fy", "--family", "partition:3", "--building", "minimal", "--hilbert"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"hilbert":[1,1]}"#);
}

#[test]
fn koszul_of_partition_three() {
    let out = run(&["koszul", "--family", "partition:3", "--building", "minimal", "--variant", "projective"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"homology":[1,2],"koszul":true}"#);
}

#[test]
fn affine_koszul_reports_full_os() {
    let v = json(&run(&["koszul", "--family", "partition:3", "--variant", "affine", "--full"]));
    assert_eq!(v["homology"], serde_json::json!([1, 3, 2]));
    assert_eq!(v["comparison"]["quasi_isomorphism"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["fy", "--family", "partition:3", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let out = run(&["fy", "--family", "partition:9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "validation");
    let out = run(&["koszul", "--family", "partition:3", "--variant", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["fy", "--family", "boolean:3", "--atom-order", "0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flats_and_graph_files() {
    let dir = scratch("inputs");
    let flats = dir.join("flats.json");
    std::fs::write(&flats, r#"{"atoms":["a","b","c"],"flats":[[],["a"],["b"],["c"],["a","b","c"]]}"#).unwrap();
    let v = json(&run(&["os", "--flats", flats.to_str().unwrap(), "--hilbert"]));
    assert_eq!(v["hilbert"], serde_json::json!([1, 3, 2]));
    let graph = dir.join("graph.json");
    std::fs::write(&graph, r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#).unwrap();
    let v = json(&run(&["building-sets", "--graph", graph.to_str().unwrap(), "--building", "tubes"]));
    assert_eq!(v["members"], serde_json::json!(["a", "b", "c", "ab", "bc", "abc"]));
    let out = run(&["nested", "--graph", graph.to_str().unwrap(), "--building", "tubes", "--irreducible"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&flats, "{not json").unwrap();
    assert_eq!(run(&["os", "--flats", flats.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn pretty_output_is_a_table() {
    let out = run(&["--pretty", "lattice", "--family", "boolean:2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("rank"));
}

#[test]
fn subcommands_produce_json() {
    for args in [
        &["lattice", "--family", "cycle:4"][..],
        &["building-sets", "--family", "partition:4"],
        &["nested", "--family", "partition:4", "--irreducible", "--list"],
        &["fy", "--family", "partition:4", "--duality"],
        &["os", "--family", "partition:4", "--projective"],
        &["operad-check", "--family", "partition:3"],
        &["groebner-check", "--family", "partition:4", "--atom-order", "5,4,3,2,1,0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        json(&out);
    }
}

#[test]
fn catalog_isolates_a_corrupted_entry() {
    let dir = scratch("catalog");
    let file = dir.join("catalog.json");
    let entries = serde_json::json!([
        { "name": "good", "lattice": { "kind": "partition", "n": 3 }, "building": "minimal" },
        { "name": "broken", "lattice": { "kind": "flats", "flats": { "atoms": ["a", "b"], "flats": [[], ["a"], ["a", "b"]] } }, "building": "minimal" },
        { "name": "also-good", "lattice": { "kind": "boolean", "n": 2 }, "building": "maximal" }
    ]);
    std::fs::write(&file, entries.to_string()).unwrap();
    let out = run(&["catalog", "--file", file.to_str().unwrap(), "--only", "fy,os"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let reports = v["reports"].as_array().unwrap();
    let of = |name: &str| reports.iter().filter(|r| r["entry"] == name).collect::<Vec<_>>();
    assert!(of("good").iter().all(|r| r["ok"] == true) && of("good").len() == 2);
    assert!(of("also-good").iter().all(|r| r["ok"] == true) && of("also-good").len() == 2);
    let broken = of("broken");
    assert_eq!(broken.len(), 1);
    assert_eq!(broken[0]["ok"], false);
    assert_eq!(broken[0]["check"], "validate");
}

#[test]
fn catalog_only_filter_selects_checks() {
    let out = run(&["catalog", "--entries", "P3-min,B3-max", "--only", "operad-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["check"] == "operad-check" && r["ok"] == true));
    assert_eq!(run(&["catalog", "--only", "bogus"]).status.code(), Some(2));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = scratch("cache");
    let args = ["--cache", dir.to_str().unwrap(), "fy", "--family", "partition:4", "--hilbert", "--basis"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(files_in(&dir) > 0);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let uncached = run(&args[2..]);
    assert_eq!(first.stdout, uncached.stdout);
}

#[test]
fn cache_directory_from_environment() {
    let dir = scratch("env");
    let other = scratch("env-flag");
    let out = bin()
        .env("BUILTLAT_CACHE_DIR", &dir)
        .args(["--cache", other.to_str().unwrap(), "os", "--family", "boolean:3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(files_in(&dir) > 0);
    assert_eq!(files_in(&other), 0);
}
