use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nullsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nullsum")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = nullsum(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn with_cache(cache: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--cache", cache.to_str().unwrap()];
    all.extend_from_slice(args);
    nullsum(&all)
}

#[test]
fn coefficient_examples() {
    let v = json(&["coeff", "--k", "6", "--family", "e", "--j", "1"]);
    assert_eq!(v["result"][0]["value"], "-28");
    let v = json(&["coeff", "--k", "3", "--family", "c", "--j", "1"]);
    assert_eq!(v["result"][0]["value"], "-1");
    let v = json(&["coeff", "--k", "4", "--family", "d", "--j", "1", "--method", "naive-oracle"]);
    assert_eq!(v["result"][0]["method"], "naive-oracle");
}

#[test]
fn small_tables() {
    let v = json(&["table", "--k", "2"]);
    let rows = &v["result"]["rows"];
    assert_eq!((&rows[0]["e"], &rows[1]["e"]), (&Value::from("1"), &Value::from("-1")));
    let v = json(&["table", "--k", "3"]);
    let e: Vec<&str> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["e"].as_str().unwrap()).collect();
    assert_eq!(e, ["1", "0", "-1"]);

    let out = nullsum(&["--format", "csv", "table", "--k", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("family,k,i,j,value\n"));
    assert_eq!(text.lines().count(), 1 + 6 + 3);
    let out = nullsum(&["table", "--k", "6"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("-28"));
}

#[test]
fn certificates() {
    let v = json(&["certify", "--conjecture", "gadms", "--k", "2"]);
    assert_eq!(v["result"]["gcd"], "1");
    assert_eq!(v["result"]["set_size"], 3);
    let v = json(&["certify", "--conjecture", "alspach", "--k", "5"]);
    assert!(v["result"]["min_admissible_prime"].as_u64().unwrap() > 5);
    assert_eq!(nullsum(&["certify", "--conjecture", "gadms", "--k", "2", "--j", ""]).status.code(), Some(2));
}

#[test]
fn orderings_and_sweeps() {
    let v = json(&["order", "--group", "Z5", "--set", "1,2,3", "--variant", "alspach"]);
    assert_eq!(v["result"]["ordering"], serde_json::json!([2, 1, 3]));
    let v = json(&["order", "--group", "Z^2", "--set", "(1,0);(0,1);(2,3)"]);
    assert_eq!(v["result"]["trace"]["embedding"]["base"], 9);
    assert_eq!(v["result"]["trace"]["prime"], 41);
    let v = json(&["sweep", "--group", "Z13", "--k", "4", "--variant", "gadms"]);
    assert_eq!(v["result"][0]["failures"], serde_json::json!([]));
    let v = json(&["consistency", "--k", "6", "--p", "13", "--variant", "gadms"]);
    assert_eq!(v["result"][0]["agree"], true);
    assert_eq!(v["result"][0]["sweep"]["valid_subsets"], 924);
}

#[test]
fn exit_codes() {
    assert_eq!(nullsum(&["coeff", "--k", "6"]).status.code(), Some(2));
    assert_eq!(nullsum(&["order", "--group", "Z5", "--set", "1,4"]).status.code(), Some(2));
    assert_eq!(nullsum(&["order", "--group", "Z11", "--set", "1,2,3,4,5,6,7", "--budget", "2"]).status.code(), Some(3));
    assert_eq!(nullsum(&["sweep", "--group", "Z21", "--k", "5", "--max-subsets", "10"]).status.code(), Some(3));
    assert_eq!(nullsum(&["--max-terms", "5", "coeff", "--k", "6", "--family", "e", "--j", "1"]).status.code(), Some(3));
    assert_eq!(nullsum(&["--format", "csv", "sweep", "--group", "Z5", "--k", "2"]).status.code(), Some(2));
    assert_eq!(nullsum(&["cache", "list"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let strip = |args: &[&str]| {
        let mut v = json(args);
        v.as_object_mut().unwrap().remove("meta");
        serde_json::to_string(&v).unwrap()
    };
    for args in [&["table", "--k", "5"][..], &["sweep", "--group", "Z11", "--k", "4"]] {
        assert_eq!(strip(args), strip(args));
    }
    let a = nullsum(&["--workers", "1", "--format", "csv", "table", "--k", "5"]).stdout;
    let b = nullsum(&["--workers", "3", "--format", "csv", "table", "--k", "5"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let out = with_cache(&cache, &["cache", "list"]);
    assert!(out.status.success());

    assert!(with_cache(&cache, &["coeff", "--k", "5", "--family", "e", "--j", "2"]).status.success());
    assert!(with_cache(&cache, &["table", "--k", "4"]).status.success());
    let listed: Value = serde_json::from_slice(&with_cache(&cache, &["--format", "json", "cache", "list"]).stdout).unwrap();
    let n = listed["result"]["count"].as_u64().unwrap();
    // e_5,2 with its four a parts, then 12 a and 4 e at k = 4
    assert_eq!(n, 5 + 16);

    let export = dir.path().join("export.jsonl");
    assert!(with_cache(&cache, &["cache", "export", export.to_str().unwrap()]).status.success());
    let fresh = dir.path().join("fresh.jsonl");
    assert!(with_cache(&fresh, &["cache", "import", export.to_str().unwrap()]).status.success());
    let a = fs::read_to_string(&export).unwrap();
    let again = dir.path().join("again.jsonl");
    assert!(with_cache(&fresh, &["cache", "export", again.to_str().unwrap()]).status.success());
    assert_eq!(a, fs::read_to_string(&again).unwrap());

    // a hit returns the stored value
    let v: Value = serde_json::from_slice(
        &with_cache(&fresh, &["--format", "json", "coeff", "--k", "4", "--family", "a", "--i", "2", "--j", "1"]).stdout,
    )
    .unwrap();
    assert_eq!(v["result"][0]["k"], 4);
    assert!(with_cache(&fresh, &["cache", "verify", "--sample", "5"]).status.success());

    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, a.replacen("\"schema\":1", "\"schema\":2", 1)).unwrap();
    let out = with_cache(&fresh, &["cache", "import", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema version 2"));

    let corrupt = dir.path().join("corrupt.jsonl");
    fs::write(&corrupt, format!("{a}not json\n")).unwrap();
    let out = with_cache(&corrupt, &["cache", "list"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(&format!(":{}:", n + 1)));

    assert!(with_cache(&fresh, &["cache", "clear"]).status.success());
    let listed: Value = serde_json::from_slice(&with_cache(&fresh, &["--format", "json", "cache", "list"]).stdout).unwrap();
    assert_eq!(listed["result"]["count"], 0);
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_nullsum"))
        .env("NULLSUM_CACHE", &cache)
        .args(["coeff", "--k", "3", "--family", "e", "--j", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), 3);
}
