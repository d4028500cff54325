use std::io::Write;
use std::process::Command;

use cpl_cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cpl(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cpl").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = cpl(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

fn registry_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn zero_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            if map.contains_key("timings_ms") {
                map.insert("timings_ms".into(), Value::Null);
            }
            map.values_mut().for_each(zero_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(zero_timings),
        _ => {}
    }
}

const THM_111: &str = r#"{"name": "thm_111", "status": "proven", "source": "Theorem 111", "C": 2,
  "A": [1,1,1,1,1,1,1,1,1,1,1,1], "B": [0,0,0,0,0,0,0,0,0,0,0,0], "m": 3, "N0": 3}"#;

#[test]
fn catalog_counts() {
    let (code, v) = json(&["catalog"]);
    assert_eq!(code, EXIT_OK);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 42);
    let proven = rows.iter().filter(|r| r["status"] == "proven").count();
    assert_eq!(proven, 12);
    let (_, v) = json(&["catalog", "--status", "conjectured"]);
    assert_eq!(v.as_array().unwrap().len(), 30);
    let first = &rows[0];
    assert_eq!(first["name"], "thm_111");
    assert_eq!(first["factor"], "2048");
}

#[test]
fn empty_registry_is_empty_catalog() {
    let f = registry_file("[]");
    let (code, out, _) = cpl(&["--registry", f.path().to_str().unwrap(), "catalog"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "[]");
}

#[test]
fn malformed_registry_is_usage_error() {
    let f = registry_file("[{\"name\": 3}]");
    let (code, _, err) = cpl(&["--registry", f.path().to_str().unwrap(), "catalog"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
}

#[test]
fn registry_from_environment() {
    let f = registry_file(&format!("[{THM_111}]"));
    let out = Command::new(env!("CARGO_BIN_EXE_cpl"))
        .arg("catalog")
        .env("CPL_REGISTRY", f.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cpl");
    let ok = Command::new(bin)
        .args(["verify", "--id", "thm_222", "--nmax", "100"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["verify", "--nmax", "0", "--id", "thm_222"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn verify_holds() {
    let (code, v) = json(&["verify", "--id", "thm_111", "--nmax", "300"]);
    assert_eq!(code, EXIT_OK);
    let r = &v.as_array().unwrap()[0];
    assert_eq!(r["spec"], "thm_111");
    assert_eq!(r["holds"], true);
    assert_eq!(r["n_from"], 3);
    assert_eq!(r["n_to"], 300);
    assert!(r["first_failure"].is_null());
}

#[test]
fn verify_mutated_entry_fails() {
    let mutated = THM_111.replace("\"m\": 3", "\"m\": 4");
    let f = registry_file(&format!("[{mutated}]"));
    let (code, v) = json(&[
        "--registry",
        f.path().to_str().unwrap(),
        "verify",
        "--id",
        "thm_111",
        "--nmax",
        "50",
    ]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let r = &v.as_array().unwrap()[0];
    assert_eq!(r["holds"], false);
    let fail = &r["first_failure"];
    assert!(fail["N"].as_u64().unwrap() <= 50);
    assert_ne!(fail["left"], fail["right"]);
}

#[test]
fn verify_usage_errors() {
    assert_eq!(cpl(&["verify", "--id", "nope"]).0, EXIT_USAGE);
    assert_eq!(cpl(&["verify", "--id", "thm_111", "--nmax", "0"]).0, EXIT_USAGE);
    assert_eq!(cpl(&["verify"]).0, EXIT_USAGE);
    assert_eq!(cpl(&["--jobs", "0", "catalog"]).0, EXIT_USAGE);
    assert_eq!(cpl(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = cpl(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify-all"));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let (_, out, _) = cpl(&["verify", "--id", "thm_333", "--nmax", "200"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, out);
}

#[test]
fn jobs_do_not_change_results() {
    let args = |jobs: &'static str| {
        ["--jobs", jobs, "verify-all", "--status", "proven", "--nmax", "150"]
    };
    let (c1, mut one) = json(&args("1"));
    let (c3, mut three) = json(&args("3"));
    assert_eq!((c1, c3), (EXIT_OK, EXIT_OK));
    zero_timings(&mut one);
    zero_timings(&mut three);
    assert_eq!(one, three);
    let names: Vec<&str> = one
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["spec"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 12);
    assert_eq!(names[0], "thm_111");
}

#[test]
fn oracle_cross_checks() {
    let (code, v) = json(&["oracle", "--id", "thm_999", "--nmax", "30", "--brute-nmax", "8"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v.as_array().unwrap()[0]["holds"], true);
    let (code, _, err) = cpl(&["oracle", "--id", "thm_111", "--brute-nmax", "16"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("15"));
}

#[test]
fn bijection_certificate() {
    let (code, v) = json(&["bijection", "--lemma", "lemma3_3", "--value-max", "40"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["holds"], true);
    assert_eq!(v["identity"], "thm_333");
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 41);
    assert!(values.iter().all(|r| r["left"] == r["right"]));
}

#[test]
fn bijection_edges() {
    assert_eq!(cpl(&["bijection", "--lemma", "bogus"]).0, EXIT_USAGE);
    let (code, v) = json(&["bijection", "--lemma", "lemma3_5", "--value-max", "-3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["elements"], 0);
}

#[test]
fn csv_and_markdown() {
    let (code, out, _) = cpl(&["--format", "csv", "catalog", "--status", "proven"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert!(rdr.headers().unwrap().iter().any(|h| h == "name"));
    assert_eq!(rdr.records().count(), 12);
    let (code, out, _) = cpl(&["--format", "markdown", "verify", "--id", "thm_222", "--nmax", "50"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with('|'));
    assert!(lines[1].contains("---"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn search_with_pairs_file() {
    let f = registry_file(r#"[{"A": [1,1,1,1,1,1,1,1,1,1,1,1], "B": [0,0,0,0,0,0,0,0,0,0,0,0]}]"#);
    let (code, v) = json(&[
        "search",
        "--modulus",
        "2",
        "--m-from",
        "0",
        "--m-to",
        "4",
        "--pairs",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let found = v.as_array().unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0]["m"], 3);
    assert_eq!(cpl(&["search", "--modulus", "2", "--m-from", "0"]).0, EXIT_USAGE);
}
