use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tybraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tybraid"))
        .args(args)
        .env_remove("TYBRAID_MODULUS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn split_real_has_two_classes() {
    let o = tybraid(&[
        "classify",
        "--case",
        "split-real",
        "--n",
        "1",
        "--tau",
        "+",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
}

#[test]
fn intro_tables_match_goldens() {
    let o = tybraid(&["reproduce", "--tables", "intro", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let golden = format!(
        "{}\n{}",
        include_str!("../goldens/cases-n2.md"),
        include_str!("../goldens/verdicts-n2.md")
    );
    assert_eq!(stdout(&o), golden);
}

#[test]
fn gauss_table_matches_golden() {
    let o = tybraid(&["reproduce", "--tables", "gauss", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), include_str!("../goldens/gauss-n3.md"));
}

#[test]
fn crossed_oracle_agrees() {
    let o = tybraid(&["verify", "--case", "cc", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("| oracle | criterion 5 | PASS |"));
}

#[test]
fn verify_with_wall_fuzzing() {
    let o = tybraid(&[
        "verify", "--case", "rc-conj", "--n", "1", "--seed", "11", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"wall fuzz"));
}

#[test]
fn invalid_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let p = bad.to_str().unwrap();
    for args in [
        vec!["classify", "--input", p],
        vec!["verify", "--input", p],
        vec!["classify", "--case", "split-real", "--n", "9"],
        vec!["classify", "--case", "rq", "--ell", "1"],
        vec!["classify", "--case", "rq", "--tau", "0"],
        vec!["reproduce", "--n-max", "7"],
    ] {
        let o = tybraid(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = tybraid(&["classify", "--input", p]);
    assert!(stderr(&o).contains("[input]"));
    let o = Command::new(env!("CARGO_BIN_EXE_tybraid"))
        .args(["classify", "--case", "rq"])
        .env("TYBRAID_MODULUS", "12")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("TYBRAID_MODULUS"));
}

fn representative(case: &str, n: &str) -> Value {
    let o = tybraid(&["classify", "--case", case, "--n", n, "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["classes"][0]["representative"].clone()
}

fn verify_file(path: &Path, braiding: &Value) -> Output {
    fs::write(path, serde_json::to_string(braiding).unwrap()).unwrap();
    tybraid(&["verify", "--input", path.to_str().unwrap()])
}

#[test]
fn tampered_braiding_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    for (case, n, family) in [
        ("split-real", "1", "FAIL [H"),
        ("split-complex", "1", "FAIL [H"),
        ("cc", "1", "FAIL [CB-"),
    ] {
        let mut b = representative(case, n);
        let o = verify_file(&path, &b);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{case}: {}{}",
            stdout(&o),
            stderr(&o)
        );

        let e = b["sigma1_exponents"][1].as_u64().unwrap();
        b["sigma1_exponents"][1] = Value::from((e + 8) % 16);
        let o = verify_file(&path, &b);
        assert_eq!(o.status.code(), Some(1), "{case}");
        assert!(stderr(&o).contains(family), "{case}: {}", stderr(&o));
    }
}

#[test]
fn wrong_declared_invariants_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut b = representative("split-real", "1");
    b["invariants"]["symmetric"] = Value::from(false);
    let o = verify_file(&dir.path().join("b.json"), &b);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("FAIL [invariants]"));
}

#[test]
fn data_file_matches_case_flags() {
    let dir = tempfile::tempdir().unwrap();
    let b = representative("rq", "1");
    let path = dir.path().join("data.json");
    fs::write(&path, serde_json::to_string(&b["data"]).unwrap()).unwrap();
    let from_file = tybraid(&[
        "classify",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let from_flags = tybraid(&["classify", "--case", "rq", "--n", "1", "--format", "json"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_flags));
}

#[test]
fn output_is_deterministic() {
    for format in ["json", "csv", "markdown"] {
        let args = [
            "classify", "--case", "rc-id", "--n", "1", "--tau", "-", "--format", format,
        ];
        assert_eq!(stdout(&tybraid(&args)), stdout(&tybraid(&args)));
    }
}

#[test]
fn cache_hits_and_rejects_stale_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.ndjson");
    let c = cache.to_str().unwrap();
    let args = [
        "classify",
        "--case",
        "split-complex",
        "--n",
        "1",
        "--ell",
        "1",
        "--format",
        "json",
        "--cache",
        c,
    ];
    let fresh = tybraid(&args);
    assert!(stderr(&fresh).contains("cache: miss"));
    let hit = tybraid(&args);
    assert!(stderr(&hit).contains("cache: hit"));
    assert_eq!(stdout(&hit), stdout(&fresh));

    // a tampered result no longer matches its checksum
    let text = fs::read_to_string(&cache).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut entry: Value = serde_json::from_str(&lines[1]).unwrap();
    entry["result"]["classes"][0]["size"] = Value::from(99);
    lines[1] = serde_json::to_string(&entry).unwrap();
    fs::write(&cache, lines.join("\n") + "\n").unwrap();
    let again = tybraid(&args);
    assert!(
        stderr(&again).contains("dropped 1 stale"),
        "{}",
        stderr(&again)
    );
    assert!(stderr(&again).contains("cache: miss"));
    assert_eq!(stdout(&again), stdout(&fresh));

    // a header for another modulus invalidates every entry
    let text = fs::read_to_string(&cache).unwrap();
    fs::write(&cache, text.replacen("\"modulus\":16", "\"modulus\":32", 1)).unwrap();
    let again = tybraid(&args);
    assert!(stderr(&again).contains("cache: miss"), "{}", stderr(&again));
    assert_eq!(stdout(&again), stdout(&fresh));

    // an entry filed under the wrong data is never served
    let text = fs::read_to_string(&cache).unwrap();
    let other = [
        "classify",
        "--case",
        "split-complex",
        "--n",
        "1",
        "--ell",
        "2",
        "--format",
        "json",
        "--cache",
        c,
    ];
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut entry: Value = serde_json::from_str(&lines[1]).unwrap();
    let key = entry["checksum"].clone();
    let o = tybraid(&other);
    assert!(stderr(&o).contains("cache: miss"));
    let text = fs::read_to_string(&cache).unwrap();
    let swapped: Value = serde_json::from_str(text.lines().nth(2).unwrap()).unwrap();
    entry["result"] = swapped["result"].clone();
    entry["result_checksum"] = swapped["result_checksum"].clone();
    entry["checksum"] = key;
    lines[1] = serde_json::to_string(&entry).unwrap();
    fs::write(&cache, lines.join("\n") + "\n").unwrap();
    let again = tybraid(&args);
    assert!(stderr(&again).contains("cache: miss"), "{}", stderr(&again));
    assert_eq!(stdout(&again), stdout(&fresh));
}

#[test]
fn form_counts_agree_with_formulas() {
    let o = tybraid(&["enumerate-forms", "--n-max", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,QF+,QF-,|Aut|,|H+|,|H-|,|Aut| formula,|H+| formula,|H-| formula\n1,3,1,6,2,6,6,2,6\n2,10,6,720,72,120,720,72,120\n"
    );
}
