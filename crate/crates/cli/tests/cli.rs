use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylowtab")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn a5_fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/a5.tbl")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn export_then_oracle_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let export = run(&["export", "S4"]);
    assert_eq!(code(&export), 0);
    let group = write(dir.path(), "s4.json", &stdout(&export));
    let table = dir.path().join("s4-table.json");
    let table = table.to_str().unwrap();

    let oracle = run(&["oracle", &group, "--emit-table", table]);
    assert_eq!(code(&oracle), 0, "{}", String::from_utf8_lossy(&oracle.stderr));
    assert_eq!(stdout(&oracle).matches("\tMATCH\t").count(), 2);

    let analyze = run(&["analyze", table, "--p", "2", "--json"]);
    assert_eq!(code(&analyze), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&analyze)).unwrap();
    assert_eq!(json[0]["commutator"]["answer"], "Yes");
    assert_eq!(json[0]["center"]["code"], "CASE_C");

    let text = run(&["analyze", table, "--all-primes"]);
    assert!(stdout(&text).contains("p = 3"));
}

#[test]
fn gap_input() {
    let fixture = a5_fixture();
    let fixture = fixture.to_str().unwrap();
    let out = run(&["analyze", "--gap", fixture, "--p", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("abelian Sylow: true"));
    let converted = run(&["convert-gap", fixture]);
    assert_eq!(code(&converted), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&converted)).unwrap();
    assert_eq!(doc["group_order"], 60);
}

#[test]
fn corpus_filter_selects_one_entry() {
    let out = run(&["corpus", "--filter", "M11", "--json"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["group"] == "M11" && r["status"] == "MATCH"));

    let listed = stdout(&run(&["corpus", "--list"]));
    assert!(listed.lines().count() >= 22);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["--bogus"])), 1);
    assert_eq!(code(&run(&["analyze"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["corpus", "--filter", "no-such-group"])), 1);
    assert_eq!(code(&run(&["export", "no-such-group"])), 1);
    assert_eq!(code(&run(&["analyze", "/nonexistent/table.json"])), 2);
    let garbage = write(dir.path(), "bad.json", "{\"schema_version\": 1");
    assert_eq!(code(&run(&["analyze", &garbage])), 2);
    let group = write(dir.path(), "m11.json", &stdout(&run(&["export", "M11"])));
    let capped = run(&["oracle", &group, "--max-elements", "100"]);
    assert_eq!(code(&capped), 2);
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    let table = write(dir.path(), "a5.json", &stdout(&run(&["convert-gap", a5_fixture().to_str().unwrap()])));
    assert_eq!(code(&run(&["analyze", &table, "--p", "6"])), 1);
}
