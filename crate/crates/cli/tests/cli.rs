use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().expect("spawn forge")
}

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(forge(&[]).status.code(), Some(2));
    assert_eq!(forge(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(forge(&["verify", "no-such-check"]).status.code(), Some(2));
    let o = forge(&["search-autos", "D8", "--order", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("order p = 2"));
}

#[test]
fn cap_refusal_exits_two() {
    let o = forge(&["search-autos", "L128", "--cap", "64"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("cap"));
}

#[test]
fn single_check_passes() {
    let o = forge(&["verify", "cor-2.4", "--group", "D8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("pass"));
    assert!(out.ends_with("1 pass, 0 fail, 0 skip, 0 refused\n"), "{out}");
}

#[test]
fn refused_checks_do_not_fail_the_run() {
    let o = forge(&["verify", "lemma-2.2", "--group", "D16", "--cap", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("refused"));
}

#[test]
fn deterministic_json_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = forge(&["verify-all", "--prime", "3", "--deterministic", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let (a, b) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["timing_ms"] == 0));
}

#[test]
fn manifest_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus_dir().join("g64.pc"), dir.path().join("g64.pc")).unwrap();
    let m = dir.path().join("manifest.txt");
    fs::write(&m, "file g64.pc\nexpect order 63\n").unwrap();
    let o = forge(&["verify-all", "--manifest", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("order: expected 63, computed 64"), "{}", stderr(&o));
}

#[test]
fn empty_manifest_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("manifest.txt");
    fs::write(&m, "# nothing here\n").unwrap();
    let json = dir.path().join("out.json");
    let o = forge(&["verify-all", "--manifest", m.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 pass, 0 fail, 0 skip, 0 refused\n");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert!(v["results"].as_array().unwrap().is_empty());
}

#[test]
fn shipped_manifest_verifies() {
    let m = corpus_dir().join("manifest.txt");
    let o = forge(&["verify-all", "--manifest", m.to_str().unwrap(), "--prime", "3", "--deterministic"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains(" 0 fail,"));
}

#[test]
fn inspect_reads_files_and_builtins() {
    let from_file = forge(&["inspect", corpus_dir().join("g64.pc").to_str().unwrap()]);
    let builtin = forge(&["inspect", "G64"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&builtin));
    let v: serde_json::Value = serde_json::from_slice(&builtin.stdout).unwrap();
    assert_eq!(v["order"], 64);
    assert_eq!(v["center_invariants"], serde_json::json!([4]));
    assert_eq!(forge(&["inspect", "NoSuchGroup"]).status.code(), Some(2));
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = forge(&["export", "SD16"]);
    let path = dir.path().join("sd16.pc");
    fs::write(&path, &o.stdout).unwrap();
    let again = forge(&["export", path.to_str().unwrap()]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn cohomology_of_extraspecial() {
    let o = forge(&["cohomology", "ES27", "--normal", "x2,x3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h0"], serde_json::json!([3]));
    assert_eq!(v["h1"], serde_json::json!([3]));
    assert_eq!(v["z1_order"], 9);
}

#[test]
fn search_autos_finds_noninner_on_d8() {
    let o = forge(&["search-autos", "D8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ws = v.as_array().unwrap();
    assert!(ws.iter().all(|w| w["order"] == 2 && w["fixed"] == "frattini"));
    assert!(ws.iter().any(|w| w["inner"] == false));
}

#[test]
fn list_names_every_check() {
    let out = stdout(&forge(&["list"]));
    for id in ["lemma-2.1", "thm-3.6", "prop-1.3", "example-g64"] {
        assert!(out.contains(id));
    }
}
