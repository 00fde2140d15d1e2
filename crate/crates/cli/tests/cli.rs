use std::process::{Command, Output};

fn fusionlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn s4_against_its_sylow_is_unequal() {
    let o = fusionlab(&["mislin", "decide", "--group", "S4", "--prime", "2", "--subsystem", "sylow"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("verdict: UNEQUAL\n"), "{out}");
    assert!(out.contains("total 10") && out.contains("total 13"));
}

#[test]
fn omega_for_s3_at_3() {
    let o = fusionlab(&["omega", "compute", "--group", "S3", "--prime", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.trim_start().starts_with("1/2 * ")).count(), 2, "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("size 3"));
}

#[test]
fn structured_omega_is_json() {
    let o = fusionlab(&["--format", "structured", "omega", "compute", "--group", "S3", "--prime", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["certificates"]["size"], "3");
}

#[test]
fn empty_catalog_is_a_trivial_pass() {
    let dir = std::env::temp_dir().join(format!("fusionlab-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    std::fs::write(&path, "{\"entries\": []}").unwrap();
    let o = fusionlab(&["catalog", "run-all", "--catalog", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "summary: 0 entries, 0 pass, 0 fail, 0 skipped\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_expectation_exits_one() {
    let dir = std::env::temp_dir().join(format!("fusionlab-wrong-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    std::fs::write(
        &path,
        r#"{"entries": [{"name": "wrong", "group": "S3", "prime": 3,
            "subsystems": [{"name": "sylow", "kind": "sylow", "expected": "equal", "oracle": "deliberately wrong"}]}]}"#,
    )
    .unwrap();
    let o = fusionlab(&["catalog", "run-all", "--catalog", path.to_str().unwrap(), "--no-equivalence"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("entry wrong: FAIL"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(fusionlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(fusionlab(&["omega", "compute", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(fusionlab(&["--format", "xml", "catalog", "list"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one() {
    let o = fusionlab(&["group", "info", "--group", "M24"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown group"));
    let o = fusionlab(&["cohomology", "dims", "--group", "S4", "--prime", "2", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fusion_build_then_check() {
    let dir = std::env::temp_dir().join(format!("fusionlab-fusion-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a4.json");
    let o = fusionlab(&["fusion", "build", "--group", "A4", "--prime", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = fusionlab(&["fusion", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("saturated yes") && out.contains("morphisms 13"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn burnside_and_cohomology_commands() {
    let out = stdout(&fusionlab(&["burnside", "basis", "--left", "C2", "--right", "C2"]));
    assert!(out.starts_with("2 transitive"));
    let out = stdout(&fusionlab(&["burnside", "compose", "--left", "C2", "--middle", "C2", "--right", "C2", "--first", "0", "--second", "0"]));
    assert!(out.contains("2 * [U=[0] phi=[0]]"), "{out}");
    let out = stdout(&fusionlab(&["cohomology", "dims", "--group", "V4", "--prime", "2"]));
    assert!(out.contains("H^1: 2") && out.contains("H^2: 3"), "{out}");
    let o = fusionlab(&["cohomology", "stable", "--group", "A4", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H^2: Sylow 3, stable 1"));
}

#[test]
fn equivalence_and_group_info() {
    let o = fusionlab(&["mislin", "equivalence", "--group", "A4", "--prime", "2", "--subsystem", "sylow"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent: yes"));
    let out = stdout(&fusionlab(&["group", "info", "--group", "D8"]));
    assert!(out.contains("order 8") && out.contains("subgroups 10"), "{out}");
}
