use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use seshadri::arrangement::{
    gen_a1_15, gen_a1_6, gen_a1_9, gen_ceva, gen_generic, gen_klein, gen_quasipencil, gen_star,
    gen_wiman, IncidenceStructure,
};
use seshadri::io::read_arrangement;
use seshadri::io::DATA_DIR_ENV;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_seshadri"));
    cmd.env_remove(DATA_DIR_ENV);
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn write_generated(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file);
    let path_str = path.to_str().unwrap().to_string();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path_str]);
    stdout(&full);
    path_str
}

#[test]
fn generated_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&[&str], IncidenceStructure)> = vec![
        (&["ceva", "--n", "4"], gen_ceva(4).unwrap()),
        (&["star", "--d", "5"], gen_star(5).unwrap()),
        (&["quasipencil", "--d", "6"], gen_quasipencil(6).unwrap()),
        (&["a1_6"], gen_a1_6().unwrap()),
        (&["a1_9"], gen_a1_9().unwrap()),
        (&["a1_15"], gen_a1_15().unwrap()),
        (&["klein"], gen_klein().unwrap()),
        (&["wiman"], gen_wiman().unwrap()),
        (
            &["generic", "--d", "5", "--seed", "7"],
            gen_generic(5, 7).unwrap(),
        ),
    ];
    for (i, (args, expected)) in cases.into_iter().enumerate() {
        let path = write_generated(dir.path(), &format!("{i}.json"), args);
        let loaded = read_arrangement(Path::new(&path)).unwrap();
        assert_eq!(loaded.structure, expected, "{args:?}");
        assert!(loaded.warnings.is_empty());
    }
}

#[test]
fn generate_counts() {
    let ceva: Value = json(&["generate", "ceva", "--n", "4"]);
    assert_eq!(ceva["num_lines"], 12);
    assert_eq!(ceva["points"].as_array().unwrap().len(), 19);
    let star: Value = json(&["generate", "star", "--d", "5"]);
    assert_eq!(star["lines"].as_array().unwrap().len(), 5);
    assert_eq!(star["kind"], "coordinates");
}

#[test]
fn generate_needs_parameters() {
    assert!(!run(&["generate", "generic", "--d", "5"]).status.success());
    assert!(!run(&["generate", "ceva"]).status.success());
    assert!(!run(&["generate", "fano"]).status.success());
}

#[test]
fn analyze_bundled_arrangements() {
    let dir = tempfile::tempdir().unwrap();
    for (name, value) in [("klein", "1/8"), ("a1_15", "1/6"), ("wiman", "1/16")] {
        let path = write_generated(dir.path(), &format!("{name}.json"), &[name]);
        let report = json(&["analyze", &path, "--report", "json"]);
        assert_eq!(report["estimate"]["value"], value, "{name}");
        assert_eq!(report["estimate"]["exact"], true);
        assert_eq!(report["audits"]["computed_by_richest_line"], true);
    }
}

#[test]
fn certify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let a19 = write_generated(dir.path(), "a1_9.json", &["a1_9"]);
    let cover = json(&["certify", &a19, "--method", "cover", "--report", "json"]);
    assert_eq!(cover["certificate"]["value"], "1/4");
    assert_eq!(
        cover["certificate"]["divisor"]["components"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
    let ceva = write_generated(dir.path(), "ceva4.json", &["ceva", "--n", "4"]);
    let pairing = json(&["certify", &ceva, "--method", "pairing", "--report", "json"]);
    assert_eq!(pairing["certificate"]["value"], "1/5");
    assert_eq!(
        (
            pairing["certificate"]["divisor"]["a"].as_u64(),
            pairing["certificate"]["divisor"]["k"].as_u64()
        ),
        (Some(3), Some(12))
    );
    let star = write_generated(dir.path(), "star5.json", &["star", "--d", "5"]);
    let pairing = json(&["certify", &star, "--method", "pairing", "--report", "json"]);
    assert_eq!(pairing["certificate"]["value"], "1/4");
    let tight = json(&[
        "certify", &a19, "--method", "cover", "--budget", "3", "--report", "json",
    ]);
    assert!(tight["certificate"].is_null());
    assert!(
        !run(&["certify", &a19, "--method", "cover", "--node-limit", "1"])
            .status
            .success()
    );
}

#[test]
fn virtual_cover_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_generated(dir.path(), "a1_15.json", &["a1_15"]);
    let report = json(&["certify", &path, "--method", "virtual", "--report", "json"]);
    assert_eq!(report["certificate"]["value"], "1/6");
    let c_l: Vec<u64> = report["certificate"]["divisor"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["c_l"].as_u64().unwrap())
        .collect();
    assert_eq!(c_l, [5, 6, 6, 6, 6, 6]);
}

#[test]
fn ineq_examples() {
    let text = stdout(&["ineq", "check", "--d", "4", "--mults", "2,2,2,2,2,2,2"]);
    assert!(text.contains("bezout: false"));
    let all = json(&[
        "ineq", "check", "--d", "6", "--mults", "2x10", "--gon", "4", "--preset", "node",
        "--report", "json",
    ]);
    for (name, v) in all["checks"].as_object().unwrap() {
        assert_eq!(v, &Value::Bool(true), "{name}");
    }
    let table = stdout(&["ineq", "severi-table"]);
    assert!(table.contains("0.1388") && table.contains("0.1178"));
    assert!(!run(&["ineq", "severi-table", "--xs", "5"]).status.success());
    assert!(!run(&["ineq", "check", "--d", "6", "--mults", "2,3"])
        .status
        .success());
    let pruned = json(&[
        "ineq", "prune", "--s", "1", "--d-max", "3", "--target", "1/3", "--report", "json",
    ]);
    assert!(pruned["not_excluded"].as_array().unwrap().is_empty());
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let original = seshadri::io::bundled_json("klein", None).unwrap();
    std::fs::write(
        dir.path().join("klein.json"),
        original.replace("\"klein\"", "\"klein-copy\""),
    )
    .unwrap();
    let out = bin()
        .args(["generate", "klein"])
        .env(DATA_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("klein-copy"));
    let missing = bin()
        .args(["generate", "wiman"])
        .env(DATA_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(!missing.status.success());
}

#[test]
fn bad_input_is_a_hard_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"format\": 1, \"kind\": \"incidence\", \"num_lines\": 3, \"points\": [{\"id\": 0, \"lines\": [0, 1, 2]}, {\"id\": 1, \"lines\": [0, 1]}]}").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn non_exact_estimate_still_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_generated(dir.path(), "a1_9.json", &["a1_9"]);
    let report = json(&["analyze", &path, "--budget", "3", "--report", "json"]);
    assert_eq!(report["estimate"]["exact"], false);
    assert_eq!(report["estimate"]["lower"], "2/9");
}
