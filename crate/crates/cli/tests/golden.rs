//! Every scenario reproduces its golden file byte for byte, twice in a row.
//!
//! Set `EMERGENT_SPACE_BLESS=1` to rewrite the golden files from the
//! current output instead.

use std::path::PathBuf;
use std::process::Command;

use emergent_space_cli::scenarios;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_emergent-space")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn scenarios_match_goldens_on_consecutive_runs() {
    let bless = std::env::var_os("EMERGENT_SPACE_BLESS").is_some();
    for sc in scenarios::all() {
        let (code, first, err) = run(&["scenario", sc.name]);
        assert_eq!(code, 0, "{}: {err}", sc.name);
        if bless {
            std::fs::write(golden_dir().join(format!("{}.json", sc.name)), &first).unwrap();
            continue;
        }
        let (code, second, _) = run(&["scenario", sc.name, "--check"]);
        assert_eq!(code, 0, "{} does not match its golden file", sc.name);
        assert_eq!(first, second, "{} is not deterministic", sc.name);
        let on_disk = std::fs::read_to_string(golden_dir().join(format!("{}.json", sc.name))).unwrap();
        assert_eq!(on_disk, first, "{}: embedded golden is stale, rebuild", sc.name);
    }
}

#[test]
fn golden_files_and_scenarios_correspond() {
    let mut files: Vec<String> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().trim_end_matches(".json").to_string())
        .collect();
    files.sort();
    let mut names: Vec<String> = scenarios::all().iter().map(|s| s.name.to_string()).collect();
    names.sort();
    assert_eq!(files, names);
}

#[test]
fn listed_scenarios_have_unique_names() {
    let (code, out, _) = run(&["scenario", "--list"]);
    assert_eq!(code, 0);
    let listed: serde_json::Value = serde_json::from_str(&out).unwrap();
    let names: std::collections::BTreeSet<&str> =
        listed.as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), scenarios::all().len());
}

#[test]
fn reachability_scenario_prints_the_documented_closure() {
    let (_, out, _) = run(&["scenario", "cyclic5-reach"]);
    assert_eq!(out, "{\"closure\":[\"1\",\"2\",\"3\",\"4\"]}\n");
}

#[test]
fn tampered_golden_exits_with_mismatch_code() {
    let sc = scenarios::find("cyclic5-reach").unwrap();
    assert!(scenarios::diff(sc.golden, "{\"closure\":[\"1\"]}\n").is_some());
    assert!(scenarios::diff(sc.golden, sc.golden).is_none());
    let (code, _, err) = run(&["scenario", "nope", "--check"]);
    assert_eq!(code, 1);
    assert!(err.contains("UnknownScenario"));
}

#[test]
fn oscillator_scenario_takes_a_level_count() {
    let (code, out, _) = run(&["scenario", "oscillator", "--N", "8"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["levels"], 8);
    assert!(v["pi_a_omega_norm"].as_f64().unwrap() <= 1e-10);
    let (code, _, _) = run(&["scenario", "oscillator", "--n", "8", "--check"]);
    assert_eq!(code, 1);
}
