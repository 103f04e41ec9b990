mod common;

use std::process::Command;

use common::{data, golden_mismatches, run, run_with, GOLDEN_CASES};
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = common::crate_dir().join("schemas").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(schema_name: &str, json: &str) {
    let v = schema(schema_name);
    let instance: Value = serde_json::from_str(json).unwrap();
    let errors: Vec<String> = v.iter_errors(&instance).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:#?}");
}

#[test]
fn golden_outputs_match() {
    let bad = golden_mismatches();
    assert!(bad.is_empty(), "golden mismatch (rerun with UPDATE_GOLDEN=1 after review): {bad:?}");
}

#[test]
fn repeated_runs_are_identical() {
    for (_, args) in GOLDEN_CASES {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn chsh_reports_violation_and_note() {
    let out = run(&["chsh", "--input", "{data}/table1.json"]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("CHSH = 2.421"));
    assert!(out.stdout.contains("classical bound violated"));
    assert!(out.stdout.contains("note: table probabilities carry 3 decimals"));
}

#[test]
fn goldfish_has_five_negation_residuals() {
    let out = run(&["classicality", "--input", "{data}/goldfish.csv", "--output", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let verdicts = v["records"][0]["verdicts"].as_array().unwrap();
    let negation = verdicts.iter().find(|v| v["conditionSet"] == "negation").unwrap();
    assert_eq!(negation["residuals"].as_array().unwrap().len(), 5);
    let total = v["records"][0]["profile"]["iTotal"].as_f64().unwrap();
    assert!((total + 0.95).abs() < 1e-12);
    let text = run(&["classicality", "--input", "{data}/goldfish.csv"]).stdout;
    assert!(text.contains("-0.9500"));
}

#[test]
fn uniform_counts_pick_be_at_one_half() {
    let out = run(&["stats-fit", "--input", "{data}/uniform11.json", "--output", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let d = &v["datasets"][0];
    assert_eq!(d["comparison"]["winner"], "BE");
    assert!((d["be"]["params"]["p1"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn json_outputs_validate_against_schemas() {
    let cases: [(&str, &[&str]); 8] = [
        ("classicality", &["classicality", "--input", "{data}/synthetic_negations.csv"]),
        ("classicality", &["classicality", "--input", "{data}/hampton.csv"]),
        ("fock-fit", &["fock-fit", "--input", "{data}/hampton.csv"]),
        ("fock-fit", &["fock-fit", "--input", "{data}/hampton.csv", "--policy", "fixed", "--m2", "0.1"]),
        ("fock-fit", &["fock-fit", "--input", "{data}/goldfish.csv", "--model", "general"]),
        ("chsh", &["chsh", "--input", "{data}/table1.json", "--model", "{data}/reference_model.json"]),
        ("chsh", &["chsh", "--input", "{data}/table1.json"]),
        ("stats-fit", &["stats-fit", "--input", "{data}/counts.json"]),
    ];
    for (schema_name, args) in cases {
        let mut args = args.to_vec();
        args.extend(["--output", "json"]);
        let out = run(&args);
        assert_eq!(out.status, 0, "{}", out.stderr);
        assert_valid(schema_name, &out.stdout);
    }

    let out = run(&["report", "--manifest", "{data}/manifest.json", "--output", "json"]);
    assert_valid("report", &out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    for s in v["sections"].as_array().unwrap() {
        let name = s["result"]["command"].as_str().unwrap();
        assert_valid(name, &s["result"].to_string());
    }
}

#[test]
fn schemas_reject_malformed_output() {
    let out = run(&["stats-fit", "--input", "{data}/uniform11.json", "--output", "json"]);
    let mut v: Value = serde_json::from_str(&out.stdout).unwrap();
    v["datasets"][0]["comparison"]["strength"] = Value::from("overwhelming");
    assert!(!schema("stats-fit").is_valid(&v));
}

#[test]
fn stdin_input() {
    let csv = std::fs::read(data("goldfish.csv")).unwrap();
    let from_file = run(&["classicality", "--input", "{data}/goldfish.csv"]);
    let from_stdin = run_with(&["classicality", "--input", "-"], None, &csv);
    assert_eq!(from_stdin, from_file);
}

#[test]
fn tolerance_flag_overrides_environment() {
    // Olive's conjunction overshoots the minimum rule by 0.02.
    let olive = "exemplar,muA,muB,muAandB\nOlive,0.56,0.63,0.58\n";
    let strict = run_with(&["classicality", "--input", "-"], None, olive.as_bytes());
    assert!(strict.stdout.contains("non-classical"));
    let env = run_with(&["classicality", "--input", "-"], Some("0.05"), olive.as_bytes());
    assert!(!env.stdout.contains("non-classical"));
    let flag = run_with(
        &["classicality", "--input", "-", "--tolerance", "1e-9"],
        Some("0.05"),
        olive.as_bytes(),
    );
    assert!(flag.stdout.contains("non-classical"));
    let bad = run_with(&["classicality", "--input", "-"], Some("lots"), olive.as_bytes());
    assert_eq!(bad.status, 1);
}

#[test]
fn plot_writes_svg() {
    let dir = std::env::temp_dir().join(format!("qcm-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fits.svg");
    let p = path.to_string_lossy().into_owned();
    let out = run(&["stats-fit", "--input", "{data}/counts.json", "--plot", &p]);
    assert_eq!(out.status, 0, "{}", out.stderr);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("mb-exact"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_and_validation_errors_exit_1() {
    assert_eq!(run(&["bogus"]).status, 1);
    assert_eq!(run(&["chsh", "--input", "{data}/table1.json", "--frobnicate"]).status, 1);
    assert_eq!(run(&["fock-fit", "--input", "{data}/hampton.csv", "--policy", "fixed"]).status, 1);
    let bad = run_with(&["classicality", "--input", "-"], None, b"exemplar,muA,muB,muAandB\nX,1.2,0.5,0.5\n");
    assert_eq!(bad.status, 1);
    assert!(bad.stderr.starts_with("error:"));
    assert!(bad.stdout.is_empty());
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["stats-fit", "--input", "{data}/does-not-exist.json"]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("does-not-exist.json"));
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status, 0);
    for sub in ["classicality", "fock-fit", "chsh", "stats-fit", "report"] {
        assert!(out.stdout.contains(sub), "{sub}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qcm");
    let ok = Command::new(bin)
        .args(["chsh", "--input", &data("table1.json")])
        .env_remove("QCM_TOLERANCE")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("CHSH = 2.421"));

    let usage = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    assert!(!usage.stderr.is_empty());

    let io = Command::new(bin)
        .args(["chsh", "--input", "/nonexistent/table.json"])
        .output()
        .unwrap();
    assert_eq!(io.status.code(), Some(2));
}
