#![allow(dead_code)]

use std::path::PathBuf;

use qcm::cli::{main_with, Outcome};

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn data(name: &str) -> String {
    crate_dir().join("data").join(name).to_string_lossy().into_owned()
}

/// Run the CLI in-process with `{data}` in arguments replaced by the data
/// directory.
pub fn run(args: &[&str]) -> Outcome {
    run_with(args, None, b"")
}

pub fn run_with(args: &[&str], env_tolerance: Option<&str>, stdin: &[u8]) -> Outcome {
    let dir = crate_dir().join("data");
    let dir = dir.to_string_lossy();
    let args: Vec<String> = std::iter::once("qcm".to_string())
        .chain(args.iter().map(|a| a.replace("{data}", &dir)))
        .collect();
    main_with(args, env_tolerance, &mut &stdin[..])
}

/// Bundled invocations and the golden file each must reproduce byte for byte.
pub const GOLDEN_CASES: [(&str, &[&str]); 11] = [
    ("chsh_table1.txt", &["chsh", "--input", "{data}/table1.json"]),
    (
        "chsh_model.txt",
        &["chsh", "--input", "{data}/table1.json", "--model", "{data}/reference_model.json"],
    ),
    ("classicality_goldfish.txt", &["classicality", "--input", "{data}/goldfish.csv"]),
    ("classicality_hampton.txt", &["classicality", "--input", "{data}/hampton.csv"]),
    (
        "classicality_synthetic.txt",
        &["classicality", "--input", "{data}/synthetic_negations.csv", "--tolerance", "0.005"],
    ),
    ("fock_fit_hampton.txt", &["fock-fit", "--input", "{data}/hampton.csv"]),
    (
        "fock_fit_max_logical.txt",
        &["fock-fit", "--input", "{data}/hampton.csv", "--policy", "max-logical"],
    ),
    (
        "fock_fit_general.txt",
        &["fock-fit", "--input", "{data}/goldfish.csv", "--model", "general"],
    ),
    ("stats_fit_counts.txt", &["stats-fit", "--input", "{data}/counts.json"]),
    ("stats_fit_uniform11.txt", &["stats-fit", "--input", "{data}/uniform11.json"]),
    ("report.txt", &["report", "--manifest", "{data}/manifest.json"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests").join("golden").join(name)
}

/// Compare every golden case; returns the names that differ. With
/// `UPDATE_GOLDEN=1` the files are rewritten instead.
pub fn golden_mismatches() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for (name, args) in GOLDEN_CASES {
        let out = run(args);
        assert_eq!(out.status, 0, "{name}: {}", out.stderr);
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == out.stdout => {}
            _ => bad.push(name.to_string()),
        }
    }
    bad
}

