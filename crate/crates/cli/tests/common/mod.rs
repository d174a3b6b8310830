//! Shared harness for CLI tests: binary invocation, fixture paths, and the
//! golden-file corpus.

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_str().unwrap().to_string()
}

pub fn golden(name: &str) -> Vec<u8> {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/golden");
    p.push(name);
    std::fs::read(&p).unwrap_or_else(|e| panic!("missing golden file {}: {e}", p.display()))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xplus"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: Vec<String>,
    pub golden_file: &'static str,
}

/// Every stdout-producing subcommand with a frozen expected output.
pub fn golden_cases() -> Vec<GoldenCase> {
    vec![
        GoldenCase {
            name: "rearrange",
            args: vec!["rearrange".into(), "--in".into(), fixture("three_atoms.json")],
            golden_file: "rearrange_three_atoms.json",
        },
        GoldenCase {
            name: "dispersion square",
            args: vec![
                "dispersion".into(),
                "--in".into(),
                fixture("two_point.json"),
                "--f".into(),
                "square".into(),
            ],
            golden_file: "dispersion_square_two_point.json",
        },
        GoldenCase {
            name: "dispersion identity",
            args: vec![
                "dispersion".into(),
                "--in".into(),
                fixture("skew.json"),
                "--f".into(),
                "identity".into(),
            ],
            golden_file: "dispersion_identity_skew.json",
        },
        GoldenCase {
            name: "dispersion power:3",
            args: vec![
                "dispersion".into(),
                "--in".into(),
                fixture("two_point.json"),
                "--f".into(),
                "power:3".into(),
            ],
            golden_file: "dispersion_power3_two_point.json",
        },
        GoldenCase {
            name: "check strict",
            args: vec![
                "check".into(),
                "--in".into(),
                fixture("two_point.json"),
                "--f".into(),
                "square".into(),
            ],
            golden_file: "check_square_two_point.json",
        },
        GoldenCase {
            name: "check equality",
            args: vec![
                "check".into(),
                "--in".into(),
                fixture("plus_form.json"),
                "--f".into(),
                "square".into(),
            ],
            golden_file: "check_square_plus_form.json",
        },
        GoldenCase {
            name: "proof-chain",
            args: vec![
                "proof-chain".into(),
                "--in".into(),
                fixture("two_point.json"),
                "--f".into(),
                "square".into(),
            ],
            golden_file: "proof_chain_square_two_point.json",
        },
        GoldenCase {
            name: "oracle",
            args: vec![
                "oracle".into(),
                "--probs".into(),
                r#"["2/3","1/3"]"#.into(),
                "--window".into(),
                "-1:1".into(),
                "--f".into(),
                "square".into(),
            ],
            golden_file: "oracle_pair.json",
        },
        GoldenCase {
            name: "convolve pair",
            args: vec![
                "convolve".into(),
                "--in".into(),
                fixture("two_point.json"),
                "--with".into(),
                fixture("two_point.json"),
            ],
            golden_file: "convolve_two_point_pair.json",
        },
        GoldenCase {
            name: "convolve float n=3",
            args: vec![
                "convolve".into(),
                "--in".into(),
                fixture("skew.json"),
                "--n".into(),
                "3".into(),
                "--mode".into(),
                "float".into(),
            ],
            golden_file: "convolve_skew_float_n3.json",
        },
        GoldenCase {
            name: "concentration n=2",
            args: vec![
                "concentration".into(),
                "--in".into(),
                fixture("skew.json"),
                "--n".into(),
                "2".into(),
            ],
            golden_file: "concentration_skew_n2.json",
        },
        GoldenCase {
            name: "compare n=3",
            args: vec![
                "compare".into(),
                "--in".into(),
                fixture("two_point.json"),
                "--n".into(),
                "3".into(),
                "--signs".into(),
                "search".into(),
            ],
            golden_file: "compare_two_point_n3.json",
        },
        GoldenCase {
            name: "llt-scan",
            args: vec![
                "llt-scan".into(),
                "--in".into(),
                fixture("skew.json"),
                "--ns".into(),
                "1,16,64".into(),
            ],
            golden_file: "llt_scan_skew.csv",
        },
        GoldenCase {
            name: "sweep",
            args: vec![
                "sweep".into(),
                "--seed".into(),
                "42".into(),
                "--count".into(),
                "10".into(),
            ],
            golden_file: "sweep_seed42_count10.json",
        },
    ]
}
