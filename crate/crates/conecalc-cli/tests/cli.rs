//! End-to-end tests of the conecalc binary: pinned outputs for the
//! documented examples, byte-identical determinism, and exit codes.

use std::process::{Command, Output};

fn conecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conecalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = conecalc(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn john_ball_example() {
    assert_eq!(
        stdout_of(&["john", "--n", "3", "--k", "1"]),
        "radius^2 = 1/5 (john-ball)\n"
    );
}

#[test]
fn certify_nonneg_example() {
    let out = stdout_of(&[
        "certify",
        "nonneg",
        "--n",
        "3",
        "--k",
        "1",
        "--form",
        "r2 - 10*(3*x3^2 - r2)/2",
    ]);
    assert_eq!(
        out,
        "verdict = ProvedNonMember\ndistance = 20\nthreshold = 2\nbasis = l2-outer-ball\n"
    );
}

#[test]
fn decompose_example() {
    let out = stdout_of(&["decompose", "--n", "3", "--form", "x3^2"]);
    assert_eq!(
        out,
        "level 2: -1/3*x1^2 - 1/3*x2^2 + 2/3*x3^2\nlevel 0: 1/3\n"
    );
}

#[test]
fn certify_powers_boundary_example() {
    let out = stdout_of(&["certify", "powers", "--n", "3", "--form", "3*x3^2"]);
    assert!(out.contains("verdict = Inconclusive"));
    assert!(out.contains("boundary = true"));
    assert!(out.contains("distance = 5"));
}

#[test]
fn volume_bound_examples() {
    assert_eq!(
        stdout_of(&["volume-bound", "--n", "3", "--k", "1", "--m", "10"]),
        "bound = 20/23\n"
    );
    assert_eq!(
        stdout_of(&["volume-bound", "--n", "3", "--k", "1", "--epsilon", "1/2"]),
        "m = 10\nbound = 20/23\n"
    );
}

#[test]
fn forms_can_come_from_files() {
    let dir = std::env::temp_dir().join("conecalc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("form.txt");
    std::fs::write(&path, "3*x3^2\n").unwrap();
    let out = stdout_of(&["integrate", "--n", "3", "--file", path.to_str().unwrap()]);
    assert_eq!(out, "integral = 1\n");
}

#[test]
fn json_output_is_available() {
    let out = stdout_of(&["john", "--n", "3", "--k", "1", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["radius^2"], "1/5");
    assert_eq!(value["basis"], "john-ball");
}

#[test]
fn suite_runs_small_and_deterministically() {
    let args = [
        "suite", "--n", "2", "--k", "1", "--trials", "3", "--seed", "7", "--json",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(a, b, "identical argv and seed must give identical bytes");
    let value: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(value["pass"], true);
    for record in value["results"].as_array().unwrap() {
        for key in ["claim", "paper_ref", "exact", "lhs", "rhs", "slack", "pass"] {
            assert!(record.get(key).is_some(), "missing key {key}");
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    // malformed form
    let out = conecalc(&["integrate", "--n", "3", "--form", "x1^2 + x2^3"]);
    assert_eq!(out.status.code(), Some(2));
    // missing required dimension
    let out = conecalc(&["john", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand (clap default)
    let out = conecalc(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_violations_exit_one() {
    // an impossible tolerance turns float-path slack into failures, which
    // exercises the nonzero exit and the witness reporting deterministically
    let out = conecalc(&["suite", "--n", "2", "--k", "1", "--trials", "2", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("suite: FAIL"));
    assert!(text.contains("witness"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["maxform", "--n", "3", "--k", "2"],
        vec!["dualpoint", "--n", "3", "--k", "2"],
        vec!["lf-ellipsoid", "--n", "3", "--k", "2"],
        vec!["legendre", "--n", "4", "--d", "4"],
    ] {
        let a = stdout_of(&args);
        let b = stdout_of(&args);
        assert_eq!(a, b, "nondeterministic output for {args:?}");
    }
}
