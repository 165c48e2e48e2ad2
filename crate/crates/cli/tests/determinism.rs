//! Criterion 9: two runs of every CLI command on the shipped corpus must
//! produce byte-identical reports, with the documented exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/examples")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracefield"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_9_byte_identical_reports() {
    let corpus: Vec<(Vec<&str>, i32)> = vec![
        (vec!["classify", &fixture_static("classify_vertical.json")], 0),
        (vec!["classify", &fixture_static("classify_screw_float.json")], 0),
        (
            vec![
                "trace-field",
                &fixture_static("group_qi.json"),
                "--depth",
                "3",
            ],
            0,
        ),
        (
            vec![
                "trace-field",
                &fixture_static("group_float.json"),
                "--depth",
                "2",
            ],
            0,
        ),
        (
            vec![
                "cube-trace-field",
                &fixture_static("group_qi.json"),
                "--depth",
                "3",
            ],
            0,
        ),
        (
            vec![
                "density-check",
                &fixture_static("group_qi.json"),
                "--depth",
                "3",
            ],
            0,
        ),
        (
            vec![
                "density-check",
                &fixture_static("group_remark.json"),
                "--depth",
                "5",
            ],
            0,
        ),
        (
            vec![
                "rationalize",
                &fixture_static("group_qi.json"),
                "--depth",
                "3",
                "--verbose",
            ],
            0,
        ),
        (
            vec![
                "rationalize",
                &fixture_static("group_remark.json"),
                "--depth",
                "4",
            ],
            2,
        ),
        (vec!["tetra-invariants", &fixture_static("complex_exact.json")], 0),
        (vec!["tetra-invariants", &fixture_static("complex_float.json")], 0),
        (vec!["tetra-reconstruct", &fixture_static("complex_exact.json")], 0),
        (vec!["tetra-reconstruct", &fixture_static("complex_float.json")], 0),
        (
            vec![
                "tetra-field",
                &fixture_static("complex_exact.json"),
                "--normalized",
            ],
            0,
        ),
        (vec!["arith-check", &fixture_static("pair_sqrt15.json")], 0),
        (vec!["arith-check", &fixture_static("pair_sqrt2.json")], 0),
        (
            vec![
                "arith-dichotomy",
                &fixture_static("dichotomy_qi.json"),
                "--depth",
                "3",
                "--bound-powers",
                "10",
            ],
            0,
        ),
        (
            vec![
                "arith-dichotomy",
                &fixture_static("dichotomy_violation.json"),
                "--depth",
                "2",
                "--allow-nonintegral",
            ],
            0,
        ),
        (
            vec![
                "compose-field",
                &fixture_static("quad15.json"),
                &fixture_static("gaussian.json"),
            ],
            0,
        ),
    ];

    for (args, expected_code) in &corpus {
        let first = run(args);
        let second = run(args);
        assert_eq!(
            first.status.code(),
            Some(*expected_code),
            "exit code for {args:?}: stderr: {}",
            String::from_utf8_lossy(&first.stderr)
        );
        assert_eq!(
            second.status.code(),
            Some(*expected_code),
            "second run exit code changed for {args:?}"
        );
        assert_eq!(
            first.stdout, second.stdout,
            "report bytes differ between runs for {args:?}"
        );
        assert!(!first.stdout.is_empty(), "empty report for {args:?}");
    }
    println!(
        "ACCEPTANCE 9: PASS ({} command invocations, each byte-identical across two runs)",
        corpus.len()
    );
}

// fixture paths need 'static lifetimes inside the vec literals
fn fixture_static(name: &str) -> &'static str {
    Box::leak(fixture(name).into_boxed_str())
}

#[test]
fn exact_reports_contain_no_floats() {
    // every numeric leaf in an exact-mode report must be a rational string
    // (the only JSON numbers allowed are integers in counts/dims)
    for (args, _) in [
        (vec!["trace-field", fixture_static("group_qi.json"), "--depth", "3"], 0),
        (vec!["rationalize", fixture_static("group_qi.json"), "--depth", "3"], 0),
        (vec!["tetra-invariants", fixture_static("complex_exact.json")], 0),
    ] {
        let out = run(&args);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(no_float_leaves(&v), "float leaked into exact report {args:?}");
    }
}

fn no_float_leaves(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_i64() || n.is_u64(),
        serde_json::Value::Array(a) => a.iter().all(no_float_leaves),
        serde_json::Value::Object(o) => o.values().all(no_float_leaves),
        _ => true,
    }
}
