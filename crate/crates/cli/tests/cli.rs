//! End-to-end tests of the command-line surface: exit codes, pinned output,
//! byte-identical reruns, and schema conformance of the JSON reports.

use std::process::{Command, Output};

mod schema;

fn curvature(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvature"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn expand_weight_two_prints_twice_tau() {
    let out = curvature(&["expand", "--pfaffian", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2 R[a,b,b,a]\n");
}

#[test]
fn expand_weight_four() {
    let out = curvature(&["expand", "--pfaffian", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4 R[a,b,b,a] R[c,d,d,c]"), "{text}");
}

#[test]
fn expand_rejects_odd_weights_as_usage_error() {
    let out = curvature(&["expand", "--pfaffian", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = curvature(&["expand", "--t2", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = curvature(&["expand", "--wibble", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = curvature(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_confirms_the_dim_three_kernel_vector() {
    let out = curvature(&["verify", "--lemma", "1.2.2", "--trials", "100"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(
        text.contains("kernel vector (1, -4, 1) confirmed in dim 3"),
        "unexpected output: {text}"
    );
}

#[test]
fn verify_fails_above_the_critical_dimension() {
    let out = curvature(&["verify", "--lemma", "1.2.2", "--dim", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("does not hold in dim 4"), "{text}");
}

#[test]
fn verify_unknown_identity_is_usage_error() {
    let out = curvature(&["verify", "--lemma", "7.7.7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_surface_identity() {
    let out = curvature(&["verify", "--lemma", "1.4.1", "--trials", "30"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("kernel vector (1, -2) confirmed in dim 2"));
}

#[test]
fn json_output_is_byte_identical_across_reruns() {
    let args = ["verify", "--lemma", "1.2.2", "--trials", "60", "--seed", "7", "--json"];
    let a = curvature(&args);
    let b = curvature(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_reports_validate_against_the_schema() {
    let schema = schema::load_schema();
    let cases: Vec<Vec<&str>> = vec![
        vec!["expand", "--pfaffian", "4", "--json"],
        vec!["expand", "--t2", "2", "--json"],
        vec!["spanning-set", "--weight", "4", "--valence", "scalar", "--json"],
        vec!["verify", "--lemma", "1.4.1", "--trials", "30", "--json"],
        vec!["kernel", "--weight", "4", "--valence", "scalar", "--dim", "3", "--json"],
        vec!["gauss-bonnet", "--dim", "2", "--json"],
        vec![
            "variation", "--dim", "3", "--weight", "2", "--perturbations", "1", "--panels", "8",
            "--tolerance", "1e-5", "--json",
        ],
    ];
    for args in cases {
        let out = curvature(&args);
        assert!(
            out.status.code() == Some(0),
            "{:?} exited {:?}: {}",
            args,
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout)
            .unwrap_or_else(|e| panic!("{args:?} produced invalid JSON: {e}"));
        schema::validate(&schema, &doc).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        // Per-command result shape.
        let sub = doc["config"]["subcommand"].as_str().unwrap();
        let def = match sub {
            "expand" => "expand_result",
            "spanning-set" => "spanning_set_result",
            "verify" => "verify_result",
            "kernel" => "kernel_result",
            "gauss-bonnet" => "gauss_bonnet_result",
            "variation" => "variation_result",
            other => panic!("unknown subcommand {other}"),
        };
        schema::validate_against_definition(&schema, def, &doc["result"])
            .unwrap_or_else(|e| panic!("{args:?} result: {e}"));
    }
}

#[test]
fn gauss_bonnet_dim_two_constant() {
    let out = curvature(&["gauss-bonnet", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("c_2 = 1/8 * pi^-1"));
}

#[test]
fn gauss_bonnet_odd_dimension_is_usage_error() {
    let out = curvature(&["gauss-bonnet", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_of_the_quadratic_set_in_dim_three() {
    // The pruned enumerated basis may pick the crossed quadratic class as
    // its norm-type representative, so the exact vector depends on the
    // listed elements; the kernel dimension does not.
    let out = curvature(&["kernel", "--weight", "4", "--valence", "scalar", "--dim", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let report = &doc["result"]["report"];
    assert_eq!(report["basis"].as_array().unwrap().len(), 1);
    assert_eq!(report["elements"].as_array().unwrap().len(), 3);
}

#[test]
fn kernel_is_empty_in_dim_four() {
    let out = curvature(&["kernel", "--weight", "4", "--valence", "scalar", "--dim", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dimension 0"));
}

#[test]
fn spanning_set_weight_two_sym2() {
    let out = curvature(&["spanning-set", "--weight", "2", "--valence", "sym2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("2 elements"), "{text}");
}
