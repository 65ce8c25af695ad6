//! End-to-end tests of the `vljet` binary: exit codes, canonical output,
//! and determinism.

use std::io::Write;
use std::process::{Command, Output};

fn vljet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vljet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn temp_json(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write temp file");
    f
}

const D10: &str = r#"{"algebra":"G","terms":[{"coeff":"1","index":[1,0]}]}"#;
const D01: &str = r#"{"algebra":"G","terms":[{"coeff":"1","index":[0,1]}]}"#;

#[test]
fn bracket_of_coordinate_derivations() {
    let out = vljet(&["bracket", "--algebra", "G", D10, D01]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"algebra":"G","terms":[{"coeff":"-1","index":[1,1]}]}"#
    );
}

#[test]
fn bracket_of_quadratic_generators() {
    let x = r#"{"algebra":"Bplus","terms":[{"coeff":"1","index":[0,2]}]}"#;
    let y = r#"{"algebra":"Bplus","terms":[{"coeff":"1","index":[2,0]}]}"#;
    let out = vljet(&["bracket", "--algebra", "Bplus", x, y]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"algebra":"Bplus","terms":[{"coeff":"4","index":[1,1]}]}"#
    );
}

#[test]
fn bracket_on_the_abelian_part_is_zero() {
    let x = r#"{"algebra":"A","terms":[{"coeff":"2","index":[3,-1]}]}"#;
    let y = r#"{"algebra":"A","terms":[{"coeff":"-5","index":[0,0]}]}"#;
    let out = vljet(&["bracket", "--algebra", "A", x, y]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"algebra":"A","terms":[]}"#);
}

#[test]
fn malformed_input_exits_two_without_panicking() {
    for bad in [
        "this is not json",
        r#"{"algebra":"G","terms":[{"coeff":"1","index":[0,0]}]}"#,
        r#"{"algebra":"Q","terms":[]}"#,
        r#"{"algebra":"G","terms":[{"coeff":"1/0","index":[1,0]}]}"#,
    ] {
        let out = vljet(&["bracket", "--algebra", "G", bad, D01]);
        assert_eq!(out.status.code(), Some(2), "input {bad:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
}

#[test]
fn mismatched_algebra_exits_two() {
    let l = r#"{"algebra":"L","terms":[{"coeff":"1","index":[1,0]}]}"#;
    let out = vljet(&["bracket", "--algebra", "G", l, D01]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jacobi_defect_is_zero_for_basis_triple() {
    let d11 = r#"{"algebra":"G","terms":[{"coeff":"1","index":[1,1]}]}"#;
    let out = vljet(&["jacobi-defect", "--algebra", "G", D10, D01, d11]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"algebra":"G","terms":[]}"#);
}

#[test]
fn ideal_test_accepts_quadratic_kernel_element() {
    let x = r#"{"algebra":"L","terms":[
        {"coeff":"1","index":[2,1]},{"coeff":"-2","index":[1,1]},
        {"coeff":"-2","index":[1,0]},{"coeff":"1","index":[0,1]}]}"#;
    let out = vljet(&["ideal-test", x, "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"member":true}"#);

    let basis = r#"{"algebra":"L","terms":[{"coeff":"1","index":[1,1]}]}"#;
    let out = vljet(&["ideal-test", basis, "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"member":false}"#);
}

#[test]
fn mkmodule_output_reparses_to_the_same_spec() {
    let out = vljet(&["mkmodule", "F", "--alpha", "1/2,0", "--lambda", "1", "--n", "1"]);
    assert!(out.status.success());
    let spec = stdout(&out);
    let f = temp_json(&spec);
    // feeding the emitted spec back through a computational command works
    // and the canonical form is stable
    let again = vljet(&["mkmodule", "F", "--alpha", "1/2,0", "--lambda", "1", "--n", "1"]);
    assert_eq!(stdout(&again), spec);
    let ex = vljet(&["extract-l", f.path().to_str().unwrap(), "1,1"]);
    assert!(ex.status.success());
    assert_eq!(stdout(&ex).trim(), r#"[["3/2","-1"],["1","-1/2"]]"#);
}

#[test]
fn act_moves_the_grade_zero_basis_vector() {
    let spec = vljet(&["mkmodule", "F", "--alpha", "0,0", "--lambda", "1", "--n", "1"]);
    let f = temp_json(&stdout(&spec));
    let d11 = r#"{"algebra":"G","terms":[{"coeff":"1","index":[1,1]}]}"#;
    let v = r#"{"dim":2,"support":[{"grade":[0,0],"vec":["1","0"]}]}"#;
    let out = vljet(&["act", f.path().to_str().unwrap(), d11, v]);
    assert!(out.status.success());
    // the grade matrix at alpha = 0 is [[1,-1],[1,-1]]
    assert_eq!(
        stdout(&out).trim(),
        r#"{"dim":2,"support":[{"grade":[1,1],"vec":["1","1"]}]}"#
    );
}

#[test]
fn classify_detects_integer_weight_shifts() {
    let a = vljet(&["mkmodule", "F", "--alpha", "1/2,0", "--lambda", "1", "--n", "1"]);
    let b = vljet(&["mkmodule", "F", "--alpha", "3/2,-2", "--lambda", "1", "--n", "1"]);
    let c = vljet(&["mkmodule", "F", "--alpha", "1/2,0", "--lambda", "2", "--n", "1"]);
    let (fa, fb, fc) = (temp_json(&stdout(&a)), temp_json(&stdout(&b)), temp_json(&stdout(&c)));
    let out = vljet(&["classify", fa.path().to_str().unwrap(), fb.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"isomorphic":true}"#);
    let out = vljet(&["classify", fa.path().to_str().unwrap(), fc.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"isomorphic":false}"#);
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    for suite in ["jacobi", "sl2-quotient"] {
        let a = vljet(&["verify", suite, "--seed", "7", "--trials", "8"]);
        assert!(a.status.success(), "suite {suite}");
        let b = vljet(&["verify", suite, "--seed", "7", "--trials", "8"]);
        assert_eq!(a.stdout, b.stdout, "suite {suite} must be deterministic");
    }
}

#[test]
fn verify_jet_fails_on_relation_violating_generators() {
    let bad = temp_json(
        r#"{"kind":"B","lambda":"1","rep":{"dim":2,"gens":{
            "1,1":[["1","0"],["0","1"]],"2,0":[["1","0"],["0","1"]]}}}"#,
    );
    let out = vljet(&["verify", "jet", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // the failing axiom is named on its report line
    let report = stdout(&out);
    let failing: Vec<&str> = report.lines().filter(|l| l.contains("\"pass\":false")).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|l| l.contains("bracket of d operators")));
}

#[test]
fn fit_emits_the_coefficient_family() {
    let spec = vljet(&["mkmodule", "F", "--alpha", "0,0", "--lambda", "1", "--n", "2"]);
    let f = temp_json(&stdout(&spec));
    let out = vljet(&["fit", f.path().to_str().unwrap(), "--cap", "4"]);
    assert!(out.status.success());
    let family: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // alpha = 0 kills the linear terms, leaving the three quadratic blocks
    let coeffs = family["coeffs"].as_object().unwrap();
    assert_eq!(coeffs.len(), 3);
    assert!(coeffs.contains_key("2,0") && coeffs.contains_key("1,1") && coeffs.contains_key("0,2"));
}

#[test]
fn diff_prints_the_alternating_combination() {
    let out = vljet(&["diff", "--s", "0", "--l", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"algebra":"L","terms":[{"coeff":"1","index":[0,1]},{"coeff":"-2","index":[1,1]},{"coeff":"1","index":[2,1]}]}"#
    );
}
