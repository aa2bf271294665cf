use std::fs;
use std::path::Path;
use std::process::Command;

use qentropy::cli::{run, EXIT_OK, EXIT_PROPERTY_FAILURE, EXIT_USAGE};
use qentropy::scan::{read_boundary, read_scan};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qentropy").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn result(stdout: &str) -> Value {
    serde_json::from_str::<Value>(stdout).unwrap()["result"].clone()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

// ln 2 at 12 significant digits, as printed.
#[allow(clippy::approx_constant)]
const LN2_PRINTED: f64 = 0.69314718056;

const MAXMIXED2: &str = r#"{"dim": 2, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}"#;
const BELL: &str = r#"{"dim": 4, "matrix": [
    [[0.5, 0], [0, 0], [0, 0], [0.5, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 0], [0, 0]],
    [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]]}"#;

#[test]
fn entropy_of_maximally_mixed_qubit() {
    let dir = tempfile::tempdir().unwrap();
    let state = write(dir.path(), "state_maxmixed2.json", MAXMIXED2);
    let (code, out, _) = call(&["entropy", "--family", "shannon", &state]);
    assert_eq!(code, EXIT_OK);
    let r = result(&out);
    assert_eq!(r["entropy"].as_f64().unwrap(), LN2_PRINTED);
    assert_eq!(r["spectrum"], serde_json::json!([0.5, 0.5]));

    let (_, out, _) = call(&["entropy", "--family", "renyi", "--alpha", "2", &state]);
    assert_eq!(result(&out)["family"], "renyi(alpha=2)");
}

#[test]
fn config_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let state = write(dir.path(), "s.json", MAXMIXED2);
    let (_, out, _) = call(&["entropy", "--family", "tsallis,alpha=2", &state]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["command"], "entropy");
    assert_eq!(doc["argv"][2], "--family");
    assert_eq!(
        doc["config"]["entropy"]["family"]["family"],
        "tsallis,alpha=2"
    );
    assert_eq!(doc["result"]["entropy"].as_f64().unwrap(), 0.5);
}

#[test]
fn entropy_of_probability_vector() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", "[0.5, 0.25, 0.25]");
    let (code, out, _) = call(&["entropy", "--family", "renyi,alpha=2", &p]);
    assert_eq!(code, EXIT_OK);
    let h = result(&out)["entropy"].as_f64().unwrap();
    assert!((h - (8f64 / 3.0).ln()).abs() < 1e-11);
}

#[test]
fn divergence_of_orthogonal_pure_states() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        r#"{"dim": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}"#,
    );
    let b = write(
        dir.path(),
        "b.json",
        r#"{"dim": 2, "matrix": [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]}"#,
    );
    let (code, out, _) = call(&["divergence", "--family", "shannon", &a, &b]);
    assert_eq!(code, EXIT_OK);
    let r = result(&out);
    assert_eq!(r["divergence"].as_f64().unwrap(), LN2_PRINTED);
    assert_eq!(r["concave_h"], true);
}

#[test]
fn majorize_incomparable_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.json", "[0.5, 0.5, 0]");
    let q = write(dir.path(), "q.json", "[0.6, 0.2, 0.2]");
    let (code, out, _) = call(&["majorize", &p, &q]);
    assert_eq!(code, EXIT_OK);
    let r = result(&out);
    assert_eq!(r["verdict"], "incomparable");
    assert!(r["opposite_ranking"].is_array());

    let u = write(dir.path(), "u.json", MAXMIXED2);
    let d = write(dir.path(), "d.json", "[0.9, 0.1]");
    let (_, out, _) = call(&["majorize", &u, &d]);
    assert_eq!(result(&out)["verdict"], "p_majorized_by_q");
}

#[test]
fn conditional_on_bell_state() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "bell.json", BELL);
    let (code, out, err) = call(&["conditional", "--family", "shannon", "--dims", "2,2", &s]);
    assert_eq!(code, EXIT_OK, "{err}");
    let r = result(&out);
    let ln2 = LN2_PRINTED;
    assert_eq!(r["conditional_i"].as_f64().unwrap(), -ln2);
    assert_eq!(r["mutual_i"].as_f64().unwrap(), 2.0 * ln2);
    assert!(r["conditional_j"].as_f64().unwrap().abs() < 1e-9);
    assert!((r["mutual_j"].as_f64().unwrap() - ln2).abs() < 1e-9);
}

#[test]
fn werner_scan_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan");
    let out_s = out.to_str().unwrap();
    let (code, _, err) = call(&[
        "werner-scan",
        "--family",
        "f_alpha,alpha=2",
        "--omega-steps",
        "1024",
        "--out",
        out_s,
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let boundary = fs::read_to_string(out.join("werner_boundary.csv")).unwrap();
    assert_eq!(boundary, "alpha,omega_star\n2,0.57735026919\n");
    let scan = fs::read(out.join("werner_scan.csv")).unwrap();
    let rows = read_scan(&scan[..]).unwrap();
    assert_eq!(rows.len(), 1024);
    assert_eq!((rows[0].omega, rows[1023].omega), (0.0, 1.0));
    // Z(2, 0) = ln(1/4) - ln(1/2).
    assert_eq!(rows[0].z, -LN2_PRINTED);

    // Byte-identical on rerun.
    let (code, _, _) = call(&[
        "werner-scan",
        "--family",
        "f_alpha,alpha=2",
        "--omega-steps",
        "1024",
        "--out",
        out_s,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(fs::read(out.join("werner_scan.csv")).unwrap(), scan);
}

#[test]
fn werner_scan_alpha_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _, err) = call(&[
        "werner-scan",
        "--alpha-min",
        "0.5",
        "--alpha-max",
        "200",
        "--alpha-steps",
        "9",
        "--omega-steps",
        "11",
        "--out",
        out,
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let rows =
        read_boundary(fs::File::open(dir.path().join("werner_boundary.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 9);
    let w: Vec<f64> = rows.iter().map(|r| r.omega_star.unwrap()).collect();
    assert!(w.windows(2).all(|p| p[1] <= p[0]));
    assert!(w.iter().all(|&x| x > 1.0 / 3.0));

    let (code, _, err) = call(&["werner-scan", "--alpha-min", "1", "--out", out]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--alpha-max"));
    let (code, _, _) = call(&["werner-scan", "--family", "renyi,alpha=2", "--out", out]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = call(&[
        "verify", "--suite", "prop7", "--trials", "200", "--seed", "7",
    ]);
    assert_eq!(code, EXIT_OK);
    let r = result(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["suites"][0]["status"], "PASS");

    // An impossible slack requirement makes every inequality check fail.
    let (code, out, _) = call(&["verify", "--suite", "prop4", "--trials", "3", "--tol=-1"]);
    assert_eq!(code, EXIT_PROPERTY_FAILURE);
    let r = result(&out);
    assert_eq!(r["suites"][0]["checks"][0]["status"], "FAIL");
    assert!(r["suites"][0]["checks"][0]["counterexample"].is_string());

    let (code, _, err) = call(&["verify", "--suite", "prop99"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("prop99"));
}

#[test]
fn verify_list() {
    let (code, out, _) = call(&["verify", "--list"]);
    assert_eq!(code, EXIT_OK);
    let suites = result(&out)["suites"].as_array().unwrap().clone();
    assert_eq!(suites.len(), 15);
    assert_eq!(suites[0]["name"], "prop1");
    assert!(suites
        .iter()
        .all(|s| s["description"].as_str().is_some_and(|d| !d.is_empty())));
}

#[test]
fn usage_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dim": 2, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], "x"]]}"#,
    );
    let (code, _, err) = call(&["entropy", &bad]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("matrix[1][1]"), "{err}");

    let good = write(dir.path(), "good.json", MAXMIXED2);
    let (code, _, err) = call(&["entropy", "--family", "renyi", &good]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("alpha"), "{err}");
    let (code, _, _) = call(&["conditional", "--dims", "3,3", &good]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["entropy", "missing.json"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn json_out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let state = write(dir.path(), "s.json", MAXMIXED2);
    let dest = dir.path().join("r.json");
    let (code, out, _) = call(&["entropy", &state, "--out", dest.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(fs::read_to_string(dest).unwrap(), out);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qentropy");
    let s = Command::new(bin)
        .args(["verify", "--suite", "prop13", "--trials", "20"])
        .output()
        .unwrap();
    assert_eq!(s.status.code(), Some(EXIT_OK));
    let s = Command::new(bin).args(["entropy"]).output().unwrap();
    assert_eq!(s.status.code(), Some(EXIT_USAGE));
    assert!(!s.stderr.is_empty());
}
