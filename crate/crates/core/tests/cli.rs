use std::path::{Path, PathBuf};
use std::process::Command;

use osserman::cli::{run_from, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};
use osserman::curvature::CONVENTION;
use osserman::io::comparable_report;
use serde_json::{json, Value};

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn constructor_file(sig: [usize; 2], name: &str, params: Value) -> Value {
    json!({
        "convention": CONVENTION, "dimension": sig[0] + sig[1], "field": "real", "signature": sig,
        "constructor": {"name": name, "parameters": params}
    })
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut full = vec!["osserman"];
    full.extend_from_slice(args);
    let code = run_from(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn report_json(path: &Path, extra: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut args = vec!["report", path.to_str().unwrap(), "--samples", "8", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, text) = run(&args);
    let body = std::fs::read_to_string(&out).unwrap_or_else(|_| panic!("no report written: {text}"));
    (code, serde_json::from_str(&body).unwrap())
}

#[test]
fn validate_constant_curvature_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cc.json", &constructor_file([2, 1], "constant-curvature", json!({"k": "-2"})));
    let (code, text) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{text}");
}

#[test]
fn validate_lists_perturbed_quadruple() {
    let dir = tempfile::tempdir().unwrap();
    // Constant curvature 1 on R^2: R_1221 = 1, R_1212 = -1 and their partners.
    let mut comps = vec![
        json!({"i": 1, "j": 2, "k": 2, "l": 1, "value": "1"}),
        json!({"i": 2, "j": 1, "k": 1, "l": 2, "value": "1"}),
        json!({"i": 1, "j": 2, "k": 1, "l": 2, "value": "-1"}),
        json!({"i": 2, "j": 1, "k": 2, "l": 1, "value": "-1"}),
    ];
    let good = json!({"convention": CONVENTION, "dimension": 2, "field": "real", "signature": [2, 0], "components": comps});
    let f = write(dir.path(), "good.json", &good);
    assert_eq!(run(&["validate", f.to_str().unwrap()]).0, EXIT_OK);
    comps[0] = json!({"i": 1, "j": 2, "k": 2, "l": 1, "value": "3/2"});
    let bad = json!({"convention": CONVENTION, "dimension": 2, "field": "real", "signature": [2, 0], "components": comps});
    let f = write(dir.path(), "bad.json", &bad);
    let (code, text) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_VIOLATION);
    assert!(text.contains("(1,2,2,1)"), "{text}");
}

#[test]
fn malformed_rational_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let v = json!({"convention": CONVENTION, "dimension": 2, "field": "real", "signature": [2, 0],
        "components": [{"i": 1, "j": 2, "k": 2, "l": 1, "value": "1/0"}]});
    let f = write(dir.path(), "zero.json", &v);
    let (code, text) = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(text.contains("components[0].value"), "{text}");
    std::fs::write(dir.path().join("broken.json"), "{ \"dimension\": ").unwrap();
    let (code, text) = run(&["validate", dir.path().join("broken.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(text.contains("line 1"), "{text}");
}

#[test]
fn report_space_form_all_hold() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cc.json", &constructor_file([2, 2], "constant-curvature", json!({"k": "1"})));
    let (code, r) = report_json(&f, &[]);
    assert_eq!(code, EXIT_OK);
    for key in ["osserman", "jordan_osserman", "semisimple", "duality"] {
        assert_eq!(r["report"][key]["verdict"], "holds-on-samples", "{key}");
    }
    assert_eq!(r["report"]["minimal_polynomial"]["vanishes"], true);
    assert_eq!(r["consistent"], true);
}

#[test]
fn report_random_riemannian_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "r.json", &constructor_file([3, 0], "random", json!({"seed": 11})));
    let (code, r) = report_json(&f, &[]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["report"]["semisimple"]["verdict"], "holds-on-samples");
    assert_eq!(r["report"]["osserman"]["verdict"], "violated");
    assert_eq!(r["report"]["duality"]["verdict"], "violated");
    assert_eq!(r["consistent"], true);
}

#[test]
fn report_nilpotent_examples() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "n22.json", &constructor_file([2, 2], "nilpotent", json!({})));
    let (code, r) = report_json(&f, &[]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["report"]["osserman"]["verdict"], "holds-on-samples");
    assert_eq!(r["report"]["semisimple"]["verdict"], "no-evidence");
    // No (1,1) example exists: the constructor reports that as an input error.
    let f = write(dir.path(), "n11.json", &constructor_file([1, 1], "nilpotent", json!({})));
    let (code, text) = run(&["report", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(text.contains("not constructible"), "{text}");
}

#[test]
fn report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "r.json", &constructor_file([2, 1], "random", json!({"seed": 5})));
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let (code, _) = run(&["report", f.to_str().unwrap(), "--samples", "8", "--seed", "9", "--domain", "float", "--out", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    let tb = std::fs::read_to_string(&b).unwrap();
    assert_eq!(comparable_report(&ta).unwrap(), comparable_report(&tb).unwrap());
    let v: Value = serde_json::from_str(&ta).unwrap();
    assert_eq!(v["report"]["parameters"]["seed"], 9);
    assert_eq!(v["report"]["parameters"]["domain"], "float");
}

fn scan(args: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.json");
    let mut full = vec!["scan"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let (code, text) = run(&full);
    let v = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (code, v, text)
}

#[test]
fn scan_finds_reverifiable_duality_violations() {
    let (code, v, text) = scan(&["--signature", "2,1", "--dim", "3", "--instances", "50", "--seed", "1", "--target", "duality-violation", "--samples", "8"]);
    assert_eq!(code, EXIT_OK, "{text}");
    let hits = v["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| h["reverified"] == true));
    assert!(text.contains(&format!("{} hits in 50 instances", hits.len())), "{text}");
    // Archived tensors rebuild from their constructor parameters.
    let t: osserman::io::TensorFile = serde_json::from_value(hits[0]["tensor"].clone()).unwrap();
    let x: Vec<String> = serde_json::from_value(hits[0]["witness"]["x"].clone()).unwrap();
    let x = osserman::space::Vector(x.iter().map(|s| osserman::linalg::parse_rational(s).unwrap()).collect());
    let check = osserman::checks::duality_check(&t.tensor().unwrap(), &x, 1e-9).unwrap();
    assert!(check.failures().next().is_some());
}

#[test]
fn scan_space_forms_have_no_osserman_violations() {
    let (code, v, _) = scan(&["--signature", "2,2", "--instances", "10", "--target", "osserman-violation", "--family", "space-form"]);
    assert_eq!(code, EXIT_OK);
    assert!(v["hits"].as_array().unwrap().is_empty());
}

#[test]
fn scan_nilpotent_jacobi() {
    let (_, v, _) = scan(&["--signature", "2,2", "--instances", "10", "--target", "nilpotent-jacobi", "--family", "isotropic"]);
    let hits = v["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| h["reverified"] == true && h["witness"]["minimal_polynomial"] == "t^2"));
    // In (1,1) the isotropic family collapses to the zero tensor.
    let (_, v, _) = scan(&["--signature", "1,1", "--instances", "10", "--target", "nilpotent-jacobi", "--family", "isotropic"]);
    assert!(v["hits"].as_array().unwrap().is_empty());
}

#[test]
fn scan_rejects_bad_dimensions() {
    assert_eq!(run(&["scan", "--signature", "2,1", "--dim", "4", "--target", "osserman-violation"]).0, EXIT_INPUT);
    assert_eq!(run(&["scan", "--signature", "5,4", "--target", "osserman-violation"]).0, EXIT_INPUT);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cc.json", &constructor_file([2, 0], "constant-curvature", json!({"k": "1/3"})));
    let bin = env!("CARGO_BIN_EXE_osserman");
    let ok = Command::new(bin).args(["validate", f.to_str().unwrap()]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let missing = Command::new(bin).args(["validate", dir.path().join("nope.json").to_str().unwrap()]).output().unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_INPUT));
    let help = Command::new(bin).args(["report", "--help"]).output().unwrap();
    let text = String::from_utf8_lossy(&help.stdout);
    assert!(text.contains("OSSERMAN_SEED") && text.contains("[default: 64]"), "{text}");
}
