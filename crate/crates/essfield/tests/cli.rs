//! End-to-end tests of the command-line surface: documents in, JSON
//! reports out, stable exit codes.

use std::path::{Path, PathBuf};

use essfield::cli;

fn run(args: &[&str]) -> (i32, serde_json::Value) {
    let mut out: Vec<u8> = Vec::new();
    let argv = std::iter::once("essfield").chain(args.iter().copied());
    let code = cli::run(argv, &mut out);
    let text = String::from_utf8(out).unwrap();
    let value = if text.trim().is_empty() {
        serde_json::Value::Null
    } else {
        serde_json::from_str(&text).unwrap_or(serde_json::Value::Null)
    };
    (code, value)
}

fn write_doc(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const Z3_FIELD: &str = r#"{
    "lambda": [-0.3333333333333333, 0],
    "Q": {"coeffs": [[1, 0]]},
    "P": {"roots": [[[0, 0], 2]]},
    "E": {"roots": [[[0, 0], 3]]}
}"#;

const EXP_FIELD: &str = r#"{
    "lambda": [1, 0],
    "Q": {"coeffs": [[1, 0]]},
    "P": {"coeffs": [[1, 0]]},
    "E": {"coeffs": [[1, 0], [0, 0]]}
}"#;

#[test]
fn analyze_reports_cyclic_isotropy() {
    let dir = tempfile::tempdir().unwrap();
    let field = write_doc(dir.path(), "z3.json", Z3_FIELD);
    let (code, report) = run(&["analyze", field.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["signature"], serde_json::json!([0, 2, 3]));
    assert_eq!(report["isotropy"]["kind"], "cyclic");
    assert_eq!(report["isotropy"]["order"], 3);
    assert_eq!(report["family"]["moduli_dimension"], 4);
    assert_eq!(report["family"]["all_trivial"], false);
}

#[test]
fn equivalent_finds_witness_for_pullback() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_doc(dir.path(), "a.json", EXP_FIELD);
    // (1/2)·e^{2w} ∂/∂w is e^z ∂/∂z pulled back by T(w) = 2w.
    let b = write_doc(
        dir.path(),
        "b.json",
        r#"{
            "lambda": [0.5, 0],
            "Q": {"coeffs": [[1, 0]]},
            "P": {"coeffs": [[1, 0]]},
            "E": {"coeffs": [[2, 0], [0, 0]]}
        }"#,
    );
    let (code, report) = run(&["equivalent", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["equivalent"], true);
    let witness_a = report["witness"]["a"].as_array().unwrap();
    assert!((witness_a[0].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(witness_a[1].as_f64().unwrap().abs() < 1e-9);

    // Mismatched signatures are inequivalent, still exit 0.
    let c = write_doc(dir.path(), "c.json", Z3_FIELD);
    let (code, report) = run(&["equivalent", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["equivalent"], false);
}

#[test]
fn realize_then_quotient_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_doc(
        dir.path(),
        "spec.json",
        r#"{
            "k": 3,
            "center": [0, 0],
            "center_kind": {"pole": 2},
            "exp_center_multiplicity": 3,
            "lambda": [-0.3333333333333333, 0]
        }"#,
    );
    let (code, report) = run(&["realize", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["signature"], serde_json::json!([0, 2, 3]));

    // Feed the realized field back through `quotient`.
    let field_doc = serde_json::to_string(&report["field"]).unwrap();
    let realized = write_doc(dir.path(), "realized.json", &field_doc);
    let (code, report) = run(&["quotient", realized.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["k"], 3);
    assert_eq!(report["signature"], serde_json::json!([0, 0, 1]));
    let lambda = report["field"]["lambda"].as_array().unwrap();
    assert!((lambda[0].as_f64().unwrap() + 1.0).abs() < 1e-9);
}

#[test]
fn high_degree_realize_analyze_chain() {
    // (z⁵−1)⁷/z⁴ · e^{z³⁰}: degree (35, 4, 30) with heavy multiplicities.
    // The root views survive the document round trip, so the detector still
    // sees the exact divisor.
    let dir = tempfile::tempdir().unwrap();
    let spec = write_doc(
        dir.path(),
        "spec.json",
        r#"{
            "k": 5,
            "center": [0, 0],
            "center_kind": {"pole": 4},
            "zero_orbits": [[1.0, 0.0, 7]],
            "exp_center_multiplicity": 30,
            "lambda": [1, 0]
        }"#,
    );
    let (code, report) = run(&["realize", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["signature"], serde_json::json!([35, 4, 30]));

    let field_doc = serde_json::to_string(&report["field"]).unwrap();
    let realized = write_doc(dir.path(), "realized.json", &field_doc);
    let (code, report) = run(&["analyze", realized.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["isotropy"]["kind"], "cyclic");
    assert_eq!(report["isotropy"]["order"], 5);
    assert_eq!(report["family"]["admissible_orders"], serde_json::json!([2, 5]));
    assert_eq!(report["family"]["moduli_dimension"], 68);
}

#[test]
fn normalize_reports_gauge_and_theta() {
    let dir = tempfile::tempdir().unwrap();
    let field = write_doc(dir.path(), "z3.json", Z3_FIELD);
    let (code, report) = run(&["normalize", field.to_str().unwrap(), "--metric"]);
    assert_eq!(code, 0);
    assert_eq!(report["gauge_kind"], "exp");
    let theta = report["theta"].as_f64().unwrap();
    assert!((theta - std::f64::consts::PI).abs() < 1e-9);
    let lambda = report["field"]["lambda"].as_array().unwrap();
    assert!((lambda[0].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn residues_psi_and_length() {
    let dir = tempfile::tempdir().unwrap();
    let field = write_doc(dir.path(), "exp.json", EXP_FIELD);
    let (code, report) = run(&["residues", field.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["single_valued"], true);

    let (code, report) = run(&[
        "psi",
        field.to_str().unwrap(),
        "--path",
        "0,0 1,0",
    ]);
    assert_eq!(code, 0);
    let value = report["value"].as_array().unwrap();
    let expected = 1.0 - (-1.0f64).exp();
    assert!((value[0].as_f64().unwrap() - expected).abs() < 1e-10);
    assert!(value[1].as_f64().unwrap().abs() < 1e-10);

    let (code, report) = run(&[
        "length",
        field.to_str().unwrap(),
        "--path",
        "0,0 1,0",
    ]);
    assert_eq!(code, 0);
    assert!((report["length"].as_f64().unwrap() - expected).abs() < 1e-10);
}

#[test]
fn portrait_writes_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let field = write_doc(dir.path(), "z3.json", Z3_FIELD);
    let out1 = dir.path().join("a.svg");
    let out2 = dir.path().join("b.svg");
    for out in [&out1, &out2] {
        let (code, _) = run(&[
            "portrait",
            field.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--grid",
            "5x5",
            "--size",
            "240x240",
        ]);
        assert_eq!(code, 0);
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "portrait output is not byte-stable");
}

#[test]
fn portrait_renders_png() {
    let dir = tempfile::tempdir().unwrap();
    let field = write_doc(dir.path(), "z3.json", Z3_FIELD);
    let out = dir.path().join("z3.png");
    let (code, _) = run(&[
        "portrait",
        field.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--grid",
        "4x4",
        "--size",
        "120x120",
    ]);
    assert_eq!(code, 0);
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(&bytes[1..4], b"PNG");
}

#[test]
fn domain_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // Q and P share the root 0.
    let bad = write_doc(
        dir.path(),
        "bad.json",
        r#"{
            "lambda": [1, 0],
            "Q": {"roots": [[0, 0]]},
            "P": {"roots": [[0, 0]]}
        }"#,
    );
    let (code, _) = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, 1);

    // Trivial isotropy has no quotient.
    let trivial = write_doc(
        dir.path(),
        "trivial.json",
        r#"{
            "lambda": [1, 0],
            "Q": {"coeffs": [[1, 0]]},
            "P": {"roots": [[0.3, 0.1], [1.1, -0.4], [-0.5, 0.9]]},
            "E": {"roots": [[[0, 0], 3]]}
        }"#,
    );
    let (code, _) = run(&["quotient", trivial.to_str().unwrap()]);
    assert_eq!(code, 1);

    let (code, _) = run(&["analyze", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["analyze"]);
    assert_eq!(code, 2);
}

#[test]
fn essfield_tol_loosens_symmetry_detection() {
    // A slightly perturbed Z₂ pole configuration (1/(z(z²−1)) with one pole
    // nudged): asymmetric at the default tolerance, symmetric when
    // ESSFIELD_TOL is loosened. The variable is process-global, so this
    // test drives the real binary.
    let dir = tempfile::tempdir().unwrap();
    let field = write_doc(
        dir.path(),
        "near.json",
        r#"{
            "lambda": [1, 0],
            "Q": {"coeffs": [[1, 0]]},
            "P": {"roots": [[0, 0], [1.00001, 0], [-1, 0]]}
        }"#,
    );
    let bin = env!("CARGO_BIN_EXE_essfield");
    let strict = std::process::Command::new(bin)
        .args(["analyze", field.to_str().unwrap()])
        .env_remove("ESSFIELD_TOL")
        .output()
        .unwrap();
    assert!(strict.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&strict.stdout).expect("json report");
    assert_eq!(report["isotropy"]["kind"], "trivial");

    let loose = std::process::Command::new(bin)
        .args(["analyze", field.to_str().unwrap()])
        .env("ESSFIELD_TOL", "1e-3")
        .output()
        .unwrap();
    assert!(loose.status.success());
    let report: serde_json::Value = serde_json::from_slice(&loose.stdout).expect("json report");
    assert_eq!(report["isotropy"]["kind"], "cyclic");
    assert_eq!(report["isotropy"]["order"], 2);
}
