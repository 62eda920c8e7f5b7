use std::process::{Command, Output};

use qosp::io::matrix_from_json;
use qosp::matrices::NamedMatrix;
use qosp::GradedMatrix;

fn qosp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qosp"))
        .args(args)
        .env_remove("QOSP_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_passes() {
    let o = qosp(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("suite all\n"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_json_report_shape() {
    let o = qosp(&["verify", "--suite", "triangular", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "triangular");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for c in checks {
        assert!(c["name"].is_string());
        assert_eq!(c["pass"], true);
        assert!(c["residual_summary"].is_string());
    }
}

#[test]
fn verify_writes_json_alongside_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qosp(&[
        "verify",
        "--suite",
        "factorization",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS]"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["suite"], "factorization");
}

#[test]
fn tampered_fixture_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let src = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["kr", "transformed", "sjr", "fj", "fs"] {
        let mut text = std::fs::read_to_string(src.join(format!("{name}.json"))).unwrap();
        if name == "sjr" {
            text = text.replacen("\"1\"", "\"2\"", 1);
        }
        std::fs::write(dir.path().join(format!("{name}.json")), text).unwrap();
    }
    let o = Command::new(env!("CARGO_BIN_EXE_qosp"))
        .args(["verify", "--suite", "golden"])
        .env("QOSP_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("[FAIL] sjr matches fixture"), "{text}");
    assert_eq!(text.matches("[FAIL]").count(), 1);
}

#[test]
fn emit_sjr_at_xi_one() {
    let o = qosp(&[
        "emit", "--matrix", "sjr", "--format", "json", "--set", "xi=1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m = matrix_from_json(&stdout(&o)).unwrap();
    assert_eq!(m.get(0, 8).to_string(), "1/2");
}

#[test]
fn emit_kr_at_s_one_is_identity() {
    let o = qosp(&["emit", "--matrix", "kr", "--set", "s=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(matrix_from_json(&stdout(&o)).unwrap().is_identity());
}

#[test]
fn emitted_json_round_trips() {
    for m in NamedMatrix::ALL {
        let o = qosp(&["emit", "--matrix", m.name()]);
        assert_eq!(o.status.code(), Some(0), "{}", m.name());
        let parsed: GradedMatrix = matrix_from_json(&stdout(&o)).unwrap();
        assert_eq!(parsed, m.build().unwrap(), "{}", m.name());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["emit", "--matrix", "transformed", "--format", "latex"][..],
        &["verify", "--suite", "all", "--format", "json"][..],
        &["solve-phi", "--order", "2"][..],
    ] {
        assert_eq!(qosp(args).stdout, qosp(args).stdout, "{args:?}");
    }
}

#[test]
fn csv_and_latex_layouts() {
    let csv = stdout(&qosp(&["emit", "--matrix", "fs", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 9);
    assert_eq!(csv.lines().next().unwrap().split(',').count(), 9);
    let tex = stdout(&qosp(&["emit", "--matrix", "sjr", "--format", "latex"]));
    assert!(tex.contains("\\begin{array}{ccccccccc}"));
    assert!(tex.contains("\\frac{1}{2} \\xi^{2}"));
}

#[test]
fn emit_representation() {
    let o = qosp(&["emit", "--rep", "3/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 7);
    assert_eq!(v["spin"], "3/2");
}

#[test]
fn solve_phi_writes_exact_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    let o = qosp(&[
        "solve-phi",
        "--order",
        "2",
        "--pairs",
        "1:1/2,1:1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let coeffs = v["series"]["coefficients"].as_array().unwrap();
    let find = |m: u64, n: u64| {
        coeffs
            .iter()
            .find(|c| c["m"] == m && c["n"] == n)
            .map(|c| c["value"].as_str().unwrap().to_string())
    };
    assert_eq!(find(0, 1).as_deref(), Some("-1/2"));
    assert_eq!(find(1, 1).as_deref(), Some("1/6"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["emit", "--matrix", "kr", "--unknown"][..],
        &["emit", "--matrix", "kr", "--set", "xi=0.5"][..],
        &["verify", "--suite", "nothing"][..],
        &["verify", "--spins", "1/3"][..],
        &["solve-phi", "--pairs", "1-1"][..],
    ] {
        let o = qosp(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
