//! The `natchain` binary: exit codes, report files and determinism.

use std::path::Path;
use std::process::{Command, Output};

use natchain_core::io::from_json_str;
use natchain_core::report::{ExperimentReport, ReportVerdict};

const SQUARE: &str = r#"{
  "n": 2,
  "m": 2,
  "terms": [
    {"coef": 1, "vertices": [[0, 0], [1, 0], [1, 1]]},
    {"coef": 1, "vertices": [[0, 0], [1, 1], [0, 1]]}
  ]
}
"#;

const X_DY: &str = r#"{"degree": 1, "ambient": 2, "components": {"2": [{"coef": 1, "powers": [1, 0]}]}}"#;

fn natchain(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_natchain"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Path, name: &str) -> ExperimentReport {
    from_json_str(&std::fs::read_to_string(out.join(format!("{name}.json"))).unwrap()).unwrap()
}

#[test]
fn stokes_on_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let (chain, form) = (dir.path().join("square.json"), dir.path().join("xdy.json"));
    std::fs::write(&chain, SQUARE).unwrap();
    std::fs::write(&form, X_DY).unwrap();
    let out = dir.path().join("out");
    let o = natchain(&out, &["stokes", "--chain", chain.to_str().unwrap(), "--form", form.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out, "stokes");
    assert_eq!(r.verdict, ReportVerdict::Pass);
    assert_eq!(r.summary["residual"].as_f64(), Some(0.0));

    let o = natchain(&out, &["integrate", "--chain", chain.to_str().unwrap(), "--form", form.to_str().unwrap()]);
    // a 1-form against a 2-chain
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn replica_bound_at_level_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = natchain(dir.path(), &["harrison-bound", "--level", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(dir.path(), "harrison-bound");
    assert!(r.summary.contains_key("box_dimension"));
    assert!(r.rows.iter().all(|row| row[6].as_f64().unwrap() < 36.0));
    assert!(dir.path().join("harrison-bound.csv").exists());
}

#[test]
fn spiral_divergence_is_the_expected_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let o = natchain(dir.path(), &["spiral-divergence", "--levels", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(dir.path(), "spiral-divergence");
    assert_eq!(r.verdict, ReportVerdict::Diverged);
    assert_eq!(r.expected, ReportVerdict::Diverged);
}

#[test]
fn failing_verdict_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    // 5 Koch levels cannot reach a final delta of 1e-4
    let o = natchain(dir.path(), &["koch-convergence", "--levels", "5", "--ratio-levels", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(report(dir.path(), "koch-convergence").verdict, ReportVerdict::Fail);
}

#[test]
fn malformed_input_exits_with_one_and_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"n\": 1,\n  \"m\": 2,\n  \"terms\": [ {\"coef\": 1, \"vertices\": [[0, 0], [1, 0]] }\n  ,\n}\n").unwrap();
    let o = natchain(dir.path(), &["integrate", "--chain", bad.to_str().unwrap(), "--form", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 6"), "{err}");

    let o = natchain(dir.path(), &["stokes", "--chain", "/nonexistent/chain.json", "--form", "x.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = natchain(dir.path(), &["stokes", "--unknown-flag"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = natchain(d.path(), &["--seed", "5", "lebesgue", "--random", "20"]);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["lebesgue.json", "lebesgue.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
    }
    let r = report(a.path(), "lebesgue");
    let again: ExperimentReport = from_json_str(&r.to_json().unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn flatnorm_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let o = natchain(dir.path(), &["flatnorm", "--polygon", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(dir.path(), "flatnorm");
    assert_eq!(r.parameters["triangles"].as_u64(), Some(256));
}
