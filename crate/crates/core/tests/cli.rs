use std::path::Path;
use std::process::{Command, Output};

use widom_core::cli::document::{SequenceDocument, SolutionDocument};

fn widom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_widom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_first_kind_degree_two() {
    let o = widom(&["solve", "--rho-a", "0", "--rho-b", "0", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SolutionDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((doc.norm - 0.5).abs() < 1e-12);
    assert!((doc.widom - 2.0).abs() < 1e-12);
    assert_eq!(doc.coefficients.len(), 3);
    assert!((doc.coefficients[0] + 0.5).abs() < 1e-12);
}

#[test]
fn solve_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.json");
    let o = widom(&["solve", "--rho-a", "0.75", "--rho-b", "1.25", "--degree", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SolutionDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.degree, 6);
    assert_eq!(doc.roots.len(), 6);
    assert_eq!(doc.reference.len(), 7);
    let again = doc.reevaluate_norm().unwrap();
    assert!((again - doc.norm).abs() <= 1e-12 * doc.norm);
}

#[test]
fn solve_text_format() {
    let o = widom(&["solve", "--rho-a", "1", "--rho-b", "1", "--degree", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let line = s.lines().find(|l| l.starts_with("widom")).unwrap();
    let v: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((v - 4.0 / (3.0 * 3f64.sqrt())).abs() < 1e-12);
}

#[test]
fn widom_classifications() {
    for (a, b, label) in [("0.25", "0.25", "Increasing"), ("1", "1", "Decreasing"), ("0.5", "0.5", "Constant")] {
        let o = widom(&["widom", "--rho-a", a, "--rho-b", b, "--n-max", "8"]);
        assert_eq!(o.status.code(), Some(0));
        let doc: SequenceDocument = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(doc.values.len(), 8);
        assert_eq!(doc.classification, label, "({a}, {b})");
    }
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn small_scan_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let svg = dir.path().join("scan.svg");
    let o = widom(&[
        "scan",
        "--resolution",
        "2",
        "--range",
        "0:0.5",
        "--n-max",
        "3",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = read(&csv);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "rho_a,rho_b,classification,w1,w2,w3");
    assert_eq!(lines.len(), 5);
    // Every grid point of {0, 1/2}² is a classical case with constant W_n.
    for row in &lines[1..] {
        assert_eq!(row.split(',').nth(2), Some("Constant"), "{row}");
    }
    let picture = read(&svg);
    assert!(picture.starts_with("<?xml"));
    assert!(picture.trim_end().ends_with("</svg>"));
    assert!(picture.matches("<rect x=").count() >= 4);
}

#[test]
fn verify_suites() {
    for args in [
        &["verify", "coeffs"][..],
        &["verify", "bounds", "--n-max", "200"],
        &["verify", "circle", "--format", "json"],
        &["verify", "jacobi"],
    ] {
        let o = widom(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn verify_bounds_reports_limit_gap() {
    // M_1000 sits about 1.8e-4 below its limit at (-1/8, -1/8).
    let o = widom(&["verify", "bounds"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn oracle_matches_classical() {
    let o = widom(&["oracle", "--rho-a", "0", "--rho-b", "0", "--degree", "2", "--restarts", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let norm = v["norm"].as_f64().unwrap();
    assert!((norm - 0.5).abs() < 1e-6);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(widom(&[]).status.code(), Some(1));
    assert_eq!(widom(&["solve", "--rho-a", "0"]).status.code(), Some(1));
    assert_eq!(widom(&["solve", "--rho-a", "-1", "--rho-b", "0", "--degree", "2"]).status.code(), Some(1));
    assert_eq!(widom(&["scan", "--range", "bad", "--out", "x.csv"]).status.code(), Some(1));
    assert_eq!(widom(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn unwritable_output_exits_one() {
    let o = widom(&["scan", "--resolution", "2", "--n-max", "2", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(o.status.code(), Some(1));
    let o = widom(&["solve", "--rho-a", "1", "--rho-b", "1", "--degree", "2", "--out", "/nonexistent/dir/x.json"]);
    assert_eq!(o.status.code(), Some(1));
}
