use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tailspan(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tailspan"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_line(out: &Output) -> Value {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let lines: Vec<&str> = stderr.lines().collect();
    assert_eq!(lines.len(), 1, "{stderr}");
    serde_json::from_str(lines[0]).unwrap()
}

#[test]
fn synthetic_character_is_strong_regime_with_unit_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let spec = stdout_json(&tailspan(
        &[
            "synth",
            "--kind",
            "character",
            "--n",
            "64",
            "--out",
            "c.csv",
        ],
        dir.path(),
    ));
    assert_eq!(spec["kind"], "character");
    assert_eq!(spec["n"], 64);
    let csv = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("index,value,imag"));
    assert_eq!(csv.lines().count(), 65);

    let report = stdout_json(&tailspan(
        &["analyze", "--input", "c.csv", "--column", "value", "--json"],
        dir.path(),
    ));
    assert!((report["fr"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(report["strong_regime"], true);
    assert_eq!(report["dataset"], "c:value");

    let text = tailspan(
        &["analyze", "--input", "c.csv", "--column", "value"],
        dir.path(),
    );
    assert!(String::from_utf8_lossy(&text.stdout).contains("regime           strong"));
}

#[test]
fn sweep_writes_reports_and_figures() {
    let dir = tempfile::tempdir().unwrap();
    tailspan(
        &[
            "synth", "--kind", "mixture", "--base", "sparse", "--n", "200", "--seed", "3",
            "--real", "--out", "m.csv",
        ],
        dir.path(),
    );
    let out = tailspan(
        &[
            "sweep",
            "--input",
            "m.csv",
            "--column",
            "value",
            "--eta-range",
            "1.0:1.4:0.2",
            "--out",
            "o",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let md = String::from_utf8_lossy(&out.stdout);
    assert!(md.contains("| eta |"));

    let o = dir.path().join("o");
    for name in [
        "report.json",
        "report.md",
        "series.svg",
        "series.csv",
        "gamma.svg",
        "gamma_points.csv",
    ] {
        assert!(o.join(name).is_file(), "{name}");
    }
    let report: Value =
        serde_json::from_str(&fs::read_to_string(o.join("report.json")).unwrap()).unwrap();
    let rows = report["rows"].as_array().unwrap();
    let etas: Vec<f64> = rows.iter().map(|r| r["eta"].as_f64().unwrap()).collect();
    assert_eq!(etas, vec![1.0, 1.2, 1.4]);
    for row in rows {
        for key in [
            "eta",
            "gamma_size",
            "lambda_size",
            "spanned",
            "bound_simple_over_c",
            "bound_general_over_cprime",
            "lambda",
            "gamma",
        ] {
            assert!(row.get(key).is_some(), "{key}");
        }
        assert_eq!(row["spanned"], true);
        assert_eq!(
            row["gamma"].as_array().unwrap().len() as u64,
            row["gamma_size"].as_u64().unwrap()
        );
    }
    let points = fs::read_to_string(o.join("gamma_points.csv")).unwrap();
    let dots: u64 = rows.iter().map(|r| r["gamma_size"].as_u64().unwrap()).sum();
    assert_eq!(points.lines().count() as u64, dots + 1);
}

#[test]
fn span_prints_checkable_certificates() {
    let dir = tempfile::tempdir().unwrap();
    tailspan(
        &[
            "synth", "--kind", "noise", "--n", "48", "--seed", "11", "--real", "--out", "n.csv",
        ],
        dir.path(),
    );
    let r = stdout_json(&tailspan(
        &[
            "span", "--input", "n.csv", "--column", "value", "--eta", "1.2", "--json",
        ],
        dir.path(),
    ));
    assert_eq!(r["spanned"], true);
    assert_eq!(r["verified"], true);
    let n = r["n"].as_i64().unwrap();
    let lambda: Vec<i64> = r["lambda"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    for cert in r["certificates"].as_array().unwrap() {
        let sum: i64 = cert["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .zip(&lambda)
            .map(|(c, l)| c.as_i64().unwrap() * l)
            .sum();
        assert_eq!(sum.rem_euclid(n), cert["gamma"].as_i64().unwrap());
    }
}

#[test]
fn oracle_reports_both_sets() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("s.csv"),
        "v\n5\n0.1\n4\n0.2\n0.1\n6\n0.3\n0.1\n0.2\n4.5\n",
    )
    .unwrap();
    let r = stdout_json(&tailspan(
        &["oracle", "--input", "s.csv", "--eta", "1.0"],
        dir.path(),
    ));
    let greedy = r["greedy_lambda"].as_array().unwrap().len();
    let minimal = r["minimal_lambda"].as_array().unwrap().len();
    assert!(minimal <= greedy);
    assert_eq!(r["gamma_size"], 4);

    let over = tailspan(
        &[
            "oracle",
            "--input",
            "s.csv",
            "--eta",
            "1.0",
            "--max-gamma",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(over.status.code(), Some(1));
    assert_eq!(error_line(&over)["error"], "oracle_budget_exceeded");
}

#[test]
fn failures_are_single_json_lines_with_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = tailspan(&["analyze", "--input", "absent.csv"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(error_line(&missing)["error"], "ingest");

    let usage = tailspan(&["sweep", "--input", "absent.csv"], dir.path());
    assert_eq!(usage.status.code(), Some(2));
    assert_eq!(error_line(&usage)["error"], "usage");

    fs::write(dir.path().join("z.csv"), "v\n0\n0\n0\n").unwrap();
    let zero = tailspan(&["analyze", "--input", "z.csv"], dir.path());
    assert_eq!(zero.status.code(), Some(1));
    assert_eq!(error_line(&zero)["error"], "zero_signal");

    fs::write(dir.path().join("gap.csv"), "v\n1\nNA\n3\n").unwrap();
    let gap = tailspan(&["analyze", "--input", "gap.csv"], dir.path());
    assert_eq!(gap.status.code(), Some(1));
    let filled = tailspan(
        &[
            "analyze",
            "--input",
            "gap.csv",
            "--interpolate-missing",
            "--json",
        ],
        dir.path(),
    );
    assert_eq!(stdout_json(&filled)["n"], 3);

    let bad_eta = tailspan(
        &[
            "sweep",
            "--input",
            "gap.csv",
            "--interpolate-missing",
            "--etas",
            "1,-1",
            "--out",
            "o",
        ],
        dir.path(),
    );
    assert_eq!(bad_eta.status.code(), Some(1));
    let err = error_line(&bad_eta);
    assert_eq!(err["error"], "invalid_eta");
    assert!(err["message"].as_str().unwrap().contains("-1"));
}
