use std::path::Path;
use std::process::{Command, Output};

use sectordet::polyakov::flat_sector_spec;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sectordet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn field(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` line in {out:?}"))
        .parse()
        .unwrap()
}

#[test]
fn sector_det_at_right_angle() {
    let o = run(&["sector", "det", "--alpha", "1.5707963267948966"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!((field(&out, "value") - 0.622_702_170_264_472_3).abs() < 1e-10, "{out}");
    assert!(out.lines().any(|l| l == "method explicit"));
}

#[test]
fn cone_det_at_pi() {
    let o = run(&["cone", "det", "--alpha", "3.141592653589793"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((field(&stdout(&o), "value") - 0.326_465_807_324_271_9).abs() < 1e-10);
}

#[test]
fn integral_and_closed_agree() {
    let i = stdout(&run(&["sector", "ddalpha", "--alpha", "1.0", "--method", "integral"]));
    let c = stdout(&run(&["sector", "ddalpha", "--alpha", "1.0", "--method", "closed"]));
    assert!((field(&i, "value") - field(&c, "value")).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["sector", "ddalpha", "--alpha", "1.0", "--method", "rational"]).status.code(), Some(1));
    assert_eq!(run(&["sector", "det", "--alpha", "7"]).status.code(), Some(1));
    assert_eq!(run(&["sector", "det", "--alpha", "abc"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let near = run(&["sector", "ddalpha", "--alpha", "1.04725", "--method", "closed"]);
    assert_eq!(near.status.code(), Some(1));
    assert!(!near.stderr.is_empty());
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let o = run(&[
        "sweep", "--geometry", "sector", "--quantity", "ddalpha", "--from", "0.5", "--to", "2.5", "--steps", "9", "--out", p,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,value,method,abs_err_estimate"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    let mut prev = f64::NEG_INFINITY;
    for r in &rows {
        assert_eq!(r.len(), 4);
        let a: f64 = r[0].parse().unwrap();
        assert!(a > prev);
        prev = a;
        r[1].parse::<f64>().unwrap();
        assert!(r[2].starts_with("auto:"));
    }
}

#[test]
fn sweep_rejects_bad_grid() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.csv");
    let o = run(&[
        "sweep", "--geometry", "sector", "--quantity", "det", "--from", "2", "--to", "1", "--steps", "3", "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--suite", "all"]);
    let b = run(&["verify", "--suite", "all"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(1));
}

#[test]
fn polyakov_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let spec = flat_sector_spec(1.0, 0.1, 0.1, 16).unwrap();
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    let o = run(&["polyakov", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let v = field(&out, "variational");
    let i = field(&out, "integrated");
    assert!((v + i).abs() < 1e-12, "{out}");
    assert!(v != 0.0);

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["polyakov", "--spec", path.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["polyakov", "--spec", Path::new("/nonexistent/spec.json").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn oracle_spectrum_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.csv");
    let o = run(&[
        "oracle", "spectrum", "--geometry", "sector", "--alpha", "1.5707963267948966", "--L", "6", "--N", "5", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nu,n,lambda_sq,multiplicity"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    // Lowest level of the quarter disk: j_{2,1}^2.
    let j21: f64 = 5.135_622_301_840_683;
    assert!((first[2].parse::<f64>().unwrap() - j21 * j21).abs() < 1e-10);
    assert_eq!(text.lines().count(), 1 + 6 * 5);
}
