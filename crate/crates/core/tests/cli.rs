mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bezoutian::io::{roots_from_json, SparseMatrixFile};
use bezoutian::linalg::QMatrix;
use bezoutian::poly::Ambient;

use common::fixture_path;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bezoutian")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_two_curves() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = (dir.path().join("roots.json"), dir.path().join("report.txt"));
    let o = run(&["solve", path(&fixture_path("two_curves.txt")), "--out", path(&out), "--report", path(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let roots = roots_from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(roots.len(), 3);
    assert!(roots.iter().any(|r| (r.coords[0].re + 1.32472).abs() < 1e-4 && (r.coords[1].re - 0.75488).abs() < 1e-4));
    let report = fs::read_to_string(&report).unwrap();
    assert!(report.contains("dim: 3"));
    assert!(report.contains("phase,seconds\nbuild,"));
    assert!(report.contains("verify: passed (p = 2003"));
}

#[test]
fn solve_quadratic_to_stdout() {
    let o = run(&["solve", path(&fixture_path("quadratic.txt"))]);
    assert_eq!(o.status.code(), Some(0));
    let mut xs: Vec<f64> = roots_from_json(&stdout(&o)).unwrap().iter().map(|r| r.coords[0].re).collect();
    xs.sort_by(f64::total_cmp);
    assert!((xs[0] - 1.0).abs() < 1e-10 && (xs[1] - 2.0).abs() < 1e-10);
    assert!(String::from_utf8_lossy(&o.stderr).contains("log10 of errors,nb of roots"));
}

#[test]
fn malformed_input_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("roots.json");
    let o = run(&["solve", path(&fixture_path("malformed.txt")), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    assert_eq!(run(&["solve", path(&dir.path().join("missing.txt"))]).status.code(), Some(2));
}

#[test]
fn matrices_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["matrices", path(&fixture_path("two_curves.txt")), "--out-dir", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = {
        let mut v: Vec<String> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
        v.sort();
        v
    };
    assert_eq!(names, ["B0.txt", "B1.txt", "B2.txt", "X1.txt", "X2.txt"]);
    let b0 = fs::read_to_string(dir.path().join("B0.txt")).unwrap();
    let parsed = SparseMatrixFile::parse(&b0, Ambient::X(2), Ambient::Y(2)).unwrap();
    assert_eq!(parsed.matrix, QMatrix::from_i64(&[[0, 0, 1], [-1, -1, 0], [-1, 0, 0]]));
    assert_eq!(parsed.to_text(), b0);
    let x2 = fs::read_to_string(dir.path().join("X2.txt")).unwrap();
    let parsed = SparseMatrixFile::parse(&x2, Ambient::X(2), Ambient::X(2)).unwrap();
    assert_eq!(parsed.matrix, QMatrix::from_i64(&[[0, 0, 1], [1, 0, 0], [0, 1, -1]]));
    assert_eq!(parsed.to_text(), x2);
    let report = String::from_utf8_lossy(&o.stderr).to_string();
    let bytes: usize = ["B0.txt", "B1.txt", "B2.txt"]
        .iter()
        .map(|n| {
            let text = fs::read_to_string(dir.path().join(n)).unwrap();
            SparseMatrixFile::parse(&text, Ambient::X(2), Ambient::Y(2)).unwrap().triplets().len()
        })
        .sum();
    assert!(report.contains(&format!("matrix bytes: {bytes}")), "{report}");
}

#[test]
fn inconsistent_system_gives_empty_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let out = dir.path().join("m");
    let o = run(&["matrices", path(&fixture_path("inconsistent.txt")), "--out-dir", path(&out), "--report", path(&report)]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["B0.txt", "B1.txt", "B2.txt", "X1.txt", "X2.txt"] {
        let text = fs::read_to_string(out.join(name)).unwrap();
        assert!(text.contains("rows=0 cols=0"), "{name}: {text}");
    }
    assert!(fs::read_to_string(&report).unwrap().contains("dim: 0"));
}

#[test]
fn unwritable_directory() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = run(&["matrices", path(&fixture_path("two_curves.txt")), "--out-dir", path(&blocker.join("sub"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_defaults() {
    let o = run(&["verify", path(&fixture_path("two_curves.txt"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "prime: 2003\nf1: true\nf2: true\npassed: true\n");
}

#[test]
fn verify_tampered_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let system = fixture_path("two_curves.txt");
    assert_eq!(run(&["matrices", path(&system), "--out-dir", path(dir.path())]).status.code(), Some(0));
    assert_eq!(run(&["verify", path(&system), "--load-matrices", path(dir.path())]).status.code(), Some(0));
    let x1 = dir.path().join("X1.txt");
    let text = fs::read_to_string(&x1).unwrap();
    let tampered = text.replacen("0 1 -1/1", "0 1 -2/1", 1);
    assert_ne!(tampered, text);
    fs::write(&x1, tampered).unwrap();
    let o = run(&["verify", path(&system), "--load-matrices", path(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("passed: false"));
    fs::write(&x1, "not a matrix\n").unwrap();
    assert_eq!(run(&["verify", path(&system), "--load-matrices", path(dir.path())]).status.code(), Some(2));
}

#[test]
fn composite_prime_is_rejected() {
    let o = run(&["verify", path(&fixture_path("two_curves.txt")), "--prime", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));
}

#[test]
fn bad_denominator_moves_to_next_prime() {
    let dir = tempfile::tempdir().unwrap();
    let system = dir.path().join("sys.txt");
    fs::write(&system, "2003*x1 - 1\n").unwrap();
    let o = run(&["verify", path(&system)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("prime: 4001\n"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let system = fixture_path("two_curves.txt");
    let runs: Vec<(String, Vec<String>)> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("roots{i}.json"));
            let mdir = dir.path().join(format!("m{i}"));
            assert_eq!(run(&["solve", path(&system), "--seed", "9", "--out", path(&out)]).status.code(), Some(0));
            assert_eq!(run(&["matrices", path(&system), "--seed", "9", "--out-dir", path(&mdir)]).status.code(), Some(0));
            let files = ["B0.txt", "B1.txt", "B2.txt", "X1.txt", "X2.txt"].iter().map(|n| fs::read_to_string(mdir.join(n)).unwrap()).collect();
            (fs::read_to_string(&out).unwrap(), files)
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn flags_are_accepted() {
    let o = run(&[
        "solve",
        path(&fixture_path("quadratic.txt")),
        "--margin",
        "2",
        "--round-tol",
        "1e-7",
        "--force-symbolic",
        "--no-verify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verify: skipped"));
}
