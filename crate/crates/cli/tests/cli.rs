use std::path::Path;
use std::process::{Command, Output};

use taucheck::corpus;
use taucheck::format;
use taucheck::modrep;

const A3Z: &str = "algebra ZeroRelationA3\nfield p=2\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelation 1 b*a\nnilpotency 2\n";

fn taucheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taucheck")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json_flag(stdout: &[u8], key: &str) -> String {
    let s = String::from_utf8_lossy(stdout);
    let line = s.lines().find(|l| l.trim_start().starts_with(&format!("\"{key}\""))).unwrap_or_default();
    line.split(':').nth(1).unwrap_or("").trim().trim_end_matches(',').to_string()
}

#[test]
fn classify_regular_module_is_tilting() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "a3z.alg", A3Z);
    let a = corpus::a3z();
    let m = write(dir.path(), "a.mod", &format::write_module(&modrep::regular(&a).module, "A"));
    let out = taucheck(&["classify", &alg, &m]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_flag(&out.stdout, "one_tilting"), "true");
}

#[test]
fn classify_t_star() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "a3z.alg", A3Z);
    let m = write(
        dir.path(),
        "tstar.mod",
        "module Tstar over ZeroRelationA3\ndim 1=2 2=1 3=1\nmatrix a = [1 0]\n",
    );
    let out = taucheck(&["classify", &alg, &m, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_flag(&out.stdout, "tau_tilting"), "true");
    assert_eq!(json_flag(&out.stdout, "one_tilting"), "false");
    assert_eq!(json_flag(&out.stdout, "ann_dim"), "1");
    assert_eq!(json_flag(&out.stdout, "tor1_ann_dim"), "1");
}

#[test]
fn malformed_matrix_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "a3z.alg", A3Z);
    let m = write(dir.path(), "bad.mod", "module M over ZeroRelationA3\ndim 1=1 2=1\nmatrix a = [1 1]\n");
    let out = taucheck(&["classify", &alg, &m]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("expected 1x1"), "{err}");
}

#[test]
fn relation_violation_names_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "a3z.alg", A3Z);
    let m = write(dir.path(), "bad.mod", "module M over ZeroRelationA3\ndim 1=1 2=1 3=1\nmatrix a = [1]\nmatrix b = [1]\n");
    let out = taucheck(&["classify", &alg, &m]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("b * a"));
}

#[test]
fn bad_algebra_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "bad.alg", &A3Z.replace("arrow b 2 3", "arrow b 2 9"));
    let out = taucheck(&["run-suite", "--algebra", &alg, "--suite", "counts"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));
}

#[test]
fn suite_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = taucheck(&["run-suite", "--corpus", "A3Z,LinearA(2)", "--seed", "9", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    assert!(String::from_utf8_lossy(&x).contains("\"schema\": 1"));
}

#[test]
fn user_algebra_file_runs_all_suites() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write(dir.path(), "a3z.alg", A3Z);
    let out = taucheck(&["run-suite", "--algebra", &alg, "--format", "text"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("over sampled_pool"));
    assert!(text.contains("exit status 0"));
}

#[test]
fn enumerate_lists_indecomposables() {
    let out = taucheck(&["enumerate", "LinearA(2)", "--max-dim", "2", "--tilting", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("# 3 indecomposables"));
    assert!(text.contains("# 2 basic tau-tilting"));
    assert!(text.contains("# 5 basic support tau-tilting"));
}

#[test]
fn unknown_inputs_are_input_errors() {
    assert_eq!(taucheck(&["run-suite", "--suite", "thm9"]).status.code(), Some(2));
    assert_eq!(taucheck(&["run-suite", "--corpus", "Klein(4)"]).status.code(), Some(2));
    assert_eq!(taucheck(&["enumerate", "LinearA(2)", "--p", "4"]).status.code(), Some(2));
    assert_eq!(taucheck(&["enumerate", "/no/such/file.alg"]).status.code(), Some(2));
}
