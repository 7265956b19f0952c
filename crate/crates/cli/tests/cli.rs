use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use skewid::algebra::{parse_literal, AlgebraSpec, Element};
use skewid::identity::{check_gpcgi, CheckLimits, GroupScope};
use skewid::words::parse_monomial;
use tempfile::TempDir;

const QUATERNION: &str = "seed = 7\n[algebra]\nkind = \"quaternion\"\na = -1\nb = -1\n[constants]\na = \"[0,1,0,0]\"\n";
const GL2F2: &str = "seed = 1\n[algebra]\nkind = \"matrix\"\nn = 2\ninner = \"finite-field\"\np = 2\n[constants]\na = \"[[0,1],[1,1]]\"\n";

struct Setup {
    _dir: TempDir,
    path: PathBuf,
}

fn config(text: &str) -> Setup {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("session.toml");
    std::fs::write(&path, text).unwrap();
    Setup { _dir: dir, path }
}

fn run(cfg: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewid")).arg("--config").arg(cfg).args(args).output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn gpcgi_over_gl2_f2_matches_library() {
    let s = config(GL2F2);
    let out = run(&s.path, &["check-gpcgi", "--w", "@a * x1 * @a^-1 * x1^-1", "--scope", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs[0]["record"], "header");
    assert_eq!(recs[1]["status"], "holds-exhaustive");

    let alg = AlgebraSpec::matrix(2, &AlgebraSpec::finite_field(2, 1).unwrap()).unwrap();
    let a = parse_literal(&alg, "[[0,1],[1,1]]").unwrap();
    let consts = [("a".to_string(), a)].into_iter().collect();
    let w = parse_monomial(&alg, "@a * x1 * @a^-1 * x1^-1", &consts).unwrap();
    let lib = check_gpcgi(&w, &GroupScope::FullGroup, &CheckLimits::default()).unwrap();
    assert_eq!(recs[1]["M"], lib.m.unwrap().to_string());
    assert_eq!(recs[1]["p"], serde_json::to_value(&lib.exponents).unwrap());
}

#[test]
fn header_carries_digest_and_seed() {
    let s = config(QUATERNION);
    let out = run(&s.path, &["torsion", "--x", "[0,0,1,0]"]);
    let recs = records(&out);
    let h = &recs[0];
    assert_eq!(h["command"], "torsion");
    assert_eq!(h["seed"], 7);
    assert_eq!(h["algebra"], "quaternion(-1,-1)");
    assert_eq!(h["config_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(recs[1]["order"], 4);
    let out = run(&s.path, &["--seed", "9", "torsion", "--x", "1"]);
    assert_eq!(records(&out)[0]["seed"], 9);
}

#[test]
fn series_invert_geometric() {
    let s = config(QUATERNION);
    let out = run(&s.path, &["series-invert", "--a", "[0,1,0,0]", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[1];
    let terms: Vec<(i64, String)> = serde_json::from_value(r["terms"].clone()).unwrap();
    assert_eq!(
        terms,
        vec![
            (0, "[1,0,0,0]".to_string()),
            (1, "[0,-1,0,0]".to_string()),
            (2, "[-1,0,0,0]".to_string()),
            (3, "[0,1,0,0]".to_string()),
        ]
    );
    for method in ["algebraic", "general"] {
        let other = run(&s.path, &["series-invert", "--a", "@a", "--order", "3", "--method", method]);
        assert_eq!(records(&other)[1]["terms"], r["terms"], "{method}");
    }
}

#[test]
fn unknown_command_is_usage_error() {
    let s = config(QUATERNION);
    let out = run(&s.path, &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert!(out.stdout.is_empty());
}

#[test]
fn config_errors_exit_two() {
    let s = config("[algebra]\nkind = \"finite-field\"\np = 4\n");
    let out = run(&s.path, &["torsion", "--x", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let missing = run(Path::new("/nonexistent/skewid.toml"), &["torsion", "--x", "1"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn non_unit_constant_as_coefficient() {
    let s = config("[algebra]\nkind = \"rational\"\n[constants]\nz = \"0\"\n");
    let out = run(&s.path, &["nontrivial", "--w", "@z * x1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("warning") && err.contains("not a unit"), "{err}");
}

#[test]
fn failing_verdicts_exit_one() {
    let s = config(QUATERNION);
    let out = run(&s.path, &["check-gpcgi", "--w", "@a * x1 * @a^-1 * x1^-1", "--count", "20"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &records(&out)[1];
    assert_eq!(r["status"], "fails");
    assert!(r["witness"].is_array());

    let out = run(&s.path, &["retarget", "--w", "@a * x1 * @a^-1 * x1^-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(records(&out)[1]["status"], "transform-failed");

    let out = run(&s.path, &["free-search", "--u", "@a", "--v", "[1,0,1,0]"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &records(&out)[1];
    assert_eq!(r["verdict"]["kind"], "relation-found");
    assert_eq!(r["degenerate"], true);
}

#[test]
fn budget_errors_exit_three() {
    let s = config(QUATERNION);
    let out = run(&s.path, &["free-search", "--u", "@a", "--v", "[1,1,1,0]", "--length", "12"]);
    assert_eq!(out.status.code(), Some(3));
    let recs = records(&out);
    assert_eq!(recs[1]["record"], "error");
    assert_eq!(recs[1]["kind"], "budget");

    let big = config("[algebra]\nkind = \"matrix\"\nn = 3\ninner = \"finite-field\"\np = 3\n[limits]\nenum_cap = 1000\n");
    let out = run(&big.path, &["check-ggi", "--w", "x1", "--scope", "exhaustive"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let s = config(QUATERNION);
    let args = ["pipeline", "--w", "@a * x1 * @a^-1 * x1^-1", "--count", "5", "--alpha", "2"];
    let a = run(&s.path, &args);
    let b = run(&s.path, &args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let c = run(&s.path, &["--seed", "8", args[0], args[1], args[2], args[3], args[4], args[5], args[6]]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn every_command_emits_a_result() {
    let s = config(QUATERNION);
    let cases: &[&[&str]] = &[
        &["check-ggi", "--w", "x1 * x1^-1 * x1", "--count", "3"],
        &["check-gpcgi", "--w", "x1", "--scope", "generated", "--gen", "[0,1,0,0]", "--gen", "[0,0,1,0]"],
        &["nontrivial", "--w", "@a * x1 * @a^-1 * x2"],
        &["retarget", "--w", "@a * x1 * @a^-1 * x1"],
        &["reduce", "--w", "x1 * x2", "--a", "@a", "--series", "n"],
        &["build-c", "--a", "@a", "--series", "f2", "--u"],
        &["expand", "--w", "x1 * x2^-1", "--arg", "[0,1,0,0]", "--arg", "2"],
        &["bad-beta", "--a", "-1"],
        &["pipeline", "--w", "x1", "--count", "2"],
        &["radical", "--x", "[1,1,0,0]"],
        &["torsion", "--x", "[1,1,0,0]"],
        &["free-search", "--u", "@a", "--height", "1", "--length", "3"],
    ];
    for args in cases {
        let out = run(&s.path, args);
        let recs = records(&out);
        assert!(recs.len() >= 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_ne!(recs[1]["record"], "error", "{args:?}: {}", recs[1]);
        assert!(matches!(out.status.code(), Some(0 | 1)), "{args:?}");
    }
    let f = config(GL2F2);
    let out = run(&f.path, &["exponent", "--a", "@a"]);
    assert_eq!(records(&out)[1]["m"], "6");
}

#[test]
fn generated_scope_closes_quaternion_group() {
    let s = config(QUATERNION);
    let out = run(&s.path, &["check-gpcgi", "--w", "x1", "--scope", "generated", "--gen", "[0,1,0,0]", "--gen", "[0,0,1,0]"]);
    let r = &records(&out)[1];
    assert_eq!(r["status"], "holds-exhaustive");
    assert_eq!(r["tuples"], 8);
    assert_eq!(r["M"], "2");
    let h = AlgebraSpec::hamilton();
    let i = parse_literal(&h, "[0,1,0,0]").unwrap();
    assert_eq!(i.pow(2).unwrap(), Element::from_int(&h, -1));
}

#[test]
fn bad_arguments_exit_two() {
    let s = config(QUATERNION);
    for args in [
        &["torsion", "--x", "[1,2]"][..],
        &["torsion", "--x", "@nope"],
        &["nontrivial", "--w", "x1 *"],
        &["expand", "--w", "x1 * x2", "--arg", "1"],
        &["build-c", "--a", "0"],
        &["check-ggi", "--w", "x1", "--gen", "1"],
        &["exponent", "--a", "@a"],
    ] {
        let out = run(&s.path, args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
