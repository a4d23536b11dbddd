use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (Value, i32, Output) {
    let out = bin().args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (json, out.status.code().unwrap(), out)
}

struct Fixture {
    _dir: TempDir,
    a2: String,
    b2: String,
    f2: String,
    g2: String,
    b2_three_ones: String,
    b2_other: String,
    b2_three_twos: String,
}

fn fixture() -> Fixture {
    let dir = TempDir::new().unwrap();
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    Fixture {
        a2: s(write(dir.path(), "a2.txt", "rank 2; m 1 2 3\n")),
        b2: s(write(
            dir.path(),
            "b2.json",
            r#"{"rank": 2, "bonds": [[1, 2, 4]]}"#,
        )),
        f2: s(write(dir.path(), "f.json", "[[1], [2]]")),
        g2: s(write(
            dir.path(),
            "g.json",
            r#"{"factors": [[2], [2, 1, 2]]}"#,
        )),
        b2_three_ones: s(write(dir.path(), "f4.json", "[[1], [2], [1], [1]]")),
        b2_other: s(write(
            dir.path(),
            "g4.json",
            "[[1], [2], [2, 1, 2], [2, 1, 2]]",
        )),
        b2_three_twos: s(write(dir.path(), "h4.json", "[[1], [2], [2], [2]]")),
        _dir: dir,
    }
}

#[test]
fn classes_reports_odd_components() {
    let fx = fixture();
    let (j, code, _) = run(&["classes", "--diagram", &fx.a2]);
    assert_eq!(code, 0);
    assert_eq!(j["class_count"], 1);
    let (j, _, _) = run(&["classes", "--diagram", &fx.b2]);
    assert_eq!(j["class_count"], 2);
}

#[test]
fn decide_separates_b2_orbits() {
    let fx = fixture();
    let (j, code, _) = run(&[
        "decide",
        "--diagram",
        &fx.b2,
        "--f",
        &fx.b2_three_ones,
        "--g",
        &fx.b2_three_twos,
    ]);
    assert_eq!(code, 1);
    assert_eq!(j["equivalent"], false);
    assert_eq!(j["certificate"]["f"]["1"], 3);
    assert_eq!(j["certificate"]["g"]["2"], 3);
    let (j, code, _) = run(&[
        "decide",
        "--diagram",
        &fx.b2,
        "--f",
        &fx.b2_three_ones,
        "--g",
        &fx.b2_other,
    ]);
    assert_eq!(code, 0);
    assert_eq!(j["equivalent"], true);
}

#[test]
fn connect_output_verifies() {
    let fx = fixture();
    let (j, code, out) = run(&["connect", "--diagram", &fx.a2, "--f", &fx.f2, "--g", &fx.g2]);
    assert_eq!(code, 0);
    assert!(j["witness"].is_array());
    let dir = TempDir::new().unwrap();
    let w = write(
        dir.path(),
        "w.json",
        std::str::from_utf8(&out.stdout).unwrap(),
    );
    let (j, code, _) = run(&[
        "verify",
        "--diagram",
        &fx.a2,
        "--f",
        &fx.f2,
        "--braid",
        w.to_str().unwrap(),
        "--expect",
        &fx.g2,
    ]);
    assert_eq!(code, 0, "{j}");
    assert_eq!(j["match"], true);
}

#[test]
fn connect_on_b2_length_four() {
    let fx = fixture();
    let (j, code, _) = run(&[
        "connect",
        "--diagram",
        &fx.b2,
        "--f",
        &fx.b2_other,
        "--g",
        &fx.b2_three_ones,
    ]);
    assert_eq!(code, 0);
    assert!(j["witness"].is_array());
    let (j, code, _) = run(&[
        "connect",
        "--diagram",
        &fx.b2,
        "--f",
        &fx.b2_other,
        "--g",
        &fx.b2_three_twos,
    ]);
    assert_eq!(code, 1);
    assert!(j.get("witness").is_none());
}

#[test]
fn verify_empty_braid() {
    let fx = fixture();
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "b.json", "[]");
    let empty = empty.to_str().unwrap();
    let (_, code, _) = run(&[
        "verify",
        "--diagram",
        &fx.a2,
        "--f",
        &fx.f2,
        "--braid",
        empty,
        "--expect",
        &fx.f2,
    ]);
    assert_eq!(code, 0);
    let (j, code, _) = run(&[
        "verify",
        "--diagram",
        &fx.a2,
        "--f",
        &fx.f2,
        "--braid",
        empty,
        "--expect",
        &fx.g2,
    ]);
    assert_eq!(code, 1);
    assert_eq!(j["match"], false);
}

#[test]
fn normalize_and_orbit() {
    let fx = fixture();
    let (j, code, _) = run(&["normalize", "--diagram", &fx.b2, "--f", &fx.b2_three_ones]);
    assert_eq!(code, 0);
    assert_eq!(j["core"].as_array().unwrap().len(), 2);
    assert_eq!(j["pairs"].as_array().unwrap().len(), 1);
    let (j, code, _) = run(&["orbit", "--diagram", &fx.a2, "--f", &fx.f2, "--dump"]);
    assert_eq!(code, 0);
    assert_eq!(j["size"], 3);
    assert_eq!(j["states"].as_array().unwrap().len(), 3);
    let (j, _, _) = run(&[
        "orbit",
        "--diagram",
        &fx.b2,
        "--f",
        &fx.b2_three_ones,
        "--threads",
        "2",
    ]);
    let (k, _, _) = run(&["orbit", "--diagram", &fx.b2, "--f", &fx.b2_three_ones]);
    assert_eq!(j["size"], k["size"]);
}

#[test]
fn output_is_deterministic() {
    let fx = fixture();
    let args = [
        "connect",
        "--diagram",
        &fx.b2,
        "--f",
        &fx.b2_other,
        "--g",
        &fx.b2_three_ones,
    ];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn invalid_input_exits_two_with_error_object() {
    let fx = fixture();
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "[[1], [1, 2]]");
    let (j, code, _) = run(&[
        "decide",
        "--diagram",
        &fx.a2,
        "--f",
        bad.to_str().unwrap(),
        "--g",
        &fx.g2,
    ]);
    assert_eq!(code, 2);
    assert_eq!(j["code"], "not_a_reflection");
    assert_eq!(j["location"]["factor"], 1);

    let diag = write(dir.path(), "d.txt", "rank 2\nm 1 2 x\n");
    let (j, code, _) = run(&["classes", "--diagram", diag.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(j["code"], "syntax");
    assert_eq!(j["location"]["line"], 2);

    let (j, code, _) = run(&[
        "decide",
        "--diagram",
        &fx.a2,
        "--f",
        &fx.f2,
        "--g",
        &fx.b2_three_ones,
    ]);
    assert_eq!(code, 2);
    assert!(j["code"].is_string());
}

#[test]
fn selftest_passes() {
    let (j, code, _) = run(&["selftest"]);
    assert_eq!(code, 0);
    assert_eq!(j["passed"], true);
    assert_eq!(j["systems"].as_array().unwrap().len(), 6);
}
