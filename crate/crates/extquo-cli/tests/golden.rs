//! Byte-stable CLI output and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extquo")).args(args).output().unwrap()
}

fn golden(file: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
    let expected = std::fs::read(&path).unwrap();
    assert!(out.stdout == expected, "{file} differs:\n{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(run(args).stdout, out.stdout, "{file}: output not stable across runs");
}

#[test]
fn g2_extquo() {
    golden("g2_extquo.json", &["extquo", "--group", "G2"]);
}

#[test]
fn inversion_table() {
    golden("inversion_extquo.txt", &["extquo", "--action", "inversion", "--out", "table"]);
}

#[test]
fn g2_params() {
    golden("g2_params.json", &["params", "--group", "G2", "--point", "0/1@-2/2,0/1@0/2"]);
}

#[test]
fn gl2_glphi() {
    golden("gl2_glphi.json", &["glphi", "--blocks", "m=1,e=2,n=1", "--t", "z,z", "--tau", "sgn"]);
}

#[test]
fn families() {
    golden("gl_family.json", &["family", "--kind", "gl", "--e", "2"]);
    golden("g2_family.json", &["family", "--kind", "g2"]);
}

#[test]
fn triangles() {
    golden("pgl2_triangle.json", &["triangle", "--group", "PGL2", "--inertial", "pgl2-order2"]);
    golden("gl_triangle.txt", &["triangle", "--blocks", "m=1,e=2,n=1;m=1,e=1,n=1", "--out", "table"]);
}

#[test]
fn tables() {
    golden("s3_chartable.txt", &["chartable", "--group", "A2", "--out", "table"]);
    golden("g2_springer.txt", &["springer", "--group", "G2", "--out", "table"]);
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        vec!["extquo", "--group", "E9"],
        vec!["extquo"],
        vec!["params", "--group", "G2", "--point", "0/1"],
        vec!["params", "--group", "G2", "--point", "x"],
        vec!["glphi", "--blocks", "m=1,e=2,n=1", "--t", "z,z", "--tau", "(3)"],
        vec!["triangle", "--blocks", "m=1,n=1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn unsupported_triangle_is_reported() {
    let out = run(&["triangle", "--group", "PGL3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "unsupported");
    let points = v["points"].as_array().unwrap();
    assert!(points.iter().any(|p| p["verdict"] == "pass"));
    assert!(points.iter().any(|p| p["verdict"] == "unsupported"));
    assert!(points.iter().all(|p| p["verdict"] != "fail"));
}
