//! End-to-end checks of the `bohrlab` binary: output shapes, determinism
//! and the documented exit codes.

use std::process::{Command, Output};

fn bohrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohrlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn reproduce_single_check_prints_one_line() {
    let out = bohrlab(&["reproduce", "--only", "h3-upper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1, "{text}");
    assert!(text.contains("PASS h3-upper"), "{text}");
    assert!(text.contains("4.91916"), "{text}");
}

#[test]
fn double_double_precision_mode() {
    let out = Command::new(env!("CARGO_BIN_EXE_bohrlab"))
        .args(["bohr-upper", "h3", "--model", "exact", "--tol", "1e-12"])
        .env("BOHRLAB_PRECISION", "dd")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(stdout(&out).contains("4.9191671"));
}

#[test]
fn unknown_precision_mode_is_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_bohrlab"))
        .args(["norms", "disk", "--nmax", "2"])
        .env("BOHRLAB_PRECISION", "quad")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reproduce_disk_faber_check() {
    let out = bohrlab(&["reproduce", "--only", "disk-faber"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS disk-faber"));
}

#[test]
fn bohr_upper_h3_exact() {
    let out = bohrlab(&["bohr-upper", "h3", "--model", "exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("condenser,direction,R,method,residual"));
    assert!(text.contains("4.9191671"), "{text}");
}

#[test]
fn bohr_upper_flag_form_matches_positional() {
    let a = bohrlab(&["bohr-upper", "h3", "--model", "exact"]);
    let b = bohrlab(&["bohr-upper", "--cond", "h3", "--model", "exact"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn norms_disk_all_ones() {
    let out = bohrlab(&["norms", "disk", "--nmax", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    for line in text.lines().skip(1) {
        assert!(line.contains("1.00000000000e0"), "{line}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let first = bohrlab(&["asymptotic", "segment", "--r", "4,8"]);
    let second = bohrlab(&["asymptotic", "segment", "--r", "4,8"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn angular_square() {
    let dir = std::env::temp_dir().join("bohrlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.json");
    std::fs::write(&path, "[[0,0],[1,0],[1,1],[0,1]]").unwrap();
    let out = bohrlab(&["angular", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("6.28318530718e0"));
}

#[test]
fn angular_json_format() {
    let dir = std::env::temp_dir().join("bohrlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.json");
    std::fs::write(&path, "[[0,0],[1,0],[0.5,0.9]]").unwrap();
    let out = bohrlab(&["angular", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let v = parsed["variation"].as_f64().unwrap();
    assert!((v - 2.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn unknown_condenser_exit_code() {
    let out = bohrlab(&["norms", "pentagon", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_polygon_exit_code() {
    let dir = std::env::temp_dir().join("bohrlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = bohrlab(&["angular", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn out_of_range_model_exit_code() {
    // the convex bound does not apply to the non-convex hypocycloid
    let out = bohrlab(&["bohr-upper", "h3", "--model", "convex"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn self_intersecting_polygon_is_numeric_failure_class() {
    let dir = std::env::temp_dir().join("bohrlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bow.json");
    std::fs::write(&path, "[[0,0],[1,1],[1,0],[0,1]]").unwrap();
    let out = bohrlab(&["angular", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn faber_json_document_shape() {
    let out = bohrlab(&["faber", "h3", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["degree"], 2);
    let alpha = parsed["alpha_tail"].as_array().unwrap();
    assert!((alpha[0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((alpha[3][0].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn bohr_lower_h3_beats_three() {
    let out = bohrlab(&["bohr-lower", "h3", "--R", "3.0,3.25,3.5", "--r1", "0.99"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lower"), "{text}");
    assert!(text.contains("3.50000000000e0"), "{text}");
}

#[test]
fn file_condenser_roundtrip() {
    let dir = std::env::temp_dir().join("bohrlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h3-copy.json");
    std::fs::write(
        &path,
        r#"{
  "name": "h3-copy",
  "gamma": 1.0,
  "beta0": [0.0, 0.0],
  "betas": [[0.0, 0.0], [0.5, 0.0]],
  "flags": { "convex": false, "positive_class": true },
  "norm_model": "exact-h3"
}"#,
    )
    .unwrap();
    let id = format!("file:{}", path.display());
    let out = bohrlab(&["bohr-upper", &id, "--model", "exact"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4.9191671"));
}

#[test]
fn write_to_out_path() {
    let dir = std::env::temp_dir().join("bohrlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("norms.csv");
    let out = bohrlab(&[
        "norms",
        "h3",
        "--nmax",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,value,kind,isExact"));
    assert!(written.contains("1.50000000000e0"));
}
