use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ech-index"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn cz_prints_value() {
    let out = bin(&[
        "cz",
        "--orbit",
        r#"{"kind":"elliptic","p":3,"q":10,"k_max":9}"#,
        "--k",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
}

#[test]
fn bad_orbit_is_an_input_error() {
    let out = bin(&[
        "cz",
        "--orbit",
        r#"{"kind":"elliptic","p":1,"q":2,"k_max":3}"#,
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

#[test]
fn file_inputs() {
    let out = bin(&[
        "index",
        "--input",
        &data("relclass.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["ech_index"], 4);

    let out = bin(&["braid", "--input", &data("braid.json"), "--format", "json"]);
    assert_eq!(json(&out)["result"]["union_writhe"]["a+b"], 3);

    let out = bin(&["grade", "--input", &data("grade.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("Ech 3 mod 4"));

    let out = bin(&[
        "curve",
        "report",
        "--input",
        &data("curve.json"),
        "--format",
        "json",
    ]);
    assert_eq!(json(&out)["result"]["inequality"]["holds"], true);
    let out = bin(&[
        "curve",
        "jplus",
        "--input",
        &data("curve.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = data("curve.json");
    let out = bin(&[
        "curve", "union", "--left", &c, "--right", &c, "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_codes_and_out_file() {
    let dir = std::env::temp_dir().join(format!("ech-index-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ce1.json");
    let p = path.to_string_lossy();
    let out = bin(&[
        "verify", "ce1", "--m-max", "4", "--thetas", "3/10", "--format", "json", "--out", &p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["violation_count"], 0);
    std::fs::remove_dir_all(&dir).unwrap();

    let out = bin(&[
        "verify", "j-union", "--m-max", "2", "--thetas", "3/11", "--n-min", "1", "--n-max", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = bin(&[
        "verify",
        "random",
        "--samples",
        "50",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"].as_array().unwrap().len(), 6);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "huge",
        "--m-max",
        "5",
        "--denominators",
        "11",
        "--format",
        "json",
    ];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}
