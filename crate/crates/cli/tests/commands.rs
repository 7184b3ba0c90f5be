use std::process::{Command, Output};

use serde_json::Value;

fn equistar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equistar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn star_examples() {
    let o = equistar(&["star", "--n", "1", "--lambda", "1/2", "--phi", "u1^2*xi1", "--psi", "xi1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "C_0 = u1^2*xi1^2\nC_1 = -u1*xi1\nC_2 = 1/6\n");

    let o = equistar(&["star", "--n", "1", "--lambda", "0", "--phi", "u1", "--psi", "xi1"]);
    assert!(stdout(&o).contains("C_1 = 0\n"));

    let o = equistar(&["star", "--n", "2", "--lambda", "1/3", "--phi", "xi1", "--psi", "xi2"]);
    assert_eq!(stdout(&o), "C_0 = xi1*xi2\nC_1 = 0\nC_2 = 0\n");
}

#[test]
fn star_json_and_coeff() {
    let o = equistar(&["--format", "json", "star", "--phi", "u1^2*xi1", "--psi", "xi1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"]["2"], "1/6");
    assert_eq!(v["lambda"], "1/2");

    let o = equistar(&["coeff", "--lambda", "1/4", "--phi", "u1", "--psi", "xi1", "--p", "1"]);
    assert_eq!(stdout(&o), "C_1 = -1/4\n");
}

#[test]
fn operator_reports() {
    let o = equistar(&["zp", "--n", "1", "--p", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("order: 2\n"));

    let o = equistar(&["lx", "--n", "1", "--x", "e10"]);
    let text = stdout(&o);
    assert!(text.contains("= 1/16*xi1 * d4/du1^2dxi1^2 + 1/16 * d3/du1^2dxi1\n"), "{text}");
    assert!(text.contains("factored: (E'+1/2) o (1/16 * d3/du1^2dxi1)"), "{text}");

    let o = equistar(&["--format", "json", "lx", "--n", "2", "--x", "e10"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["left_factor"], Value::Null);

    let o = equistar(&["lx", "--n", "2", "--x", "id"]);
    assert!(stdout(&o).contains("= 0\n"));
}

#[test]
fn verify_exit_codes() {
    let o = equistar(&["verify", "parity", "--n", "1", "--lambda", "1/2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));

    let o = equistar(&["--format", "json", "verify", "parity", "--n", "2", "--lambda", "1/4", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    let first = &v["failures"][0];
    assert_eq!(first["inputs"]["phi"], "u1");
    assert_eq!(first["inputs"]["psi"], "xi1");
    assert_eq!(first["lhs"], "-1/4");
    assert_eq!(first["rhs"], "-3/4");

    let o = equistar(&["--format", "json", "verify", "zp-consistency", "--n", "3", "--p", "2", "--cases", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["suite", "n", "lambda", "p", "seed", "cases", "failures", "notes", "status", "elapsed_ms"]);
    assert_eq!(v["cases"], 16);
}

#[test]
fn errors_exit_with_two() {
    let o = equistar(&["star", "--n", "2", "--phi", "xi3", "--psi", "u1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
    assert_eq!(equistar(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(equistar(&["--lambda", "0.5", "star", "--phi", "u1", "--psi", "xi1"]).status.code(), Some(2));
    assert_eq!(equistar(&["lx", "--n", "1", "--x", "e20"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "--no-timing", "verify", "equivariance", "--n", "2", "--seed", "11", "--cases", "8", "--p", "2"];
    let a = equistar(&args);
    let b = equistar(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);

    let timed = ["--format", "json", "verify", "inverse", "--n", "2", "--lambda", "1/4", "--max-degree", "6", "--seed", "3"];
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v.to_string()
    };
    assert_eq!(strip(&equistar(&timed)), strip(&equistar(&timed)));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("equistar-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = equistar(&["--format", "json", "--out", path.to_str().unwrap(), "verify", "lie-homomorphism", "--n", "2"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "lie-homomorphism");
    assert_eq!(v["cases"], 81);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn suite_all_small() {
    let o = equistar(&["--format", "json", "suite-all", "--n", "1", "--cases", "8", "--p", "2", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 14);

    let o = equistar(&["--format", "json", "suite-all", "--n", "2", "--cases", "4", "--p", "2", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let skipped: Vec<&Value> = v.as_array().unwrap().iter().filter(|r| r["status"] == "skipped").collect();
    assert_eq!(skipped.len(), 1);
    assert_eq!(skipped[0]["suite"], "cor-last");
}
