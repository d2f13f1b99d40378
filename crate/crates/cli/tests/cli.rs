use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn bqf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqf")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = bqf(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn matrix_file(text: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

// [[1, 1/2], [1/2, -1]]: Tr A = 0, row sums 3/2 and -1/2
const A: &str = r#"{"n": 2, "entries": [[["1","0"],["1/2","0"]],[["1/2","0"],["-1","0"]]]}"#;

#[test]
fn enumerate_lists_all_interval_partitions() {
    let v = json(&["partitions", "enumerate", "--n", "3"]);
    assert_eq!(v["count"], 4);
    let blocks: Vec<&str> = v["partitions"].as_array().unwrap().iter().map(|p| p["blocks"].as_str().unwrap()).collect();
    assert_eq!(blocks, ["(1,2,3)", "(1)(2,3)", "(1,2)(3)", "(1)(2)(3)"]);
}

#[test]
fn zeta_approximation_at_k1() {
    let v = json(&["approx", "zeta", "--k", "1", "--n", "100"]);
    let row = &v["rows"][0];
    assert_eq!(row["trace"], "3333/10000");
    assert_eq!(row["approx"]["float"], true);
    let approx = row["approx"]["value"].as_f64().unwrap();
    let expected = std::f64::consts::PI.powi(4) * (1.0 - 1e-4) / 90.0;
    assert!((approx - expected).abs() < 1e-12 * expected);
    assert!((row["rel_error"]["value"].as_f64().unwrap() - 1e-4).abs() < 1e-8);
}

#[test]
fn gaussian_quadratic_form_cumulants() {
    let file = matrix_file(A);
    let v = json(&[
        "cumulants",
        "qf",
        "--matrix",
        file.path().to_str().unwrap(),
        "--dist",
        "gaussian:c=1,v=1",
        "--order",
        "4",
    ]);
    // 1ᵀA^r1 by hand: A1 = (3/2, -1/2), A²1 = (5/4, 5/4), A³1 = (15/8, -5/8), A⁴1 = (25/16, 25/16)
    let values: Vec<&str> = v["cumulants"].as_array().unwrap().iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1/1", "5/2", "5/4", "25/8"]);
}

#[test]
fn oracle_check_is_reproducible_and_seeded() {
    let file = matrix_file(A);
    let path = file.path().to_str().unwrap();
    let run = |seed: &str| bqf(&["cumulants", "oracle-check", "--matrix", path, "--order", "3", "--seed", seed]);
    let (first, second, other) = (run("0"), run("0"), run("7"));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_ne!(first.stdout, other.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn convert_round_trips() {
    let v = json(&["cumulants", "convert", "--dist", "custom:1,2,-1/3,4", "--order", "4"]);
    let moments: Vec<&str> = v["sequence"].as_array().unwrap().iter().map(|r| r["moment"].as_str().unwrap()).collect();
    assert_eq!(moments[0], "1/1");
    assert_eq!(moments[1], "3/1");
    let back = json(&["cumulants", "convert", "--moments", &moments.join(",")]);
    let cumulants: Vec<&str> =
        back["sequence"].as_array().unwrap().iter().map(|r| r["cumulant"].as_str().unwrap()).collect();
    assert_eq!(cumulants, ["1/1", "2/1", "-1/3", "4/1"]);
}

#[test]
fn csv_schemas() {
    let out = bqf(&["limit", "tangent", "--a", "0", "--b", "1", "--n", "4,9", "--order", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,r,finite,limit,abs_error\n"));
    assert_eq!(text.lines().count(), 5);

    let out = bqf(&["measure", "atoms", "--pairs", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("location,mass\n"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn matrix_check_reports_zero_sum_conditions() {
    let zero_sum = matrix_file(r#"{"n": 2, "entries": [[["1","0"],["-1","0"]],[["-1","0"],["1","0"]]]}"#);
    let v = json(&["matrix", "check", "--matrix", zero_sum.path().to_str().unwrap()]);
    assert_eq!(v["zero_row_sum"], true);
    assert_eq!(v["conditions_agree"], true);
    assert_eq!(v["traces"][0]["tr_ja_k"], "2/1");
    assert_eq!(v["traces"][1]["tr_ja_k"], "0/1");
}

#[test]
fn exit_codes() {
    assert_eq!(bqf(&["nonsense"]).status.code(), Some(2));
    assert_eq!(bqf(&["partitions", "enumerate", "--n", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        bqf(&["stats", "symmetrized", "--weights", "1,x", "--dist", "gaussian:c=0,v=1", "--order", "2"]).status.code(),
        Some(2)
    );

    let uncentered = bqf(&["stats", "symmetrized", "--weights", "1,1", "--dist", "gaussian:c=0,v=1", "--order", "2"]);
    assert_eq!(uncentered.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&uncentered.stderr).contains("sum to zero"));

    let skew = matrix_file(r#"{"n": 2, "entries": [[["0","0"],["1","0"]],[["2","0"],["0","0"]]]}"#);
    let out = bqf(&["matrix", "check", "--matrix", skew.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Hermitian"));

    let garbage = matrix_file("{ not json");
    assert_eq!(bqf(&["matrix", "check", "--matrix", garbage.path().to_str().unwrap()]).status.code(), Some(1));
}
