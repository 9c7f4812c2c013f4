use std::process::{Command, Output};

fn pto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pto")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = pto(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn info_reports_center_and_pi_degree() {
    let v = json(&["info", "qp3", "--json"]);
    assert_eq!(v["pi_degree"], 3);
    assert_eq!(v["rank"], 9);
    assert_eq!(v["center_residues"], serde_json::json!([[0, 0]]));
    let v = json(&["info", "cluster-a2", "--json"]);
    assert_eq!(v["ell_compatible"], true);
    assert_eq!(v["strict"], true);
}

#[test]
fn compute_regression_values() {
    let cases: &[(&[&str], &str)] = &[
        (&["compute", "qp2", "trace-reg", "x1^2"], "4 * x1^2"),
        (&["compute", "qp2", "trace-reg", "x1"], "0"),
        (&["compute", "qp2", "trace-red", "x1^2 x2^2"], "2 * x1^2 x2^2"),
        (&["compute", "qp2", "bracket", "x1^2", "x2^2"], "-4 * x1^2 x2^2"),
        (&["compute", "qp2", "derivation", "x1^2"], "d(x1) = 0\nd(x2) = -2 * x1^2 x2"),
        (&["compute", "qp2", "discriminant", "--k", "4"], "u1^2 u2^2"),
    ];
    for (args, want) in cases {
        let out = pto(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out).trim_end(), *want, "{args:?}");
    }
}

#[test]
fn charpoly_json() {
    let v = json(&["compute", "qp2", "charpoly", "x1", "--trace", "red", "--json"]);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["coefficients"], serde_json::json!(["0", "-x1^2"]));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = pto(&["verify", "qp2", "pto-reg", "--json"]);
    let b = pto(&["verify", "qp2", "pto-reg", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["witnesses"], serde_json::json!([]));
    let other = pto(&["verify", "qp2", "pto-reg", "--json", "--seed", "5"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn verify_base_change_with_sublattice() {
    let out = pto(&["verify", "qp2", "base-change", "--sublattice", "[[4,0],[0,2]]"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[C : A] = 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(pto(&["verify", "qp2", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(pto(&["info", "no-such-preset"]).status.code(), Some(2));
    assert_eq!(pto(&["compute", "qp2", "bracket", "x1", "x2"]).status.code(), Some(2));
    assert_eq!(pto(&["compute", "qp2", "trace-reg", "x1^"]).status.code(), Some(2));
    assert_eq!(pto(&["verify", "qp2", "base-change", "--sublattice", "[[1,0]"]).status.code(), Some(2));
    let capped = pto(&["compute", "qp2", "discriminant", "--k", "4", "--cap-max-det", "2"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("resource limit"));
}

#[test]
fn spec_file_from_disk() {
    let dir = std::env::temp_dir().join(format!("pto-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("qp5.json");
    std::fs::write(&path, r#"{"n": 2, "ell": 5, "lambda": [[0, 1], [-1, 0]], "invertible": [false, false], "seed": 11}"#)
        .unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["info", p, "--json"]);
    assert_eq!(v["pi_degree"], 5);
    assert_eq!(pto(&["verify", p, "pto-red"]).status.code(), Some(0));
    std::fs::write(&path, "{\"n\": 2,\n \"ell\": }").unwrap();
    let bad = pto(&["info", p]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}
