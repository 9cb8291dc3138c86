use std::path::Path;
use std::process::{Command, Output};

fn jacsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacsplit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn search_into(dir: &Path) -> Output {
    let out = dir.to_str().unwrap();
    jacsplit(&["search", "--p", "5", "--ell", "3", "--max-base-degree", "2", "--seed", "7", "--out", out])
}

#[test]
fn search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = search_into(dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("examined"));
    let c1 = dir.path().join("c1.json");
    assert!(c1.exists());
    let o = jacsplit(&["verify", c1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verified"));
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    search_into(dir.path());
    let c1 = dir.path().join("c1.json");
    let mut value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&c1).unwrap()).unwrap();
    value["split"]["a"] = serde_json::json!(12345);
    std::fs::write(&c1, value.to_string()).unwrap();
    let o = jacsplit(&["verify", c1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));

    std::fs::write(&c1, "{\"schema\": 1}").unwrap();
    let o = jacsplit(&["verify", c1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("schema error"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(jacsplit(&["search", "--p", "5"]).status.code(), Some(2));
    assert_eq!(jacsplit(&["search", "--p", "5", "--ell", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(jacsplit(&["search", "--p", "3", "--ell", "3"]).status.code(), Some(2));
    assert_eq!(jacsplit(&["search", "--p", "4", "--ell", "3"]).status.code(), Some(2));
    assert_eq!(jacsplit(&["zeta", "--h", "1,x", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn ell_equal_to_p_needs_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = jacsplit(&["search", "--p", "3", "--ell", "3", "--max-base-degree", "2", "--allow-ell-eq-p", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn zeta_of_an_elliptic_curve() {
    // y^2 = x^3 + 1 over F_5 has 6 points
    let o = jacsplit(&["zeta", "--h", "1,0,0,1", "--p", "5", "--base-change", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("genus 1"));
    assert!(text.contains("counts: [6]"), "{text}");
    assert!(text.contains("L: [1, 0, 5]"), "{text}");
    assert!(text.contains("L over F_q^2: [1, 10, 25]"), "{text}");
}

#[test]
fn twist_reads_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    search_into(dir.path());
    let o = jacsplit(&["twist", dir.path().join("c1.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let twist: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(twist["certificate_reference"], "#/split");
}

#[test]
fn construct_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    search_into(dir.path());
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c1.json")).unwrap()).unwrap();
    let coord = |v: &serde_json::Value| v.as_array().unwrap().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":");
    let curve = ["a2", "a4", "a6"].map(|c| coord(&cert["e_tilde"][c])).join(",");
    let kernel = cert["kernel"]["poly"].as_array().unwrap().iter().map(coord).collect::<Vec<_>>().join(",");
    let degree = cert["field"]["degree"].to_string();
    let out = dir.path().join("built.json");
    let o = jacsplit(&[
        "construct", "--p", "5", "--degree", &degree, "--ell", "3", "--curve", &curve, "--kernel", &kernel,
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(jacsplit(&["verify", out.to_str().unwrap()]).status.code(), Some(0));
}
