use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_blockforge"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("BLOCKFORGE_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn a5_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a5.json");
    let r = run(&["isometry", "a5", "--p", "5", "--target", "np", "--json", out.to_str().unwrap()], None);
    assert_eq!(r.status.code(), Some(0));
    let cert = json(&out);
    assert_eq!(cert["verdict"], true);
    assert_eq!(cert["normalizer_target"], "np");
    assert_eq!(cert["bijection"].as_array().unwrap().len(), 4);
    assert_eq!(cert["separation"]["failures"], 0);
    assert_eq!(cert["integrality"]["failures"], 0);
    assert_eq!(cert["prime_data"]["canonical"]["p"], 5);
}

#[test]
fn nilpotent_group_gets_a_trivial_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a4.json");
    let r = run(&["isometry", "a4", "--p", "3", "--json", out.to_str().unwrap()], None);
    assert_eq!(r.status.code(), Some(0));
    let certs = json(&out);
    let certs = certs.as_array().unwrap();
    assert_eq!(certs.len(), 2);
    assert!(certs.iter().all(|c| c["shape"] == "p-nilpotent" && c["verdict"] == true));
}

#[test]
fn noncyclic_hyperfocal_subgroup_fails_loudly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("err.json");
    let r = run(&["isometry", "a5", "--p", "2", "--json", out.to_str().unwrap()], None);
    assert_ne!(r.status.code(), Some(0));
    assert_eq!(json(&out)["error"], "HypothesisNotMet");
}

#[test]
fn certificates_do_not_depend_on_the_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for t in ["1", "4"] {
        let out = dir.path().join(format!("sl28c3-{t}.json"));
        let r = run(&["isometry", "sl28c3", "--p", "3", "--json", out.to_str().unwrap()], Some(t));
        assert_eq!(r.status.code(), Some(0));
        bodies.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn strict_primes_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c7c3.json");
    let r = run(
        &["isometry", "c7c3", "--p", "7", "--target", "npt", "--strict-primes", "--json", out.to_str().unwrap()],
        None,
    );
    assert_eq!(r.status.code(), Some(0));
    let cert = json(&out);
    assert_eq!(cert["prime_data"]["strict"], true);
    assert_eq!(cert["prime_data"]["primes_used"], cert["prime_data"]["canonical"]["num_primes"]);
}

#[test]
fn group_files_are_read() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s3.txt");
    std::fs::write(&file, "# symmetric group\ndegree 3\n(0 1 2)\n(0 1)\n").unwrap();
    let r = run(&["info", file.to_str().unwrap()], None);
    assert_eq!(r.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&r.stdout).contains("order 6"));
    let r = run(&["isometry", file.to_str().unwrap(), "--p", "3"], None);
    assert_eq!(r.status.code(), Some(0));
}

#[test]
fn malformed_files_report_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    let out = dir.path().join("err.json");
    std::fs::write(&file, "degree 3\n(0 1\n").unwrap();
    let r = run(&["isometry", file.to_str().unwrap(), "--p", "3", "--json", out.to_str().unwrap()], None);
    assert_eq!(r.status.code(), Some(2));
    let err = json(&out);
    assert_eq!(err["error"], "ParseError");
    assert_eq!(err["line"], 2);
}

#[test]
fn unknown_groups_and_bad_primes_are_input_errors() {
    assert_eq!(run(&["info", "m11"], None).status.code(), Some(2));
    assert_eq!(run(&["blocks", "a5", "--p", "4"], None).status.code(), Some(2));
}

#[test]
fn informational_commands_succeed() {
    let r = run(&["chartab", "a5", "--format", "tsv"], None);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&r.stdout).lines().count(), 6);
    let r = run(&["blocks", "a5", "--p", "5", "--sections"], None);
    assert!(String::from_utf8_lossy(&r.stdout).contains("principal: defect 1, k = 4"));
    let r = run(&["hyperfocal", "a5xc5", "--p", "5"], None);
    assert!(String::from_utf8_lossy(&r.stdout).contains("|P̃| = 5"));
    let r = run(&["fusion-check", "sl28c3", "--p", "3"], None);
    assert_eq!(r.status.code(), Some(0));
}
