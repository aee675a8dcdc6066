mod common;

use std::fs;
use std::process::{Command, Output};

use common::data;

fn gentri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentri"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn orbits_verb() {
    let o = gentri(&["orbits", "data/thirteen_blocks.gtq"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lengths: Vec<&str> = out
        .lines()
        .filter_map(|l| l.trim().strip_prefix("n="))
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    lengths.sort_unstable();
    assert_eq!(lengths, ["1", "15", "17", "2", "2"]);
    assert!(out.contains("border: {P1:v}"));
}

#[test]
fn dim_verb() {
    let o = gentri(&[
        "dim",
        "data/type3_type5_delta.gtq",
        "-w",
        "data/type3_type5_delta.wts",
        "--triangulation",
    ]);
    assert_eq!(stdout(&o), "36*m + n + 13\n");
    let o = gentri(&[
        "dim",
        "data/type3_type5.gtq",
        "-w",
        "data/type3_type5.wts",
        "--set",
        "m=1",
        "--set",
        "n=2",
    ]);
    assert_eq!(stdout(&o), "51\n");
    let o = gentri(&["dim", "data/type3_type5.gtq", "--triangulation"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn roundtrip_verb() {
    let o = gentri(&[
        "roundtrip",
        "data/type3_type5.gtq",
        "-w",
        "data/type3_type5.wts",
        "--set",
        "m=2",
        "--set",
        "n=3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS: isomorphism found"));
    assert!(out.contains("witness:"));
}

#[test]
fn basis_and_relations_verbs() {
    let o = gentri(&[
        "basis",
        "data/seven_blocks.gtq",
        "-w",
        "data/seven_blocks.wts",
        "--set",
        "m=1",
        "--set",
        "n=1",
        "--set",
        "p=2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("MISMATCH"));
    let o = gentri(&[
        "basis",
        "data/two_loops.gtq",
        "-w",
        "data/two_loops.wts",
        "--vertex",
        "A:v",
        "--triangulation",
    ]);
    assert!(stdout(&o).starts_with("vertex A:v (regular): 12 elements"));
    let o = gentri(&[
        "relations",
        "data/type3_type5.gtq",
        "-w",
        "data/type3_type5.wts",
        "--set",
        "m=1",
        "--set",
        "n=2",
        "--dblprime",
    ]);
    assert!(stdout(&o).contains("family=lambda-dblprime"));
    let o = gentri(&[
        "relations",
        "data/type3_type5.gtq",
        "-w",
        "data/type3_type5.wts",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        gentri(&["orbits", "data/missing.gtq"]).status.code(),
        Some(2)
    );
    assert_eq!(gentri(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gtq");
    fs::write(&bad, "block A type I\nglue A.1 Z.1\n").unwrap();
    let o = gentri(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        gentri(&["mutate", "data/two_iv.gtq", "--stage", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn validation_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("open.gtq");
    fs::write(&p, "block A type II\nblock B type I\nglue A.1 B.1\n").unwrap();
    let o = gentri(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("A.2 is unpaired"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["orbits", "data/seven_blocks.gtq"],
        vec!["delta", "data/thirteen_blocks.gtq"],
        vec![
            "mutate",
            "data/seven_blocks.gtq",
            "--set",
            "m=1",
            "--set",
            "n=1",
            "--set",
            "p=2",
        ],
        vec!["surface", "data/two_marked_folds.surf"],
        vec!["dot", "data/type3_type5.gtq"],
        vec!["iso", "data/tetra_marked.gtq", "data/tetra_marked.gtq"],
    ] {
        let a = gentri(&args);
        let b = gentri(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn file_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let gtq = dir.path().join("s.gtq");
    let o = gentri(&[
        "surface",
        "data/two_marked_folds.surf",
        "-o",
        gtq.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&gtq).unwrap();
    assert!(text.contains("# two-marked-folds on 5 2 3 6 4 -> T1"));
    let o = gentri(&["iso", gtq.to_str().unwrap(), "data/type3_type5.gtq"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic"));
    let o = gentri(&["iso", gtq.to_str().unwrap(), "data/two_iv.gtq"]);
    assert_eq!(o.status.code(), Some(1));
    let dot = dir.path().join("q.dot");
    gentri(&["dot", "data/two_iv.gtq", "-o", dot.to_str().unwrap()]);
    assert!(fs::read_to_string(&dot).unwrap().contains("D1:tau *"));
    let delta = dir.path().join("d.gtq");
    gentri(&[
        "delta",
        "data/type3_type5.gtq",
        "-o",
        delta.to_str().unwrap(),
    ]);
    let o = gentri(&["validate", delta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_bundled_examples() {
    let o = gentri(&["verify", "data"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_reports_corrupted_weights() {
    let dir = tempfile::tempdir().unwrap();
    for e in fs::read_dir(data("")).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    fs::write(dir.path().join("type3_type5.wts"), "m P:in 0\n").unwrap();
    let o = gentri(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL type3_type5 weights"));
    let empty = tempfile::tempdir().unwrap();
    assert_eq!(
        gentri(&["verify", empty.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
