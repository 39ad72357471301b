//! The binary: outputs and exit codes.

use std::process::{Command, Output};

fn nilhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilhom")).args(args).env_remove("NILHOM_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_four_verifies() {
    let o = nilhom(&["table", "--n", "4", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2  ℤ^5 ⊕ ℤ_2\n"), "{text}");
    assert!(text.contains("3  ℤ^6 ⊕ ℤ_2\n"), "{text}");
}

#[test]
fn table_two() {
    let o = nilhom(&["table", "--n", "2"]);
    assert_eq!(stdout(&o), "H_k(nil_2; ℤ)\n0  ℤ\n1  ℤ\n");
}

#[test]
fn table_nine_hits_the_cap() {
    let o = nilhom(&["table", "--n", "9"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unfinished (5,5,5,5,5,5,5,5,5)"), "{err}");
}

#[test]
fn verify_mismatch_exits_two() {
    // the published n = 7 table misprints one entry
    let o = nilhom(&["table", "--n", "7", "--verify"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("H_17"), "{err}");
}

#[test]
fn summand_views() {
    assert_eq!(stdout(&nilhom(&["summand", "--w", "2,3,2,3", "--show", "profile"])), "H_2 = ℤ_2\n");
    assert_eq!(stdout(&nilhom(&["summand", "--w", "2,2,2", "--show", "profile"])), "0\n");
    let basis = stdout(&nilhom(&["summand", "--w", "2,4,7,5,4,2,5,7", "--show", "basis"]));
    assert!(basis.starts_with("(2,4,7,5,4,2,5,7): 192 monomials\n"), "{basis}");
    let boundary = stdout(&nilhom(&["summand", "--w", "2,3,2,3", "--show", "boundary"]));
    assert_eq!(boundary.lines().count(), 2);
    let trace = stdout(&nilhom(&["summand", "--w", "2,3,4,2,4", "--show", "trace"]));
    assert!(trace.contains("cone-two-two") && trace.ends_with("H = H_3 = ℤ_3\n"), "{trace}");
    let json = stdout(&nilhom(&["summand", "--w", "2,4,7,5,4,2,5,7", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["profile"][0]["degree"], 10);
    assert_eq!(v["profile"][0]["torsion"][0], serde_json::json!({"prime": 2, "power": 3, "count": 1}));
}

#[test]
fn orbit_views() {
    let o = stdout(&nilhom(&["orbit", "--w", "3,2,3,2"]));
    assert!(o.contains("canonical  (2,3,2,3)\nshift      +1\n"), "{o}");
    let o = stdout(&nilhom(&["orbit", "--w", "2,3,3,3,4"]));
    assert!(o.contains("canonical  (2,3,3,3,4)\n"), "{o}");
    let o = stdout(&nilhom(&["orbit", "--w", "1,2,3"]));
    assert!(o.contains("class      permutation\ncanonical  (1,2,3)\n"), "{o}");
}

#[test]
fn bad_input_exits_four() {
    for args in [
        &["summand", "--w", "2,2"][..],
        &["summand", "--w", "x,y"],
        &["orbit", "--w", "0,3,3"],
        &["table", "--n", "1"],
        &["table"],
        &["frobnicate"],
        &["verify", "--suite", "everything"],
    ] {
        assert_eq!(nilhom(args).status.code(), Some(4), "{args:?}");
    }
}

#[test]
fn verify_suites() {
    for suite in ["examples", "cups"] {
        let o = nilhom(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let o = nilhom(&["verify", "--suite", "lemmas", "--n-max", "5", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = nilhom(&["verify", "--suite", "tables", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn output_is_deterministic() {
    let a = nilhom(&["table", "--n", "6", "--format", "json", "--jobs", "1"]);
    let b = nilhom(&["table", "--n", "6", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}
