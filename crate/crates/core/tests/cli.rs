//! The `isreconf` binary: exit codes, JSON output and file round trips.

use std::process::{Command, Output};

use serde_json::Value;

fn isreconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isreconf")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.ends_with('\n'));
    serde_json::from_str(&text).unwrap()
}

#[test]
fn decide_exit_codes() {
    let yes = isreconf(&["decide", "fixture:fig1"]);
    assert_eq!(yes.status.code(), Some(0));
    let doc = json(&yes);
    assert_eq!(doc["answer"], "YES");
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["stats"]["resolvedInternally"], 1);

    let no = isreconf(&["decide", "fixture:c6"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json(&no)["certificate"]["kind"], "unresolvable-cycle");

    let rejected = isreconf(&["decide", "fixture:claw"]);
    assert_eq!(rejected.status.code(), Some(2));
    assert_eq!(json(&rejected)["certificate"]["center"], "x");

    let forced = isreconf(&["decide", "fixture:claw", "--force-oracle"]);
    assert_eq!(forced.status.code(), Some(0));

    assert_eq!(isreconf(&["decide", "/no/such/file.json"]).status.code(), Some(3));
    assert_eq!(isreconf(&["decide"]).status.code(), Some(3));
    assert_eq!(isreconf(&["decide", "fixture:p4", "--model", "XX"]).status.code(), Some(3));
}

#[test]
fn size_mismatch_is_no() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mismatch.json");
    std::fs::write(&path, r#"{"graph": "a b\nb c\n", "I": ["a", "c"], "J": ["b"], "model": "TS"}"#).unwrap();
    let out = isreconf(&["decide", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["certificate"]["kind"], "size-mismatch");

    std::fs::write(&path, r#"{"graph": "a b\nb c\n", "I": ["a", "b"], "J": ["a", "c"], "model": "TS"}"#).unwrap();
    assert_eq!(isreconf(&["decide", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn oracle_exit_codes() {
    assert_eq!(isreconf(&["oracle", "fixture:claw"]).status.code(), Some(0));
    assert_eq!(isreconf(&["oracle", "fixture:claw", "--model", "TS"]).status.code(), Some(1));
    let capped = isreconf(&["oracle", "fixture:fig1", "--cap", "2"]);
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(json(&capped)["answer"], "INCONCLUSIVE");
}

#[test]
fn emitted_certificate_validates() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("fig1-cert.json");
    let out = isreconf(&["decide", "fixture:fig1", "--emit-certificate", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let check = isreconf(&["validate", "fixture:fig1", cert.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["valid"], true);

    // a truncated certificate no longer reaches J
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    doc["moves"].as_array_mut().unwrap().pop();
    std::fs::write(&cert, doc.to_string()).unwrap();
    let check = isreconf(&["validate", "fixture:fig1", cert.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
    assert_eq!(json(&check)["valid"], false);
}

#[test]
fn crosscheck_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["crosscheck", "--count", "40", "--max-n", "9", "--seed", "3", "--out", dir.path().to_str().unwrap()];
    let a = isreconf(&args);
    let b = isreconf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("counterexamples: none"), "{text}");

    let empty = isreconf(&["crosscheck", "--count", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(String::from_utf8(empty.stdout).unwrap().contains("count=0"));
}

#[test]
fn gen_fixture_and_stats() {
    let gen = isreconf(&["gen", "--count", "3", "--seed", "5"]);
    assert_eq!(gen.status.code(), Some(0));
    let text = String::from_utf8(gen.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert_eq!(gen.stdout, isreconf(&["gen", "--count", "3", "--seed", "5"]).stdout);

    // a generated instance feeds straight back into decide
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    std::fs::write(&path, text.lines().next().unwrap()).unwrap();
    let code = isreconf(&["decide", path.to_str().unwrap()]).status.code();
    assert!(matches!(code, Some(0) | Some(1)));

    let list = String::from_utf8(isreconf(&["fixture"]).stdout).unwrap();
    assert_eq!(list.lines().collect::<Vec<_>>(), ["p3", "p4", "p5", "c6", "claw", "fig1"]);
    let graph = String::from_utf8(isreconf(&["fixture", "c6", "--graph"]).stdout).unwrap();
    assert!(graph.contains("v0 v1"));
    assert_eq!(isreconf(&["fixture", "nope"]).status.code(), Some(3));

    let stats = isreconf(&["stats", "fixture:c6", "--k", "3"]);
    assert_eq!(
        String::from_utf8(stats.stdout).unwrap(),
        "k,model,nodes,components,max_diameter\n3,TS,2,2,0\n3,TJ,2,2,0\n"
    );
}
