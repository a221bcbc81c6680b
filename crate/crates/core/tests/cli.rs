use std::io::{Cursor, Write};
use std::process::{Command, Stdio};

use serde_json::Value;
use steiner_core::cli::{run, Outcome};

fn steiner(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["steiner"];
    argv.extend_from_slice(args);
    run(argv, &mut Cursor::new(stdin.as_bytes().to_vec()))
}

fn result(o: &Outcome) -> Value {
    let v: Value = serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout));
    v["result"].clone()
}

fn gallery(name: &str, depth: Option<&str>) -> String {
    let mut args = vec!["gallery", name];
    if let Some(d) = depth {
        args.extend(["--depth", d]);
    }
    let o = steiner(&args, "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    o.stdout
}

const SQUARE: &str = r#"{"dim": 1, "cells": [{"id": "a", "interval": [0, 1]}],
 "fields": {"v": {"a": {"grad": [0], "off": 1}}}}"#;

#[test]
fn square_perimeter_is_four() {
    let o = steiner(&["perimeter", "-", "--mode", "F"], SQUARE);
    assert_eq!(o.code, 0);
    let r = result(&o);
    assert_eq!(r["total"], "4");
    assert_eq!(r["oracle"], "4");
    assert_eq!(r["agrees"], true);
}

#[test]
fn step_rigidity_report() {
    let o = steiner(&["rigidity"], &gallery("fig1a", None));
    let r = result(&o);
    assert_eq!(r["verdict"], "non_rigid");
    assert_eq!(r["eps"], "1");
    assert_eq!(r["t"], "1/2");
    assert_eq!(r["witness"]["perimeter"], "6");
    let strict = steiner(&["rigidity", "--expect", "rigid"], &gallery("fig1a", None));
    assert_eq!(strict.code, 2);
    let fine = steiner(&["rigidity", "--expect", "rigid"], &gallery("casetta", None));
    assert_eq!(fine.code, 0);
}

#[test]
fn reports_are_reproducible() {
    let scene = gallery("example11", Some("2"));
    let a = steiner(&["rigidity", "--class", "polyhedral"], &scene);
    let b = steiner(&["rigidity", "--class", "polyhedral"], &scene);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn class_hints() {
    let planar = steiner(&["rigidity", "--class", "planar"], &gallery("casetta", None));
    assert_eq!(planar.code, 1);
    assert!(planar.stderr.contains("does not apply"));
    let nv = steiner(&["rigidity", "--class", "no-vertical"], &gallery("salsicciotto", None));
    assert_eq!(result(&nv)["path"], "no_vertical");
    assert_eq!(result(&nv)["verdict"], "rigid");
}

#[test]
fn equality_verification_exit_codes() {
    let ok = steiner(&["verify-equality"], &gallery("cantor", Some("3")));
    assert_eq!(ok.code, 0);
    assert_eq!(result(&ok)["status"], "pass");
    assert_eq!(result(&ok)["oracle_agrees"], true);
    let lifted = r#"{"dim": 1,
 "cells": [{"id": "l", "interval": [0, "1/2"]}, {"id": "r", "interval": ["1/2", 1]}],
 "fields": {"v": {"l": {"grad": [0], "off": 1}, "r": {"grad": [0], "off": 2}},
            "b": {"l": {"grad": [0], "off": 0}, "r": {"grad": [0], "off": 1}}}}"#;
    let bad = steiner(&["verify-equality"], lifted);
    assert_eq!(bad.code, 2);
    assert_eq!(result(&bad)["perimeter_e"], "7");
    assert_eq!(result(&bad)["perimeter_f"], "6");
}

#[test]
fn witness_command() {
    let o = steiner(&["witness", "--plus", "c1", "--t", "10"], &gallery("fig1b", None));
    let r = result(&o);
    assert_eq!(r["equality"], true);
    assert_eq!(r["eps"], "inf");
    let too_far = steiner(&["witness", "--plus", "c1", "--t", "3/4"], &gallery("fig1a", None));
    assert_eq!(too_far.code, 1);
    let everything = steiner(&["witness", "--plus", "c0,c1"], &gallery("fig1a", None));
    assert!(everything.stderr.contains("no nontrivial cut"));
}

#[test]
fn connectivity_command() {
    let o = steiner(&["check-connect", "--k", "zero"], &gallery("fig1b", None));
    let r = result(&o);
    assert_eq!(r["disconnects"], true);
    assert_eq!(r["plus"], serde_json::json!(["c1"]));
    assert_eq!(r["indecomposable_f"], false);
    let casetta = steiner(&["check-connect", "--k", "zero+jump>0"], &gallery("casetta", None));
    assert_eq!(result(&casetta)["disconnects"], true);
}

#[test]
fn symmetrize_and_double_mode() {
    let o = steiner(&["--arithmetic", "double", "symmetrize"], &gallery("fig1a", None));
    let r = result(&o);
    assert_eq!(r["perimeter"], "6");
    assert_eq!(r["scene"]["arithmetic"], "double");
    let again = steiner(&["perimeter", "--mode", "U"], &serde_json::to_string(&r["scene"]).unwrap());
    assert_eq!(result(&again)["total"], "6");
}

#[test]
fn parse_errors_carry_lines() {
    let doc = "{\n  \"dim\": 1,\n  \"cells\": [{\"id\": \"a\", \"interval\": [0, 1]}],\n  \"extra\": true\n}";
    let o = steiner(&["perimeter"], doc);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 4"), "{}", o.stderr);
    let o = steiner(&["perimeter", "/nonexistent/scene.json"], "");
    assert_eq!(o.code, 1);
}

#[test]
fn side_outputs() {
    let dir = std::env::temp_dir().join(format!("steiner-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (svg, csv) = (dir.join("f.svg"), dir.join("f.csv"));
    let o = steiner(
        &["perimeter", "--mode", "F", "--svg", svg.to_str().unwrap(), "--csv", csv.to_str().unwrap()],
        &gallery("casetta", None),
    );
    assert_eq!(o.code, 0, "{}", o.stderr);
    let csv = std::fs::read_to_string(csv).unwrap();
    assert!(csv.starts_with("kind,id,measure,ac_term,jump_term,boundary_term,v_inf,v_sup,jump_essinf,crossable\n"));
    assert!(csv.lines().any(|l| l.starts_with("facet,") && l.ends_with(",0,false")));
    assert!(std::fs::read_to_string(svg).unwrap().contains("<polygon"));
}

#[test]
fn binary_pipeline() {
    let exe = env!("CARGO_BIN_EXE_steiner");
    let scene = Command::new(exe).args(["gallery", "cantor", "--depth", "3"]).output().unwrap();
    assert!(scene.status.success());
    let mut child = Command::new(exe)
        .arg("verify-equality")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&scene.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"status\": \"pass\""));
}
