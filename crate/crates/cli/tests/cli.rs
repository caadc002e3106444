use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn wexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wexp")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = wexp(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timings");
            map.remove("timing_ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[test]
fn check_reports_verdicts_and_exit_codes() {
    let (v, code) = json(&["check", "--group", "A:5", "--predicate", "wexp-solvable"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("true"), 0));
    assert_eq!(v["group"]["order"], 60);
    assert_eq!(v["predicate"], "wexp-solvable");
    for key in ["certificate", "timings", "tool_version", "caps"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let (v, code) = json(&["check", "--group", "S:5", "--predicate", "minimal-wexp-nonsolvable"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("true"), 0));

    let (v, code) = json(&["check", "--group", "PSL2:13", "--predicate", "wexp-solvable"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("false"), 0));
    assert_eq!(v["certificate"]["witness"]["subgroup_order"], 12);

    let (v, _) = json(&["check", "--group", "S:4", "--predicate", "exponent"]);
    assert_eq!(v["value"], 12);
}

#[test]
fn unknown_verdicts_exit_3() {
    let (v, code) = json(&["check", "--group", "S:9", "--predicate", "exp-simple"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("unknown_over_cap"), 3));
    let (v, code) = json(&[
        "check", "--group", "A:6", "--predicate", "wexp-solvable", "--lattice-cap", "100",
    ]);
    assert_eq!((v["verdict"].as_str(), code), (Some("unknown_over_cap"), 3));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["check", "--group", "S:x", "--predicate", "wexp-solvable"][..],
        &["check", "--group", "A:5", "--predicate", "no-such-thing"],
        &["check", "--group", "A:5", "--predicate", "exponential"],
        &["check", "--group", "S:4", "--predicate", "exponential", "--subgroup", "(1 2"],
        &["check", "--group", "A:4", "--predicate", "exponential", "--subgroup", "(1 2)"],
        &["check", "--group", "PSL2:6", "--predicate", "wexp-solvable"],
        &["check", "--group", "/no/such/file", "--predicate", "wexp-solvable"],
    ] {
        let out = wexp(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn subgroup_predicates() {
    let (v, _) = json(&["check", "--group", "S:3", "--predicate", "exponential", "--subgroup", "(2 3)"]);
    assert_eq!(v["verdict"], "false");
    let (v, _) = json(&["check", "--group", "S:3", "--predicate", "weakly-exponential", "--subgroup", "(2 3)"]);
    assert_eq!(v["verdict"], "true");
    // exp(S3) = 6 divides the index of the trivial subgroup
    let (v, _) = json(&["check", "--group", "S:3", "--predicate", "exp-trivial", "--subgroup", "()"]);
    assert_eq!(v["verdict"], "true");
    // exp(S4) = 12 does not divide 3
    let (v, _) = json(&["check", "--group", "S:4", "--predicate", "exp-trivial", "--subgroup", "(1 2 3 4); (1 3)"]);
    assert_eq!(v["verdict"], "false");
}

#[test]
fn survey_density_and_lattice() {
    let (v, code) = json(&["survey-psl", "--qmax", "13"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["status"] == "AGREE"));
    let eight = rows.iter().find(|r| r["q"] == 8).unwrap();
    assert_eq!((eight["classifier"].as_bool(), eight["mode"].as_str()), (Some(true), Some("exhaustive")));

    let (v, _) = json(&["density", "--nmax", "100"]);
    let last = v["rows"].as_array().unwrap().last().unwrap().clone();
    assert_eq!((last["n"].as_u64(), last["w"].as_u64(), last["pi"].as_u64()), (Some(100), Some(8), Some(25)));
    assert!((last["ratio"].as_f64().unwrap() - 0.32).abs() < 1e-12);

    let (v, _) = json(&["lattice", "--group", "A:5", "--what", "maximals"]);
    let mut idx: Vec<u64> = v["subgroups"].as_array().unwrap().iter().map(|e| e["group_index"].as_u64().unwrap()).collect();
    idx.sort();
    assert_eq!(idx, vec![5, 6, 10]);

    let text = String::from_utf8(wexp(&["survey-psl", "--qmax", "9"]).stdout).unwrap();
    assert!(text.contains("5 rows, 0 disagreements"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["check", "--group", "PSL2:11", "--predicate", "wexp-solvable"][..],
        &["survey-psl", "--qmax", "17"],
        &["lattice", "--group", "S:4", "--what", "subgroups"],
    ] {
        let (mut a, _) = json(args);
        let (mut b, _) = json(args);
        strip_timings(&mut a);
        strip_timings(&mut b);
        assert_eq!(a, b, "{args:?}");
    }
}

fn verify(text: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wexp"))
        .args(["verify-certificate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn certificates_round_trip() {
    for args in [
        &["check", "--group", "S:7", "--predicate", "wexp-solvable", "--json"][..],
        &["check", "--group", "PSL2:11", "--predicate", "minimal-wexp-nonsolvable", "--json"],
        &["check", "--group", "S:4", "--predicate", "exp-simple", "--json"],
        &["survey-psl", "--qmax", "49", "--json"],
    ] {
        let report = wexp(args).stdout;
        let out = verify(&report);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok:"));
    }
    // a corrupted witness is refused
    let report = wexp(&["check", "--group", "S:5", "--predicate", "wexp-solvable", "--json"]).stdout;
    let mut v: Value = serde_json::from_slice(&report).unwrap();
    v["certificate"]["witness"]["y"]["cycles"] = Value::from("()");
    v["certificate"]["witness"]["y"]["images"] = Value::from(vec![1, 2, 3, 4, 5]);
    let out = verify(v.to_string().as_bytes());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn group_files_are_ingested() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("s5.group");
    std::fs::write(&path, "degree: 5\r\n# S5 from two generators\n(1 2 3 4 5)\n\n(1 2)\n").unwrap();
    let (v, _) = json(&["check", "--group", path.to_str().unwrap(), "--predicate", "wexp-solvable"]);
    assert_eq!(v["group"]["order"], 120);
    assert_eq!(v["verdict"], "false");
}
