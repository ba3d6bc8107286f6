use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_real-gersten");

fn run(argv: &[String]) -> (String, i32) {
    let out = Command::new(BIN).args(argv).env_remove("REAL_GERSTEN_HEIGHT_BOUND").output().expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 output"), out.status.code().expect("exit code"))
}

fn run_strs(argv: &[&str]) -> (Value, i32) {
    let argv: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
    let (out, code) = run(&argv);
    (serde_json::from_str(&out).unwrap_or_else(|e| panic!("{argv:?}: {e}\n{out}")), code)
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// `(name, argv, expected exit)` for every `*.cmd.json`.
fn golden_cases() -> Vec<(String, Vec<String>, i32)> {
    let mut cases = Vec::new();
    for entry in fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let Some(name) = path.file_name().unwrap().to_str().unwrap().strip_suffix(".cmd.json") else { continue };
        let cmd: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let argv = cmd["argv"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
        cases.push((name.to_string(), argv, cmd["exit"].as_i64().unwrap() as i32));
    }
    cases.sort();
    cases
}

/// Set `REAL_GERSTEN_BLESS=1` to rewrite the expected outputs.
#[test]
fn golden_outputs() {
    let bless = std::env::var("REAL_GERSTEN_BLESS").is_ok_and(|v| v == "1");
    let cases = golden_cases();
    assert!(cases.len() >= 20);
    for (name, argv, exit) in cases {
        let (out, code) = run(&argv);
        assert_eq!(code, exit, "{name}: exit code\n{out}");
        let path = golden_dir().join(format!("{name}.out.json"));
        if bless {
            fs::write(&path, &out).unwrap();
        } else {
            let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
            assert_eq!(out, want, "{name}: output differs from golden file");
        }
    }
}

/// The argument vector recorded in a payload's `request`.
fn replay_argv(request: &Value) -> Vec<String> {
    let obj = request.as_object().unwrap();
    let mut argv = vec![obj["command"].as_str().unwrap().to_string()];
    if let Some(b) = obj.get("battery") {
        argv.push(b.as_str().unwrap().to_string());
    }
    for (k, v) in obj {
        if k == "command" || k == "battery" {
            continue;
        }
        match v {
            Value::Bool(true) => argv.push(format!("--{k}")),
            Value::String(s) => argv.extend([format!("--{k}"), s.clone()]),
            other => argv.extend([format!("--{k}"), other.to_string()]),
        }
    }
    argv
}

#[test]
fn reports_replay_from_their_request() {
    for (name, argv, exit) in golden_cases() {
        if exit != 0 {
            continue;
        }
        let (out, _) = run(&argv);
        let report: Value = serde_json::from_str(&out).unwrap();
        let replay = replay_argv(&report["payload"]["request"]);
        let (again, code) = run(&replay);
        assert_eq!(code, 0, "{name}: replay {replay:?} failed\n{again}");
        assert_eq!(again, out, "{name}: replay {replay:?} differs");
    }
}

#[test]
fn residue_forms_feed_back_into_witt() {
    let (r, code) = run_strs(&["residue", "--form", r#"["t", "t^2-2", "-(t+1)"]"#, "--scheme", "p1"]);
    assert_eq!(code, 0);
    let residues = r["payload"]["residue"].as_object().unwrap();
    assert_eq!(residues.len(), 4);
    for (key, form) in residues {
        let src = form.to_string();
        let (w, code) = run_strs(&["witt", "--form", &src]);
        assert_eq!(code, 0, "{key}: {w}");
        assert_eq!(&w["payload"]["form"], form, "{key}");
        assert_eq!(w["payload"]["signature"]["basis"], form["basis"]);
    }
}

#[test]
fn step_signatures_feed_back_into_residue() {
    let (w, _) = run_strs(&["witt", "--field", "Q(t)", "--form", r#"["t*(t-1)"]"#]);
    let body = w["payload"]["signature"]["body"].to_string();
    // a jump of -2 at 0 and of +2 at 1, seen from the right
    let (r0, code) = run_strs(&["residue", "--step", &body, "--point", "t"]);
    assert_eq!(code, 0, "{r0}");
    let (r1, _) = run_strs(&["residue", "--step", &body, "--point", "t-1"]);
    let (f0, _) = run_strs(&["residue", "--form", r#"["t*(t-1)"]"#, "--point", "t"]);
    assert_eq!(f0["payload"]["residue"]["t"]["entries"], serde_json::json!(["-1"]));
    assert_eq!(r0["payload"]["residue"]["t"]["entries"], serde_json::json!([-2]));
    assert_eq!(r1["payload"]["residue"]["t - 1"]["entries"], serde_json::json!([2]));
}

#[test]
fn transferred_forms_feed_back_into_witt() {
    let (t, code) = run_strs(&["transfer", "--ext", "x^2-2", "--form", r#"["x"]"#]);
    assert_eq!(code, 0);
    let result = t["payload"]["result"].to_string();
    let (w, _) = run_strs(&["witt", "--form", &result]);
    assert_eq!(w["payload"]["signature"]["body"]["entries"], serde_json::json!([0]));
    assert_eq!(w["payload"]["rank"], 2);
}

#[test]
fn documented_examples() {
    let (c, code) = run_strs(&["complex", "--scheme", "P1", "--base", "realclosure", "--bundle", "O(1)"]);
    assert_eq!(code, 0);
    assert_eq!(c["status"], "ok");
    assert_eq!(c["payload"]["h0"]["rank"], 0);
    assert_eq!(c["payload"]["h1"]["torsion"], serde_json::json!([2]));
    let (t, code) = run_strs(&["transfer", "--ext", "x^2-2", "--phi", "[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(t["payload"]["result"], serde_json::json!([2]));
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let argv: Vec<String> = ["verify", "all", "--seed", "42", "--cases", "500"].iter().map(|s| s.to_string()).collect();
    let (a, code) = run(&argv);
    assert_eq!(code, 0, "{a}");
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["passed"], true);
    assert_eq!(v["payload"]["failed"], 0);
    assert_eq!(v["payload"]["batteries"].as_array().unwrap().len(), 8);
    let (b, _) = run(&argv);
    assert_eq!(a, b);
}

#[test]
fn bm_mirrors_complex() {
    for argv in [
        &["--scheme", "P1", "--base", "realclosure", "--bundle", "O(1)"][..],
        &["--scheme", "p1", "--bundle", "O(-2)"],
        &["--scheme", "a1", "--base", "realclosure"],
        &["--scheme", "spec", "--ext", "x^2-2"],
    ] {
        let (c, _) = run_strs(&[&["complex"], argv].concat());
        let (b, _) = run_strs(&[&["bm"], argv].concat());
        for key in ["scheme", "dualizing", "h0", "h1", "bm_labels"] {
            assert_eq!(c["payload"][key], b["payload"][key], "{argv:?}: {key}");
        }
    }
}

#[test]
fn timing_is_reported_only_on_request() {
    let (plain, _) = run_strs(&["complex", "--scheme", "a1"]);
    assert!(plain["timing_ms"].is_null());
    let (timed, _) = run_strs(&["complex", "--scheme", "a1", "--timing"]);
    assert!(timed["timing_ms"].is_u64());
    assert_eq!(plain["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn height_bound_comes_from_the_environment() {
    let args = ["realize", "--field", "Q[x]/(x^3-21x^2+110x+1)", "--w", "[2,2,-2]"];
    let out = Command::new(BIN).args(args).env("REAL_GERSTEN_HEIGHT_BOUND", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["code"], "search_exhausted");
    let (ok, code) = run_strs(&args);
    assert_eq!(code, 0);
    assert_eq!(ok["payload"]["signature"]["body"]["entries"], serde_json::json!([2, 2, -2]));
}

#[test]
fn errors_carry_code_and_message() {
    for (argv, code) in [
        (&["transfer", "--ext", "x^2-1", "--phi", "[1,1]"][..], "not_irreducible"),
        (&["transfer", "--ext", "x^2-2", "--phi", "[1]"], "invalid_input"),
        (&["witt", "--field", "Q(t)", "--form", "[\"t\"]", "--op", "hasse"], "field_mismatch"),
        (&["residue", "--form", "[\"t\"]", "--point", "t", "--uniformizer", "t^2"], "invalid_uniformizer"),
        (&["complex", "--scheme", "a1", "--ext", "x^2-2"], "invalid_input"),
        (&["witt", "--form", "[1]", "--nope"], "usage"),
    ] {
        let (v, exit) = run_strs(argv);
        assert_eq!(exit, 2, "{argv:?}");
        assert_eq!(v["status"], "error");
        assert_eq!(v["payload"]["code"], code, "{argv:?}: {v}");
        assert!(v["payload"]["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}
