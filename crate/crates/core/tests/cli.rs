use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data")
}

fn mlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlab"))
        .args(args)
        .current_dir(data())
        .env_remove("MLAB_ENUM_BOUND")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn index_of_each_state() {
    for (state, want) in [("0", Value::from(0)), ("1", Value::from(1))] {
        let v = json(&mlab(&["index", "bracket1.coalg", state]));
        assert_eq!(v["output"]["index"], want);
    }
    let v = json(&mlab(&["index", "loop.coalg", "t"]));
    assert_eq!(v["output"]["index"], "inf");
}

#[test]
fn documents_are_byte_stable_without_timing() {
    let args = [
        "measure",
        "check",
        "bracket1.coalg",
        "chain2.alg",
        "chain2.alg",
        "phi_identity.json",
    ];
    let a = mlab(&args);
    let b = mlab(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["output"]["holds"], true);
    assert!(v.get("timing").is_none());
    let inputs = v["provenance"]["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 3);
    assert!(inputs.iter().all(|i| i["sha256"].as_str().unwrap().len() == 64));

    let timed = json(&mlab(&["--timing", "index", "bracket1.coalg", "1"]));
    assert!(timed["timing"]["millis"].is_number());
}

#[test]
fn measure_enum_and_count() {
    let v = json(&mlab(&[
        "measure",
        "enum",
        "bracket1.coalg",
        "chain2.alg",
        "chain2.alg",
        "--count-only",
    ]));
    let count = v["output"]["count"].as_u64().unwrap();
    let all = json(&mlab(&[
        "measure",
        "enum",
        "bracket1.coalg",
        "chain2.alg",
        "chain2.alg",
    ]));
    assert_eq!(all["output"]["measurings"].as_array().unwrap().len() as u64, count);
    assert!(count >= 1);
}

#[test]
fn universal_measuring_names() {
    let v = json(&mlab(&["umeas", "classify", "chain1.alg", "chain2.alg"]));
    assert_eq!(v["output"]["classification"]["name"]["kind"], "bracket");
    assert_eq!(v["output"]["classification"]["name"]["n"], 1);
    assert_eq!(v["output"]["name"], "⟨1⟩^");
    let v = json(&mlab(&["umeas", "classify", "chain2.alg", "point.alg"]));
    assert_eq!(v["output"]["classification"]["name"]["kind"], "n_infinity");
}

#[test]
fn dot_outputs() {
    let g = mlab(&["umeas", "graph", "chain1.alg", "chain2.alg", "--dot"]);
    assert!(g.status.success());
    let text = String::from_utf8(g.stdout).unwrap();
    assert!(text.starts_with("digraph measuring {"));
    assert!(text.trim_end().ends_with('}'));

    let d = mlab(&["dual", "coalg", "chain2.alg", "--dot"]);
    let text = String::from_utf8(d.stdout).unwrap();
    assert!(text.starts_with("digraph coalgebra {"));
    assert!(text.contains("shape=box"));
}

#[test]
fn parse_errors_exit_one_with_positions() {
    let out = mlab(&["index", "coalgebra idsucc {\n elements 0;\n step 0->9 }", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("3:10: UNKNOWN_ELEMENT"), "{err}");

    let out = mlab(&["index", "missing.coalg", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = mlab(&["index", "bracket1.coalg", "7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumeration_bound_refuses_with_exit_two() {
    let args = ["measure", "enum", "bracket1.coalg", "chain2.alg", "chain2.alg"];
    let out = Command::new(env!("CARGO_BIN_EXE_mlab"))
        .args(args)
        .current_dir(data())
        .env("MLAB_ENUM_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(out.stdout.is_empty());

    let mut flagged = vec!["--enum-bound", "2"];
    flagged.extend(args);
    assert_eq!(mlab(&flagged).status.code(), Some(2));
}

#[test]
fn c_initiality_commands() {
    let v = json(&mlab(&["cinitial", "check", "chain1.alg", "bracket1.coalg"]));
    assert_eq!(v["output"]["verdict"], "c_initial_on_family");
    let v = json(&mlab(&["cinitial", "terminal", "bracket1.coalg"]));
    assert_eq!(v["output"]["search"]["verdict"], "found");
    assert_eq!(
        v["output"]["algebra"],
        "algebra idsucc { elements 0 1; zero 0; succ 0->1 1->1 }"
    );
}

#[test]
fn every_subcommand_runs_on_the_sample_data() {
    let runs: &[&[&str]] = &[
        &["poset", "sub", "bracket2.coalg"],
        &["poset", "quot", "lasso.alg"],
        &["conv", "bracket1.coalg", "chain2.alg"],
        &["dual", "alg", "bracket2.coalg"],
        &["tensor", "bracket1.coalg", "chain2.alg", "--homs-into", "chain1.alg"],
        &["cinitial", "dualmap", "chain2.alg", "bracket2.coalg"],
        &["gf", "conv", "even.aut", "counter.gf"],
        &["gf", "count", "even.aut", "counter.gf", "constant.gf"],
    ];
    for args in runs {
        let out = mlab(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["command"][0], args[0]);
    }
}

#[test]
fn measure_compose_reads_documents() {
    let v = json(&mlab(&[
        "measure",
        "compose",
        "identity_measuring.json",
        "identity_measuring.json",
    ]));
    let out = &v["output"];
    assert!(out["coalgebra"].as_str().unwrap().starts_with("coalgebra idsucc"));
    // (1,1) has index 1, so it acts like state 1 of the factors
    assert_eq!(out["phi"]["(1,1)"]["2"], "1");
    assert_eq!(out["phi"]["(0,1)"]["2"], "0");
}
