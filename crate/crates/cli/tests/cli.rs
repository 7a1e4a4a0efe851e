use std::process::{Command, Output};

use serde_json::Value;

fn virasoro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_virasoro")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = virasoro(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn bracket_includes_the_central_term() {
    let o = virasoro(&["bracket", "L2", "L-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-4*L0 + 1/2*C");
    assert_eq!(json(&["bracket", "L1", "L-1"])["result"], "-2*L0");
}

#[test]
fn normal_order_respects_the_term_limit() {
    let ok = virasoro(&["normal-order", "L2 L-2"]);
    assert_eq!(ok.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_virasoro"))
        .args(["normal-order", "L3 L3 L-3 L-3"])
        .env("VIRASORO_MAX_PBW_TERMS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_virasoro"))
        .args(["normal-order", "L1"])
        .env("VIRASORO_MAX_PBW_TERMS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verma_dims_are_partition_numbers() {
    let o = virasoro(&["dims", "--module", "verma:lambda=0,h=0,depth=6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 1 2 3 5 7 11");
    let v = json(&["dims", "--module", "verma:lambda=0,h=0,depth=6"]);
    assert_eq!(v["dims"]["-6"], 11);
    assert_eq!(v["incomplete"].as_array().unwrap().len(), 0);
}

#[test]
fn classify_reports_bounded_multiplicities() {
    let v = json(&["classify", "--module", "A:a=1/2,b=3"]);
    assert_eq!(v["verdict"]["kind"], "UniformlyBounded");
    assert_eq!(v["verdict"]["N"], 1);
}

#[test]
fn check_axioms_passes_on_built_modules() {
    for spec in ["A:a=1/3,b=2", "Aexc:a=0", "Bexc:a=1", "dual(A:a=0,b=1)", "verma:lambda=1,h=1/2"] {
        let v = json(&["check-axioms", "--module", spec]);
        assert_eq!(v["violations"].as_array().unwrap().len(), 0, "{spec}");
    }
}

#[test]
fn domain_errors_exit_with_one() {
    for args in [
        &["dims", "--module", "A:a=1/2"][..],
        &["dims", "--module", "nonsense"],
        &["paper-example", "--a", "2"],
        &["check-axioms", "--module", "A:a=0,b=0", "--gen-range", "1"],
        &["frobnicate"],
    ] {
        let o = virasoro(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = ["realize", "--module", "sum(A:a=1/2,b=0;dual(A:a=1/2,b=1))", "--window", "-4..4", "--format", "json"];
    let first = virasoro(&args);
    let second = virasoro(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&virasoro(&["bracket", "L3", "L-3"]));
    assert_eq!(json(&["bracket", "L3", "L-3"])["result"], text.trim());
}

#[test]
fn out_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("virasoro-cli-test-{}.json", std::process::id()));
    let o = virasoro(&["classify", "--module", "A:a=1/2,b=0", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["verdict"]["kind"], "UniformlyBounded");
}

#[test]
fn paper_example_finds_the_trivial_factor() {
    for a in ["1/2", "1/3"] {
        let v = json(&["paper-example", "--a", a, "--window", "-4..4", "--depth", "6"]);
        assert_eq!(v["classification"]["verdict"]["kind"], "ContainsTrivialFactor", "a = {a}");
        assert_eq!(v["dims"]["0"], 1);
    }
}
