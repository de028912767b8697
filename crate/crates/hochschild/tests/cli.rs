use std::path::PathBuf;
use std::process::Command;

use hochschild::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn hh(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["hh".to_string()];
    argv.extend(args.iter().map(|a| a.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s:?}"))
}

#[test]
fn dims_of_dual_numbers_mod_two() {
    let (code, out, _) = hh(&["dims", &fixture("dual2.json"), "--max", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"dims":[2,2,2,2,2]}"#);
}

#[test]
fn taft_r_alpha_passes() {
    let (code, out, _) = hh(&["hopf", "check-r", &fixture("taft4.json"), "--alpha", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"], "pass");
}

#[test]
fn gerstenhaber_suite_passes_and_is_deterministic() {
    let args = ["verify", &fixture("dual2.json"), "--suite", "gerstenhaber", "--seed", "7", "--trials", "50"];
    let (code, out, _) = hh(&args);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["pass"], true);
    assert_eq!(hh(&args).1, out);
}

#[test]
fn binary_matches_in_process_run() {
    let path = fixture("dualq.json");
    let out = Command::new(env!("CARGO_BIN_EXE_hh")).args(["dims", &path]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), hh(&["dims", &path]).1);
}

#[test]
fn check_failure_exits_one_and_names_the_identity() {
    let (code, out, err) = hh(&["check", &fixture("exterior1.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("Δ(x·x)"));
    assert!(json(&out)["error"].as_str().unwrap().contains("Δ(x·x)"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hh(&["dims"]).0, 2);
    assert_eq!(hh(&["frobnicate"]).0, 2);
    assert_eq!(hh(&["dims", "/nonexistent.json"]).0, 2);
    assert_eq!(hh(&["cup", &fixture("dual2.json"), "--deg", "1", "1", "--class", "0", "9"]).0, 2);
    assert_eq!(hh(&["verify", &fixture("dual2.json"), "--suite", "nope"]).0, 2);
    assert_eq!(hh(&["hopf", "embed", &fixture("dual2.json")]).0, 2);
    assert_eq!(hh(&["sq", &fixture("dual2.json"), "--deg", "1", "--class", "0"]).0, 2);
    assert_eq!(hh(&["bracket", &fixture("dual2.json"), "--deg", "0", "0", "--class", "0", "0"]).0, 2);
}

#[test]
fn trivial_r_on_kz2_and_alpha_only_for_taft() {
    let (code, out, _) = hh(&["hopf", "check-r", &fixture("kz2.json")]);
    assert_eq!((code, json(&out)["result"].clone()), (0, "pass".into()));
    let (code, _, _) = hh(&["hopf", "check-r", &fixture("kz2.json"), "--alpha", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn products_and_brackets() {
    let f = fixture("dual2.json");
    let (code, out, _) = hh(&["bracket", &f, "--deg", "0", "1", "--class", "1", "0"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["degree"], 0);
    assert_eq!(v["zero"], false);
    let (code, out, _) = hh(&["cup", &f, "--deg", "1", "1", "--class", "0", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["degree"], 2);
    let (code, out, _) = hh(&["loop-bracket", &f, "--deg", "1", "1", "--class", "0", "1"]);
    assert_eq!(code, 0);
    assert_ne!(json(&out)["sign_vs_bar"], "none");
}

#[test]
fn extensions_convert_and_compare() {
    let f = fixture("dual2.json");
    let (code, out, _) = hh(&["ext", "convert", &f, "--deg", "2", "--class", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["roundtrip"], true);
    let (_, out, _) = hh(&["ext", "compare", &f, "--deg", "1", "--class", "1", "1"]);
    assert_eq!(json(&out)["equal"], true);
    let (_, out, _) = hh(&["ext", "compare", &f, "--deg", "1", "--class", "0", "1"]);
    assert_eq!(json(&out)["equal"], false);
}

#[test]
fn hopf_and_morita_commands() {
    let (code, out, _) = hh(&["hopf", "embed", &fixture("kz2.json"), "--max", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["split_mono"], true);
    let (code, out, _) = hh(&["hopf", "vanish", &fixture("taft4.json")]);
    assert_eq!((code, json(&out)["pass"].clone()), (0, true.into()));
    let (code, out, _) = hh(&["morita", &fixture("dual2.json"), "--n", "2", "--max", "2"]);
    assert_eq!((code, json(&out)["equal"].clone()), (0, true.into()));
    let (code, out, _) = hh(&["verify", &fixture("kz2.json"), "--suite", "braided-vanish"]);
    assert_eq!((code, json(&out)["pass"].clone()), (0, true.into()));
    let (code, _, _) = hh(&["verify", &fixture("dual2.json"), "--suite", "retakh", "--trials", "4"]);
    assert_eq!(code, 0);
    let (code, _, _) = hh(&["verify", &fixture("trunc3_gf5.json"), "--suite", "schwede"]);
    assert_eq!(code, 0);
}
