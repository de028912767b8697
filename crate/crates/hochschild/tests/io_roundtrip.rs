use std::path::PathBuf;

use hochschild::io::{parse_algebra_file, serialize};
use hochschild::HhError;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn fixtures_round_trip_byte_identically() {
    for name in ["dual2.json", "dualq.json", "trunc3_gf5.json", "random3_q.json", "kz2.json", "kz3.json", "taft4.json"] {
        let text = fixture(name);
        let parsed = parse_algebra_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(serialize(&parsed.to_file()), text, "{name}");
    }
}

#[test]
fn key_order_does_not_matter_on_input() {
    let text = r#"{"mult":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],"unit":["1","0"],"basis":["1","x"],"dim":2,"field":{"p":2,"kind":"GF"}}"#;
    let parsed = parse_algebra_file(text).unwrap();
    assert_eq!(serialize(&parsed.to_file()), fixture("dual2.json"));
}

#[test]
fn exterior_fixture_fails_its_bialgebra_check() {
    match parse_algebra_file(&fixture("exterior1.json")) {
        Err(HhError::Axiom(msg)) => assert!(msg.contains("Δ(x·x)"), "{msg}"),
        other => panic!("expected an axiom failure, got {other:?}"),
    }
}

#[test]
fn non_prime_and_unknown_fields_are_rejected() {
    let text = fixture("dual2.json");
    assert!(matches!(parse_algebra_file(&text.replace("\"p\":2", "\"p\":4")), Err(HhError::InvalidField(_))));
    assert!(matches!(parse_algebra_file(&text.replace("\"p\":2", "\"p\":1")), Err(HhError::InvalidField(_))));
    assert!(parse_algebra_file(&text.replace("{\"kind\":\"GF\",\"p\":2}", "{\"kind\":\"Q\",\"p\":2}")).is_err());
}

#[test]
fn bad_antipode_and_counit_are_rejected() {
    let text = fixture("kz2.json");
    let counit = text.replace("\"counit\": [\"1\",\"1\"]", "\"counit\": [\"1\",\"0\"]");
    assert_ne!(counit, text);
    assert!(matches!(parse_algebra_file(&counit), Err(HhError::Axiom(_))));
}
