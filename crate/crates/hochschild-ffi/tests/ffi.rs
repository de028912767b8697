use std::ffi::{CStr, CString};
use std::ptr;

use hochschild_ffi::*;

const DUAL: &str = r#"{"field":{"kind":"GF","p":2},"dim":2,"basis":["1","x"],"unit":["1","0"],"mult":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]]}"#;

fn load(text: &str) -> (HhStatus, *mut HhAlgebra) {
    let c = CString::new(text).unwrap();
    let mut a = ptr::null_mut();
    let s = unsafe { hh_algebra_from_json(c.as_ptr(), &mut a) };
    (s, a)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hh_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn dims_through_the_c_interface() {
    let (s, a) = load(DUAL);
    assert_eq!(s, HhStatus::Ok);
    let mut d = 0;
    let mut p = 0;
    let mut dims = [0usize; 5];
    unsafe {
        assert_eq!(hh_algebra_dim(a, &mut d), HhStatus::Ok);
        assert_eq!(hh_algebra_characteristic(a, &mut p), HhStatus::Ok);
        assert_eq!(hh_hochschild_dims(a, 4, dims.as_mut_ptr(), dims.len()), HhStatus::Ok);
        assert_eq!(hh_hochschild_dims(a, 5, dims.as_mut_ptr(), dims.len()), HhStatus::BufferTooSmall);
        hh_algebra_free(a);
    }
    assert_eq!((d, p, dims), (2, 2, [2; 5]));
}

#[test]
fn json_round_trip_and_suites() {
    let (_, a) = load(DUAL);
    let mut out = ptr::null_mut();
    let mut passed = -1;
    let suite = CString::new("gerstenhaber").unwrap();
    unsafe {
        assert_eq!(hh_algebra_to_json(a, &mut out), HhStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        hh_string_free(out);
        let (s, b) = load(&text);
        assert_eq!(s, HhStatus::Ok);
        hh_algebra_free(b);
        assert_eq!(hh_verify(a, suite.as_ptr(), 7, 10, &mut passed), HhStatus::Ok);
        hh_algebra_free(a);
    }
    assert_eq!(passed, 1);
}

#[test]
fn errors_carry_codes_and_messages() {
    let (s, a) = load(&DUAL.replace("\"p\":2", "\"p\":4"));
    assert_eq!(s, HhStatus::InvalidField);
    assert!(a.is_null());
    assert!(last_error().contains("not prime"));
    assert_eq!(load("{").0, HhStatus::Schema);
    assert_eq!(load(&DUAL.replace(",[1,0,1,\"1\"]", "")).0, HhStatus::Axiom);
    unsafe {
        assert_eq!(hh_algebra_from_json(ptr::null(), ptr::null_mut()), HhStatus::NullPointer);
        let mut d = 0;
        assert_eq!(hh_algebra_dim(ptr::null(), &mut d), HhStatus::NullPointer);
        hh_algebra_free(ptr::null_mut());
        hh_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hochschild.h")).unwrap();
    for name in ["hh_algebra_from_json", "hh_algebra_free", "hh_hochschild_dims", "hh_verify", "hh_last_error", "HH_STATUS_OK", "typedef struct HhAlgebra HhAlgebra"] {
        assert!(header.contains(name), "{name}");
    }
}
