//! C interface to the hochschild crate.
//!
//! Every function returns an [`HhStatus`]; on failure the message is kept per
//! thread and read with [`hh_last_error`]. Handles and strings handed out are
//! released with [`hh_algebra_free`] and [`hh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use hochschild::hochschild::Hochschild;
use hochschild::io::{parse_algebra_file, serialize, Parsed};
use hochschild::verify;
use hochschild::HhError;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Schema = 4,
    InvalidField = 5,
    Axiom = 6,
    OutOfRange = 7,
    Computation = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// A parsed algebra or bialgebra.
pub struct HhAlgebra {
    inner: Parsed,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &HhError) -> HhStatus {
    match e {
        HhError::Parse(_) => HhStatus::Parse,
        HhError::Schema(_) | HhError::Usage(_) => HhStatus::Schema,
        HhError::InvalidField(_) => HhStatus::InvalidField,
        HhError::Axiom(_) => HhStatus::Axiom,
        HhError::OutOfRange(_) | HhError::Truncation { .. } => HhStatus::OutOfRange,
        _ => HhStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HhStatus, String)>) -> HhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HhStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            HhStatus::Panic
        }
    }
}

fn lib(e: HhError) -> (HhStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HhStatus, String) {
    (HhStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HhStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HhStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(a: *const HhAlgebra) -> Result<&'a HhAlgebra, (HhStatus, String)> {
    a.as_ref().ok_or_else(|| null("algebra"))
}

/// Message of the last failure on this thread, or null. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Parses and checks a JSON algebra file; `*out` receives a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_algebra_from_json(json: *const c_char, out: *mut *mut HhAlgebra) -> HhStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = parse_algebra_file(text).map_err(lib)?;
        *out = Box::into_raw(Box::new(HhAlgebra { inner }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `a` must come from [`hh_algebra_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hh_algebra_free(a: *mut HhAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra over its field.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_algebra_dim(a: *const HhAlgebra, out: *mut usize) -> HhStatus {
    guard(|| {
        let a = handle(a)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match &a.inner {
            Parsed::Rational(s) => s.algebra.dim(),
            Parsed::Prime(s) => s.algebra.dim(),
        };
        Ok(())
    })
}

/// Characteristic of the base field, 0 for the rationals.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_algebra_characteristic(a: *const HhAlgebra, out: *mut u32) -> HhStatus {
    guard(|| {
        let a = handle(a)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match a.inner.field() {
            hochschild::FieldDesc::Rationals => 0,
            hochschild::FieldDesc::Prime(p) => p,
        };
        Ok(())
    })
}

/// The canonical JSON form; free `*out` with [`hh_string_free`].
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_algebra_to_json(a: *const HhAlgebra, out: *mut *mut c_char) -> HhStatus {
    guard(|| {
        let a = handle(a)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = serialize(&a.inner.to_file());
        *out = CString::new(text).expect("no interior nul").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes dim HH^0..HH^max into `out[0..=max]`; `len` is the buffer length.
///
/// # Safety
/// `a` must be a live handle and `out` point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn hh_hochschild_dims(a: *const HhAlgebra, max: usize, out: *mut usize, len: usize) -> HhStatus {
    guard(|| {
        let a = handle(a)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if len <= max {
            return Err((HhStatus::BufferTooSmall, format!("need {} entries, got {len}", max + 1)));
        }
        let dims = match &a.inner {
            Parsed::Rational(s) => dims(&Hochschild::new(Arc::clone(&s.algebra)), max),
            Parsed::Prime(s) => dims(&Hochschild::new(Arc::clone(&s.algebra)), max),
        }
        .map_err(lib)?;
        std::slice::from_raw_parts_mut(out, len)[..=max].copy_from_slice(&dims);
        Ok(())
    })
}

fn dims<K: hochschild::Field>(hh: &Hochschild<K>, max: usize) -> hochschild::Result<Vec<usize>> {
    (0..=max).map(|n| hh.dim(n)).collect()
}

/// Runs the "gerstenhaber" or "axioms" suite; `*passed` is 1 or 0. For
/// "axioms", `trials` is the top degree.
///
/// # Safety
/// `a` must be a live handle, `suite` a nul-terminated string and `passed` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hh_verify(a: *const HhAlgebra, suite: *const c_char, seed: u64, trials: usize, passed: *mut i32) -> HhStatus {
    guard(|| {
        let a = handle(a)?;
        let suite = str_arg(suite, "suite")?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let report = match (&a.inner, suite) {
            (Parsed::Rational(s), "gerstenhaber") => verify::gerstenhaber_suite(&s.algebra, seed, trials),
            (Parsed::Prime(s), "gerstenhaber") => verify::gerstenhaber_suite(&s.algebra, seed, trials),
            (Parsed::Rational(s), "axioms") => verify::axiom_suite(&Hochschild::new(Arc::clone(&s.algebra)), trials),
            (Parsed::Prime(s), "axioms") => verify::axiom_suite(&Hochschild::new(Arc::clone(&s.algebra)), trials),
            (_, other) => return Err((HhStatus::Schema, format!("unknown suite {other:?}"))),
        }
        .map_err(lib)?;
        *passed = i32::from(report.pass);
        Ok(())
    })
}
