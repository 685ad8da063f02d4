//! Exercises the C ABI from Rust: status codes, string ownership, and the
//! opaque series handle.

use parhilb_ffi::*;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { phs_string_free(ptr) };
    text
}

#[test]
fn cell_count_and_polynomials() {
    let v = CString::new(r#"{"0":2,"1":1}"#).unwrap();
    let mut count = 0u64;
    assert_eq!(unsafe { phs_cell_count(v.as_ptr(), &mut count) }, 0);
    assert_eq!(count, 4);

    let mut out: *mut c_char = std::ptr::null_mut();
    assert_eq!(unsafe { phs_punctual_poincare(v.as_ptr(), &mut out) }, 0);
    assert_eq!(take_string(out), "1+2z^2+z^4");

    let mut out: *mut c_char = std::ptr::null_mut();
    assert_eq!(unsafe { phs_punctual_motive(v.as_ptr(), &mut out) }, 0);
    assert_eq!(take_string(out), "1+2L+L^2");
}

#[test]
fn error_codes() {
    let bad_json = CString::new("not json").unwrap();
    let mut count = 0u64;
    assert_eq!(unsafe { phs_cell_count(bad_json.as_ptr(), &mut count) }, 1);

    let inadmissible = CString::new(r#"{"-1":1}"#).unwrap();
    assert_eq!(
        unsafe { phs_cell_count(inadmissible.as_ptr(), &mut count) },
        2
    );
    assert_eq!(
        unsafe { phs_cell_count(std::ptr::null(), &mut count) },
        1
    );

    // Not a generator.
    let not_gen = CString::new(r#"{"0":1,"1":2}"#).unwrap();
    let mut mu = 0i64;
    assert_eq!(unsafe { phs_mu(not_gen.as_ptr(), &mut mu) }, 2);
}

#[test]
fn mu_values() {
    let mut value = 0i64;
    let u = CString::new(r#"{"0":2}"#).unwrap();
    assert_eq!(unsafe { phs_mu(u.as_ptr(), &mut value) }, 0);
    assert_eq!(value, -2);
}

#[test]
fn series_handle_lifecycle() {
    let x = [1u32, 0, 1, 0, 1];
    let d = [1u32, 0, 1];
    let series = unsafe { phs_parabolic_series_new(x.as_ptr(), d.as_ptr(), -1, 2, 3, 2) };
    assert!(!series.is_null());

    let v = CString::new(r#"{"0":2}"#).unwrap();
    let mut out: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { phs_series_coefficient(series, v.as_ptr(), &mut out) },
        0
    );
    assert_eq!(take_string(out), "1+2z^2+3z^4+2z^6+z^8");

    // Out of the truncation range.
    let big = CString::new(r#"{"0":9}"#).unwrap();
    let mut out: *mut c_char = std::ptr::null_mut();
    assert_eq!(
        unsafe { phs_series_coefficient(series, big.as_ptr(), &mut out) },
        2
    );

    let mut out: *mut c_char = std::ptr::null_mut();
    assert_eq!(unsafe { phs_series_json(series, &mut out) }, 0);
    let text = take_string(out);
    assert!(text.contains("\"order\"") && text.contains("\"terms\""));

    unsafe { phs_series_free(series) };

    // Invalid window yields a null handle.
    let bad = unsafe { phs_parabolic_series_new(x.as_ptr(), d.as_ptr(), 1, 2, 3, 2) };
    assert!(bad.is_null());
}

#[test]
fn lemma_verification_entry_point() {
    assert_eq!(phs_verify_lemmas(2), 0);
}
