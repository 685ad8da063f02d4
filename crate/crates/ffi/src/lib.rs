//! C ABI for the parhilb engine.
//!
//! Conventions:
//! - Index vectors travel as UTF-8 JSON strings like `{"0":2,"1":1}`.
//! - Returned strings are heap-allocated; release them with
//!   [`phs_string_free`].  The series handle is opaque; release it with
//!   [`phs_series_free`].
//! - Every fallible function returns a status code: 0 success, 1 parse or
//!   argument error, 2 precondition or verification failure, 3 internal
//!   error.  Output parameters are written only on success.

use parhilb::cells;
use parhilb::genfun::{parabolic_poincare_series, BettiData};
use parhilb::lattice::{mu, verify_dimension_lemmas, IndexVector, Window};
use parhilb::series::{MultiSeries, TruncationOrder};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

pub const PHS_OK: i32 = 0;
pub const PHS_ERR_PARSE: i32 = 1;
pub const PHS_ERR_PRECONDITION: i32 = 2;
pub const PHS_ERR_INTERNAL: i32 = 3;

/// Opaque handle to a truncated parabolic Poincaré series.
pub struct PhsSeries {
    series: MultiSeries,
}

/// # Safety
/// `text` must be a valid NUL-terminated UTF-8 string or null.
unsafe fn parse_c_str(text: *const c_char) -> Result<&'static str, i32> {
    if text.is_null() {
        return Err(PHS_ERR_PARSE);
    }
    CStr::from_ptr(text).to_str().map_err(|_| PHS_ERR_PARSE)
}

fn parse_vector(text: &str) -> Result<IndexVector, i32> {
    serde_json::from_str(text).map_err(|_| PHS_ERR_PARSE)
}

fn export_string(text: String, out: *mut *mut c_char) -> i32 {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PHS_OK
        }
        Err(_) => PHS_ERR_INTERNAL,
    }
}

fn guarded(f: impl FnOnce() -> i32) -> i32 {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PHS_ERR_INTERNAL)
}

/// Releases a string returned by this library.  Null is a no-op.
///
/// # Safety
/// `text` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn phs_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Number of cells of the punctual scheme at `v_json`.
///
/// # Safety
/// `v_json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn phs_cell_count(v_json: *const c_char, out: *mut u64) -> i32 {
    guarded(|| {
        let v = match parse_c_str(v_json).and_then(|t| parse_vector(t)) {
            Ok(v) => v,
            Err(code) => return code,
        };
        if !v.is_admissible() {
            return PHS_ERR_PRECONDITION;
        }
        *out = cells::enumerate_labels(&v).len() as u64;
        PHS_OK
    })
}

/// Poincaré polynomial of the punctual scheme at `v_json`, e.g. `"1+z^2"`.
///
/// # Safety
/// As [`phs_cell_count`]; `out` receives an owned string on success.
#[no_mangle]
pub unsafe extern "C" fn phs_punctual_poincare(
    v_json: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let v = match parse_c_str(v_json).and_then(|t| parse_vector(t)) {
            Ok(v) => v,
            Err(code) => return code,
        };
        if !v.is_admissible() {
            return PHS_ERR_PRECONDITION;
        }
        export_string(cells::punctual_poincare(&v).display("z"), out)
    })
}

/// Class-count polynomial in `L` of the punctual scheme at `v_json`.
///
/// # Safety
/// As [`phs_punctual_poincare`].
#[no_mangle]
pub unsafe extern "C" fn phs_punctual_motive(
    v_json: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let v = match parse_c_str(v_json).and_then(|t| parse_vector(t)) {
            Ok(v) => v,
            Err(code) => return code,
        };
        if !v.is_admissible() {
            return PHS_ERR_PRECONDITION;
        }
        export_string(cells::punctual_motive(&v).display("L"), out)
    })
}

/// The commutation constant μ of a generator `u_json`.
///
/// # Safety
/// As [`phs_cell_count`].
#[no_mangle]
pub unsafe extern "C" fn phs_mu(u_json: *const c_char, out: *mut i64) -> i32 {
    guarded(|| {
        let u = match parse_c_str(u_json).and_then(|t| parse_vector(t)) {
            Ok(u) => u,
            Err(code) => return code,
        };
        match mu(&u) {
            Ok(value) => {
                *out = value;
                PHS_OK
            }
            Err(_) => PHS_ERR_PRECONDITION,
        }
    })
}

/// Builds the truncated parabolic Poincaré series.  `x_betti` points at 5
/// surface Betti numbers, `d_betti` at 3 divisor ones; the window is
/// `lo..hi` with `lo < 0 < hi`; `x0_max` and `cap` are the truncation
/// bounds.  Returns null on invalid input.
///
/// # Safety
/// `x_betti` and `d_betti` must point at arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn phs_parabolic_series_new(
    x_betti: *const u32,
    d_betti: *const u32,
    lo: i64,
    hi: i64,
    x0_max: u32,
    cap: u32,
) -> *mut PhsSeries {
    if x_betti.is_null() || d_betti.is_null() {
        return std::ptr::null_mut();
    }
    let betti = BettiData {
        surface: std::slice::from_raw_parts(x_betti, 5).try_into().unwrap(),
        divisor: std::slice::from_raw_parts(d_betti, 3).try_into().unwrap(),
    };
    let window = match Window::new(lo, hi) {
        Ok(w) => w,
        Err(_) => return std::ptr::null_mut(),
    };
    let order = TruncationOrder::for_window(x0_max, lo, hi, cap);
    let result = catch_unwind(AssertUnwindSafe(|| {
        parabolic_poincare_series(&betti, &window, &order)
    }));
    match result {
        Ok(series) => Box::into_raw(Box::new(PhsSeries { series })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Coefficient of the series at `v_json` as a polynomial string in `z`.
///
/// # Safety
/// `series` must be a live handle from [`phs_parabolic_series_new`].
#[no_mangle]
pub unsafe extern "C" fn phs_series_coefficient(
    series: *const PhsSeries,
    v_json: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if series.is_null() {
            return PHS_ERR_PARSE;
        }
        let v = match parse_c_str(v_json).and_then(|t| parse_vector(t)) {
            Ok(v) => v,
            Err(code) => return code,
        };
        match (*series).series.coefficient(&v) {
            Ok(poly) => export_string(poly.display("z"), out),
            Err(_) => PHS_ERR_PRECONDITION,
        }
    })
}

/// Full series as JSON.
///
/// # Safety
/// As [`phs_series_coefficient`].
#[no_mangle]
pub unsafe extern "C" fn phs_series_json(series: *const PhsSeries, out: *mut *mut c_char) -> i32 {
    guarded(|| {
        if series.is_null() {
            return PHS_ERR_PARSE;
        }
        match serde_json::to_string(&(*series).series) {
            Ok(text) => export_string(text, out),
            Err(_) => PHS_ERR_INTERNAL,
        }
    })
}

/// Releases a series handle.  Null is a no-op.
///
/// # Safety
/// `series` must come from [`phs_parabolic_series_new`] and not have been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn phs_series_free(series: *mut PhsSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Runs the dimension-estimate verification up to `bound`.  Returns 0 when
/// every case passes, 2 on any violation.
#[no_mangle]
pub extern "C" fn phs_verify_lemmas(bound: i64) -> i32 {
    guarded(|| {
        if verify_dimension_lemmas(bound).passed() {
            PHS_OK
        } else {
            PHS_ERR_PRECONDITION
        }
    })
}
