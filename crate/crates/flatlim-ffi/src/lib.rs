//! C ABI for the flatlim certification toolkit.
//!
//! Reports are opaque handles created by [`flatlim_certify`] and released
//! with [`flatlim_report_free`]. Strings returned by this library are owned
//! by the caller and released with [`flatlim_string_free`], except for
//! [`flatlim_version`], which is static. Fallible calls return a status
//! code; on failure, [`flatlim_last_error`] returns a message describing
//! what went wrong on the calling thread.
//!
//! The generated header lives at `include/flatlim.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use flatlim::family::{self, PointSet};
use flatlim::report::{parse_field, CertificationReport, Verdict};
use flatlim::scalar::Scalar;

/// The call succeeded.
pub const FLATLIM_OK: i32 = 0;
/// A required pointer argument was NULL.
pub const FLATLIM_ERR_NULL_ARGUMENT: i32 = -1;
/// A string argument was not valid UTF-8.
pub const FLATLIM_ERR_INVALID_UTF8: i32 = -2;
/// The field description was not "q" or "p=<prime>".
pub const FLATLIM_ERR_BAD_FIELD: i32 = -3;
/// A point value did not parse as an integer or a rational "a/b".
pub const FLATLIM_ERR_BAD_POINTS: i32 = -4;
/// The certification pipeline itself failed (for example, a saturation
/// exceeded its step cap); the instance is neither certified nor rejected.
pub const FLATLIM_ERR_COMPUTATION: i32 = -5;

/// The flat limit is the extremal multiple line.
pub const FLATLIM_VERDICT_EXTREMAL_LIMIT: i32 = 0;
/// The limit is the extremal line plus an embedded point scheme.
pub const FLATLIM_VERDICT_EMBEDDED_POINTS: i32 = 2;
/// The input was rejected (too few points, duplicates, characteristic 2/3).
pub const FLATLIM_VERDICT_REJECTED: i32 = 3;

/// An opaque certification report.
pub struct FlatlimReport {
    inner: CertificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(code: i32, message: String) -> i32 {
    set_error(message);
    code
}

/// Heap-allocates a NUL-terminated copy of `s` for the caller.
fn export_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("output contained a NUL byte".to_string());
            ptr::null_mut()
        }
    }
}

/// Certifies the flat limit of the disjoint-line configuration at the
/// given points.
///
/// `points` is a comma-separated list of values, for example "0,1,3";
/// rationals like "-1/2" are allowed. `field` is "q" for the rationals or
/// "p=<prime>" for a prime field. On success writes a report handle to
/// `out` and returns `FLATLIM_OK`; the caller owns the handle and must
/// release it with [`flatlim_report_free`]. Inputs the pipeline rejects
/// (fewer than two points, duplicates, characteristic 2 or 3) still
/// produce a report, carrying the rejected verdict and the reason.
///
/// # Safety
/// `points` and `field` must be NUL-terminated strings valid for the
/// duration of the call, and `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn flatlim_certify(
    points: *const c_char,
    field: *const c_char,
    out: *mut *mut FlatlimReport,
) -> i32 {
    clear_error();
    if points.is_null() || field.is_null() || out.is_null() {
        return fail(FLATLIM_ERR_NULL_ARGUMENT, "null argument".to_string());
    }
    unsafe { *out = ptr::null_mut() };
    let Ok(points) = unsafe { CStr::from_ptr(points) }.to_str() else {
        return fail(FLATLIM_ERR_INVALID_UTF8, "points are not valid UTF-8".to_string());
    };
    let Ok(field_str) = unsafe { CStr::from_ptr(field) }.to_str() else {
        return fail(FLATLIM_ERR_INVALID_UTF8, "field is not valid UTF-8".to_string());
    };
    let Some(field) = parse_field(field_str) else {
        return fail(
            FLATLIM_ERR_BAD_FIELD,
            format!("invalid field {field_str:?} (use q or p=<prime>)"),
        );
    };

    let mut values = Vec::new();
    for part in points.split(',') {
        match Scalar::parse(part.trim(), field) {
            Ok(v) => values.push(v),
            Err(e) => return fail(FLATLIM_ERR_BAD_POINTS, format!("bad point {part:?}: {e}")),
        }
    }

    let report = if let Some(reason) = family::characteristic_rejection(field) {
        CertificationReport::rejected_input(values, field, reason)
    } else {
        match PointSet::new(values.clone()) {
            Ok(pts) => match family::certify(&pts) {
                Ok(report) => report,
                Err(e) => return fail(FLATLIM_ERR_COMPUTATION, e.to_string()),
            },
            Err(e) => CertificationReport::rejected_input(values, field, e.to_string()),
        }
    };
    unsafe { *out = Box::into_raw(Box::new(FlatlimReport { inner: report })) };
    FLATLIM_OK
}

/// Returns the report's verdict as one of the `FLATLIM_VERDICT_*` codes,
/// or `FLATLIM_ERR_NULL_ARGUMENT` for a NULL handle.
///
/// # Safety
/// `report` must be NULL or a handle from [`flatlim_certify`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn flatlim_report_verdict(report: *const FlatlimReport) -> i32 {
    match unsafe { report.as_ref() } {
        Some(r) => r.inner.verdict.exit_code(),
        None => FLATLIM_ERR_NULL_ARGUMENT,
    }
}

/// Returns the length of the embedded point scheme: 0 unless the verdict
/// is embedded points, -1 for a NULL handle.
///
/// # Safety
/// `report` must be NULL or a handle from [`flatlim_certify`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn flatlim_report_embedded_length(report: *const FlatlimReport) -> i64 {
    match unsafe { report.as_ref() } {
        Some(r) => match r.inner.verdict {
            Verdict::EmbeddedPoints { length } => length as i64,
            _ => 0,
        },
        None => -1,
    }
}

/// Renders the report as pretty-printed JSON (schema_version "1"), or NULL
/// for a NULL handle. The caller frees the string with
/// [`flatlim_string_free`].
///
/// # Safety
/// `report` must be NULL or a handle from [`flatlim_certify`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn flatlim_report_json(report: *const FlatlimReport) -> *mut c_char {
    match unsafe { report.as_ref() } {
        Some(r) => export_string(r.inner.to_json()),
        None => {
            set_error("null report handle".to_string());
            ptr::null_mut()
        }
    }
}

/// Renders the report in the human-readable multi-line form the CLI
/// prints, or NULL for a NULL handle. The caller frees the string with
/// [`flatlim_string_free`].
///
/// # Safety
/// `report` must be NULL or a handle from [`flatlim_certify`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn flatlim_report_text(report: *const FlatlimReport) -> *mut c_char {
    match unsafe { report.as_ref() } {
        Some(r) => export_string(r.inner.to_string()),
        None => {
            set_error("null report handle".to_string());
            ptr::null_mut()
        }
    }
}

/// Releases a report handle. NULL is a no-op.
///
/// # Safety
/// `report` must be NULL or a handle from [`flatlim_certify`] that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn flatlim_report_free(report: *mut FlatlimReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Releases a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string returned by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn flatlim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Returns the error message from the most recent failing call on this
/// thread, or NULL if it succeeded. The caller frees the string with
/// [`flatlim_string_free`].
#[no_mangle]
pub extern "C" fn flatlim_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Returns the constant c_d = C(d-2) (a Catalan number), which scales the
/// leading coefficient of the certificate form P, as a decimal string.
/// NULL when d < 2. The caller frees the string with
/// [`flatlim_string_free`].
#[no_mangle]
pub extern "C" fn flatlim_catalan(d: u32) -> *mut c_char {
    if d < 2 {
        set_error("catalan numbers start at d = 2".to_string());
        return ptr::null_mut();
    }
    export_string(family::catalan_c(d as usize).to_string())
}

/// The library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn flatlim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
