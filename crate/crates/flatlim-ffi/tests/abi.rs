//! Exercises the C ABI through the exported extern "C" functions.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use flatlim_ffi::*;

fn certify(points: &str, field: &str) -> *mut FlatlimReport {
    let points = CString::new(points).unwrap();
    let field = CString::new(field).unwrap();
    let mut report = ptr::null_mut();
    let status = unsafe { flatlim_certify(points.as_ptr(), field.as_ptr(), &mut report) };
    assert_eq!(status, FLATLIM_OK, "last error: {:?}", take_error());
    assert!(!report.is_null());
    report
}

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().expect("utf-8").to_string();
    unsafe { flatlim_string_free(s) };
    owned
}

fn take_error() -> Option<String> {
    let err = flatlim_last_error();
    if err.is_null() {
        None
    } else {
        Some(take_string(err))
    }
}

#[test]
fn certifies_an_extremal_instance() {
    let report = certify("0,1,3", "q");
    unsafe {
        assert_eq!(flatlim_report_verdict(report), FLATLIM_VERDICT_EXTREMAL_LIMIT);
        assert_eq!(flatlim_report_embedded_length(report), 0);
        let json = take_string(flatlim_report_json(report));
        assert!(json.contains("\"schema_version\": \"1\""));
        assert!(json.contains("\"kind\": \"extremal-limit\""));
        let text = take_string(flatlim_report_text(report));
        assert!(text.contains("verdict:  extremal limit"));
        flatlim_report_free(report);
    }
}

#[test]
fn reports_embedded_points() {
    let report = certify("0,1,2,3", "q");
    unsafe {
        assert_eq!(flatlim_report_verdict(report), FLATLIM_VERDICT_EMBEDDED_POINTS);
        assert_eq!(flatlim_report_embedded_length(report), 1);
        flatlim_report_free(report);
    }
}

#[test]
fn rejects_bad_inputs_with_a_report() {
    for (points, field) in [("0,1,1", "q"), ("0,1", "p=3"), ("5", "q")] {
        let report = certify(points, field);
        unsafe {
            assert_eq!(flatlim_report_verdict(report), FLATLIM_VERDICT_REJECTED);
            assert_eq!(flatlim_report_embedded_length(report), 0);
            flatlim_report_free(report);
        }
    }
}

#[test]
fn rational_points_and_prime_fields_parse() {
    let report = certify("-1/2, 0, 1/3", "q");
    unsafe { flatlim_report_free(report) };
    let report = certify("0,1,3", "p=101");
    unsafe {
        assert_eq!(flatlim_report_verdict(report), FLATLIM_VERDICT_EXTREMAL_LIMIT);
        flatlim_report_free(report);
    }
}

#[test]
fn error_statuses_set_the_thread_message() {
    let points = CString::new("0,1,3").unwrap();
    let field = CString::new("q").unwrap();
    let mut report = ptr::null_mut();

    let status = unsafe { flatlim_certify(ptr::null(), field.as_ptr(), &mut report) };
    assert_eq!(status, FLATLIM_ERR_NULL_ARGUMENT);
    assert!(take_error().unwrap().contains("null"));

    let status = unsafe { flatlim_certify(points.as_ptr(), field.as_ptr(), ptr::null_mut()) };
    assert_eq!(status, FLATLIM_ERR_NULL_ARGUMENT);

    let bad_field = CString::new("p=4").unwrap();
    let status = unsafe { flatlim_certify(points.as_ptr(), bad_field.as_ptr(), &mut report) };
    assert_eq!(status, FLATLIM_ERR_BAD_FIELD);
    assert!(report.is_null());
    assert!(take_error().unwrap().contains("p=4"));

    let bad_points = CString::new("0,oops,3").unwrap();
    let status = unsafe { flatlim_certify(bad_points.as_ptr(), field.as_ptr(), &mut report) };
    assert_eq!(status, FLATLIM_ERR_BAD_POINTS);
    assert!(take_error().unwrap().contains("oops"));

    let not_utf8 = [0xffu8, 0x00];
    let status = unsafe {
        flatlim_certify(not_utf8.as_ptr().cast::<c_char>(), field.as_ptr(), &mut report)
    };
    assert_eq!(status, FLATLIM_ERR_INVALID_UTF8);

    // A success clears the message.
    let ok = certify("0,1,3", "q");
    assert_eq!(take_error(), None);
    unsafe { flatlim_report_free(ok) };
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        assert_eq!(flatlim_report_verdict(ptr::null()), FLATLIM_ERR_NULL_ARGUMENT);
        assert_eq!(flatlim_report_embedded_length(ptr::null()), -1);
        assert!(flatlim_report_json(ptr::null()).is_null());
        assert!(flatlim_report_text(ptr::null()).is_null());
        flatlim_report_free(ptr::null_mut());
        flatlim_string_free(ptr::null_mut());
    }
}

#[test]
fn catalan_and_version() {
    assert_eq!(take_string(flatlim_catalan(2)), "1");
    assert_eq!(take_string(flatlim_catalan(6)), "14");
    assert_eq!(take_string(flatlim_catalan(10)), "1430");
    assert!(flatlim_catalan(1).is_null());

    let version = flatlim_version();
    assert!(!version.is_null());
    let version = unsafe { CStr::from_ptr(version) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn generated_header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/flatlim.h"
    ))
    .expect("build script writes include/flatlim.h");
    for symbol in [
        "flatlim_certify",
        "flatlim_report_verdict",
        "flatlim_report_embedded_length",
        "flatlim_report_json",
        "flatlim_report_text",
        "flatlim_report_free",
        "flatlim_string_free",
        "flatlim_last_error",
        "flatlim_catalan",
        "flatlim_version",
        "FLATLIM_OK",
        "FLATLIM_VERDICT_REJECTED",
        "typedef struct FlatlimReport FlatlimReport;",
    ] {
        assert!(header.contains(symbol), "missing from header: {symbol}");
    }
}
