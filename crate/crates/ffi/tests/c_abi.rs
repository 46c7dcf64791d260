use std::ffi::{CStr, CString};
use std::ptr;

use grtkit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = grt_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { grt_string_free(p) };
    s
}

const COMMUTATOR: &str = r#"{"alphabet":["X0","X1"],"truncation":3,"ring":"rational",
  "terms":[{"word":"","coeff":"1"},{"word":"X0 X1","coeff":"1/24"},{"word":"X1 X0","coeff":"-1/24"}]}"#;

#[test]
fn series_round_trip_through_handles() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { grt_series_from_json(c(COMMUTATOR).as_ptr(), &mut h) }, GrtStatus::GrtOk);
    let mut n = 0usize;
    assert_eq!(unsafe { grt_series_truncation(h, &mut n) }, GrtStatus::GrtOk);
    assert_eq!(n, 3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { grt_series_to_json(h, &mut out) }, GrtStatus::GrtOk);
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(json["terms"].as_array().unwrap().len(), 3);
    unsafe { grt_series_free(h) };
}

#[test]
fn checks_report_verdicts_and_residuals() {
    let mut h = ptr::null_mut();
    unsafe { grt_series_from_json(c(COMMUTATOR).as_ptr(), &mut h) };
    let mut r = -1.0;
    assert_eq!(unsafe { grt_check_pentagon(h, &mut r) }, GrtStatus::GrtOk);
    assert_eq!(r, 0.0);
    // 24 * (1/24) = mu^2, so mu = ±1 satisfies the hexagons at degree 3
    assert_eq!(unsafe { grt_check_hexagons(h, c("auto").as_ptr(), &mut r) }, GrtStatus::GrtOk);
    assert_eq!(unsafe { grt_check_hexagons(h, c("3").as_ptr(), &mut r) }, GrtStatus::GrtCheckFailed);
    assert!(r > 0.0);
    assert_eq!(unsafe { grt_check_grt1(h) }, GrtStatus::GrtCheckFailed);
    assert_eq!(unsafe { grt_check_dmr0(h, 0) }, GrtStatus::GrtCheckFailed);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { grt_mul(h, h, &mut p) }, GrtStatus::GrtOk);
    unsafe { grt_series_free(p) };
    unsafe { grt_series_free(h) };
}

#[test]
fn errors_map_to_codes_and_messages() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { grt_series_from_json(c("{").as_ptr(), &mut h) }, GrtStatus::GrtParseError);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { grt_series_from_json(ptr::null(), &mut h) }, GrtStatus::GrtNullPointer);
    assert_eq!(unsafe { grt_build_kz(6, 5, &mut h) }, GrtStatus::GrtPrecisionTooLow);
    assert!(last_error().contains("18 digits"));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { grt_mzv_eval(c("2,1").as_ptr(), 20, &mut s) }, GrtStatus::GrtPrecondition);
    // a successful call clears the message
    assert_eq!(unsafe { grt_mzv_eval(c("2").as_ptr(), 20, &mut s) }, GrtStatus::GrtOk);
    assert!(grt_last_error().is_null());
    assert!(take(s).starts_with("1.644934066848226436"));
}

#[test]
fn cli_runs_through_the_abi() {
    let args = [c("zagier"), c("--a"), c("1"), c("--b"), c("0"), c("--digits"), c("30")];
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { grt_run(ptrs.len(), ptrs.as_ptr(), &mut out) }, GrtStatus::GrtOk);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["verdict"], true);
    let bad = [c("no-such-command")];
    let ptrs: Vec<_> = bad.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { grt_run(1, ptrs.as_ptr(), &mut out) }, GrtStatus::GrtParseError);
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/grtkit.h")).unwrap();
    for f in [
        "grt_last_error",
        "grt_version",
        "grt_string_free",
        "grt_series_from_json",
        "grt_series_to_json",
        "grt_series_truncation",
        "grt_series_free",
        "grt_check_pentagon",
        "grt_check_hexagons",
        "grt_check_grt1",
        "grt_check_dmr0",
        "grt_mul",
        "grt_build_kz",
        "grt_mzv_eval",
        "grt_run",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct GrtSeries GrtSeries;"));
}
