use std::ffi::{CStr, CString};
use std::ptr;

use pecr_ffi::*;

const M1: [f64; 8] = [0.0, 0.1, 0.12, 0.25, 0.06, 0.27, 0.02, 0.18];
const M2: [f64; 8] = [0.0, 0.02, 0.16, 0.14, 0.11, 0.31, 0.25, 0.01];

fn new_mass(values: &[f64]) -> *mut PecrMass {
    let mut out = ptr::null_mut();
    let n = values.len().trailing_zeros() as usize;
    let status = unsafe { pecr_mass_new(n, values.as_ptr(), values.len(), &mut out) };
    assert_eq!(status, PecrStatus::Ok);
    out
}

fn last_error() -> String {
    let p = pecr_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn values(m: *const PecrMass) -> Vec<f64> {
    let n = unsafe { pecr_mass_frame_size(m) };
    let mut buf = vec![0.0; 1 << n];
    assert_eq!(
        unsafe { pecr_mass_values(m, buf.as_mut_ptr(), buf.len()) },
        PecrStatus::Ok
    );
    buf
}

fn combine(rule: &str, sources: &[*mut PecrMass]) -> (PecrStatus, *mut PecrMass) {
    let rule = CString::new(rule).unwrap();
    let ptrs: Vec<*const PecrMass> = sources.iter().map(|&p| p as *const _).collect();
    let mut out = ptr::null_mut();
    let status = unsafe { pecr_combine(rule.as_ptr(), ptrs.as_ptr(), ptrs.len(), &mut out) };
    (status, out)
}

#[test]
fn fuses_through_the_c_interface() {
    let a = new_mass(&M1);
    let b = new_mass(&M2);
    let (status, fused) = combine("pecr:product:max", &[a, b]);
    assert_eq!(status, PecrStatus::Ok);
    assert!(pecr_last_error_message().is_null());
    let expected = [0.136, 0.020, 0.138, 0.050, 0.043, 0.104, 0.055, 0.454];
    for (v, e) in values(fused).iter().zip(expected) {
        assert!((v - e).abs() < 2e-3, "{v} vs {e}");
    }
    assert!((unsafe { pecr_mass_conflict(fused) } - 0.136).abs() < 2e-3);
    assert!(unsafe { pecr_mass_ignorance(fused) } > 0.0);
    unsafe {
        pecr_mass_free(fused);
        pecr_mass_free(a);
        pecr_mass_free(b);
    }
}

#[test]
fn reports_errors_with_status_and_message() {
    let bad = [0.0, 0.5, 0.2, 0.2];
    let mut out = ptr::null_mut();
    let status = unsafe { pecr_mass_new(2, bad.as_ptr(), 4, &mut out) };
    assert_eq!(status, PecrStatus::InvalidMass);
    assert!(out.is_null());
    assert!(last_error().contains("invalid mass"));

    let status = unsafe { pecr_mass_new(2, bad.as_ptr(), 3, &mut out) };
    assert_eq!(status, PecrStatus::InvalidArgument);
    let status = unsafe { pecr_mass_new(2, ptr::null(), 4, &mut out) };
    assert_eq!(status, PecrStatus::InvalidArgument);

    let a = new_mass(&M1);
    let (status, _) = combine("pecr:bogus:max", &[a, a]);
    assert_eq!(status, PecrStatus::Parse);
    let (status, _) = combine("ccr", &[a]);
    assert_eq!(status, PecrStatus::Precondition);

    // Dogmatic sources have no cautious combination.
    let dogmatic = new_mass(&[0.0, 0.5, 0.5, 0.0]);
    let (status, _) = combine("caucr", &[dogmatic, dogmatic]);
    assert_eq!(status, PecrStatus::Precondition);

    let other = new_mass(&[0.0, 0.5, 0.5, 0.0]);
    let (status, _) = combine("ccr", &[a, other]);
    assert_eq!(status, PecrStatus::FrameMismatch);

    let (status, _) = combine("ccr", &[a, ptr::null_mut()]);
    assert_eq!(status, PecrStatus::InvalidArgument);
    unsafe {
        pecr_mass_free(a);
        pecr_mass_free(dogmatic);
        pecr_mass_free(other);
        pecr_mass_free(ptr::null_mut());
    }
}

#[test]
fn error_message_is_per_thread() {
    let mut out = ptr::null_mut();
    let bad = CString::new("not json").unwrap();
    assert_eq!(
        unsafe { pecr_mass_from_json(bad.as_ptr(), &mut out) },
        PecrStatus::Parse
    );
    std::thread::spawn(|| assert!(pecr_last_error_message().is_null()))
        .join()
        .unwrap();
    assert!(!pecr_last_error_message().is_null());
}

#[test]
fn json_round_trip() {
    let doc = CString::new(r#"{"frame": ["a", "b"], "masses": {"a": 0.6, "a|b": 0.4}}"#).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { pecr_mass_from_json(doc.as_ptr(), &mut m) },
        PecrStatus::Ok
    );
    assert_eq!(values(m), vec![0.0, 0.6, 0.0, 0.4]);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { pecr_mass_to_json(m, &mut text) }, PecrStatus::Ok);
    let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    assert!(s.contains("\"a|b\": 0.4"), "{s}");
    unsafe {
        pecr_string_free(text);
        pecr_mass_free(m);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/pecr.h");
    for name in [
        "pecr_last_error_message",
        "pecr_mass_new",
        "pecr_mass_from_json",
        "pecr_mass_to_json",
        "pecr_string_free",
        "pecr_mass_free",
        "pecr_mass_frame_size",
        "pecr_mass_values",
        "pecr_mass_conflict",
        "pecr_mass_ignorance",
        "pecr_combine",
        "PECR_STATUS_PRECONDITION",
        "typedef struct PecrMass PecrMass",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    // The header must be valid C when a compiler is around.
    if let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include/pecr.h"))
        .status()
    {
        assert!(status.success());
    }
}
