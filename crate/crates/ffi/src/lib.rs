//! C ABI for the `pecr` library.
//!
//! Mass functions cross the boundary as opaque `PecrMass` handles. Every
//! fallible call returns a `PecrStatus`; on failure the message is kept in
//! thread-local storage and read with `pecr_last_error_message`.
//!
//! Masses are indexed by bitmask: bit `i` of the index stands for the
//! `i`-th frame element, so index 0 is the empty set.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use pecr::powerset::MAX_FRAME_SIZE;
use pecr::{BpaDocument, CombinationRule, Error, Frame, MassFunction};

/// Opaque mass function handle.
pub struct PecrMass(MassFunction);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PecrStatus {
    Ok = 0,
    /// Null pointer, bad length or non-UTF-8 string.
    InvalidArgument = 1,
    /// Masses negative, non-finite or not summing to one.
    InvalidMass = 2,
    /// Argument outside the domain of the operation.
    Domain = 3,
    /// The rule's precondition does not hold for these sources.
    Precondition = 4,
    /// Rule, operator or document could not be parsed.
    Parse = 5,
    /// Sources live on different frames.
    FrameMismatch = 6,
    /// Internal panic; the library state is unaffected.
    Panic = 7,
    Other = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> PecrStatus {
    match err {
        Error::InvalidMass(_) => PecrStatus::InvalidMass,
        Error::Domain(_) => PecrStatus::Domain,
        Error::Precondition(_) => PecrStatus::Precondition,
        Error::OperatorParse { .. } | Error::RuleParse { .. } | Error::Json(_) => PecrStatus::Parse,
        Error::FrameMismatch(_) => PecrStatus::FrameMismatch,
        _ => PecrStatus::Other,
    }
}

fn fail(status: PecrStatus, msg: impl Into<String>) -> PecrStatus {
    set_last_error(msg);
    status
}

/// Runs `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (PecrStatus, String)>) -> PecrStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PecrStatus::Ok,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(PecrStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: Error) -> (PecrStatus, String) {
    (status_of(&e), e.to_string())
}

fn bad_arg(msg: &str) -> (PecrStatus, String) {
    (PecrStatus::InvalidArgument, msg.to_string())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (PecrStatus, String)> {
    if s.is_null() {
        return Err(bad_arg(&format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| bad_arg(&format!("{what} is not UTF-8")))
}

unsafe fn write_out(out: *mut *mut PecrMass, m: MassFunction) -> Result<(), (PecrStatus, String)> {
    if out.is_null() {
        return Err(bad_arg("output pointer is null"));
    }
    *out = Box::into_raw(Box::new(PecrMass(m)));
    Ok(())
}

unsafe fn borrow<'a>(m: *const PecrMass) -> Result<&'a MassFunction, (PecrStatus, String)> {
    m.as_ref()
        .map(|m| &m.0)
        .ok_or_else(|| bad_arg("mass handle is null"))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn pecr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a mass function on the frame `{1, ..., n_elements}` from `len`
/// masses indexed by bitmask; `len` must be `2^n_elements`.
///
/// # Safety
/// `masses` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_new(
    n_elements: usize,
    masses: *const f64,
    len: usize,
    out: *mut *mut PecrMass,
) -> PecrStatus {
    guard(|| {
        if masses.is_null() {
            return Err(bad_arg("masses is null"));
        }
        if !(1..=MAX_FRAME_SIZE).contains(&n_elements) || len != 1usize << n_elements {
            return Err(bad_arg(
                "len must equal 2^n_elements with 1 <= n_elements <= 16",
            ));
        }
        let frame = Arc::new(Frame::numbered(n_elements).map_err(lib_err)?);
        let values = std::slice::from_raw_parts(masses, len).to_vec();
        write_out(out, MassFunction::new(frame, values).map_err(lib_err)?)
    })
}

/// Parses a JSON document `{"frame": [...], "masses": {"a|b": 0.4, ...}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_from_json(
    json: *const c_char,
    out: *mut *mut PecrMass,
) -> PecrStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let doc = BpaDocument::from_json(text).map_err(lib_err)?;
        write_out(out, doc.to_mass().map_err(lib_err)?)
    })
}

/// Serializes the focal sets as a JSON document. Free the result with
/// `pecr_string_free`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_to_json(
    m: *const PecrMass,
    out: *mut *mut c_char,
) -> PecrStatus {
    guard(|| {
        let m = borrow(m)?;
        if out.is_null() {
            return Err(bad_arg("output pointer is null"));
        }
        let json = BpaDocument::from_mass(m).to_json();
        *out = CString::new(json)
            .map_err(|_| bad_arg("label contains NUL"))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pecr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `m` must come from this library and not be used afterwards, or be null.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_free(m: *mut PecrMass) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of frame elements, or 0 for a null handle.
///
/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_frame_size(m: *const PecrMass) -> usize {
    m.as_ref().map_or(0, |m| m.0.frame().len())
}

/// Copies the `2^n` masses into `buf`, which holds `len` doubles.
///
/// # Safety
/// `m` must be a live handle; `buf` must have room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_values(
    m: *const PecrMass,
    buf: *mut f64,
    len: usize,
) -> PecrStatus {
    guard(|| {
        let m = borrow(m)?;
        if buf.is_null() || len != m.masses().len() {
            return Err(bad_arg("buffer must hold exactly 2^n doubles"));
        }
        std::slice::from_raw_parts_mut(buf, len).copy_from_slice(m.masses());
        Ok(())
    })
}

/// Mass of the empty set, or NaN for a null handle.
///
/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_conflict(m: *const PecrMass) -> f64 {
    m.as_ref().map_or(f64::NAN, |m| m.0.conflict())
}

/// Nonspecificity `Σ m(A) log2 |A|`, or NaN for a null handle.
///
/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pecr_mass_ignorance(m: *const PecrMass) -> f64 {
    m.as_ref().map_or(f64::NAN, |m| m.0.ignorance())
}

/// Combines `count` sources with the rule named by `rule`, e.g. `ccr`,
/// `dempster` or `pecr:product:max`.
///
/// # Safety
/// `rule` must be NUL-terminated; `sources` must point to `count` live
/// handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pecr_combine(
    rule: *const c_char,
    sources: *const *const PecrMass,
    count: usize,
    out: *mut *mut PecrMass,
) -> PecrStatus {
    guard(|| {
        let rule: CombinationRule = read_str(rule, "rule")?.parse().map_err(lib_err)?;
        if sources.is_null() {
            return Err(bad_arg("sources is null"));
        }
        let handles = std::slice::from_raw_parts(sources, count);
        let masses = handles
            .iter()
            .map(|&h| borrow(h).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        write_out(out, rule.combine(&masses).map_err(lib_err)?)
    })
}
