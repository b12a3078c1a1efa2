//! C ABI for the morphkit decision procedures.
//!
//! Structuring elements and pixel sets are parsed from dot-diagram strings
//! into opaque handles; check functions return a status code and, on
//! success, a JSON report allocated as a C string. Every `*_parse` call pairs
//! with the matching `*_free`, and every returned string with
//! `mk_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use morphkit::diagram::{parse_pixel_set, parse_structuring_element};
use morphkit::inclusion::{
    check_shift_inclusion, check_weak_shift_inclusion, check_weak_whole_space, check_whole_space,
};
use morphkit::{MorphError, PixelSet, StructuringElement};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    InternalError = 5,
}

/// Which inclusion relation to decide.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MkRelation {
    Strict = 0,
    Weak = 1,
}

pub struct MkStructuringElement(StructuringElement);

pub struct MkPixelSet(PixelSet);

fn status_of(err: &MorphError) -> MkStatus {
    match err {
        MorphError::DiagramParse { .. }
        | MorphError::DiagramNoOrigin
        | MorphError::DiagramMultipleOrigins
        | MorphError::FormatParse { .. } => MkStatus::ParseError,
        MorphError::Io(_) | MorphError::Json(_) => MkStatus::InternalError,
        _ => MkStatus::InvalidInput,
    }
}

/// # Safety
/// `text` must be a valid NUL-terminated C string; `out` must be valid for
/// writes.
unsafe fn parse_input<'a>(text: *const c_char) -> Result<&'a str, MkStatus> {
    if text.is_null() {
        return Err(MkStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| MkStatus::InvalidUtf8)
}

/// Parses a dot diagram with an `o` origin marker into a structuring-element
/// handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mk_se_parse(
    text: *const c_char,
    out: *mut *mut MkStructuringElement,
) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let text = match parse_input(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_structuring_element(text) {
        Ok(se) => {
            *out = Box::into_raw(Box::new(MkStructuringElement(se)));
            MkStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a structuring-element handle. Null is ignored.
///
/// # Safety
/// `ptr` must come from `mk_se_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mk_se_free(ptr: *mut MkStructuringElement) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Parses a dot diagram (origin marker optional) into a pixel-set handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mk_pixels_parse(
    text: *const c_char,
    out: *mut *mut MkPixelSet,
) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let text = match parse_input(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_pixel_set(text) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(MkPixelSet(p)));
            MkStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a pixel-set handle. Null is ignored.
///
/// # Safety
/// `ptr` must come from `mk_pixels_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mk_pixels_free(ptr: *mut MkPixelSet) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

fn report_out(
    report: Result<morphkit::inclusion::InclusionReport, MorphError>,
    out_json: *mut *mut c_char,
) -> MkStatus {
    match report {
        Ok(report) => match serde_json::to_string(&report)
            .map_err(|_| MkStatus::InternalError)
            .and_then(|s| CString::new(s).map_err(|_| MkStatus::InternalError))
        {
            Ok(cstr) => {
                unsafe { *out_json = cstr.into_raw() };
                MkStatus::Ok
            }
            Err(s) => s,
        },
        Err(e) => status_of(&e),
    }
}

/// Decides the chosen relation for `B1` against `B2` relative to `P` and
/// writes the JSON report to `out_json`.
///
/// # Safety
/// All handles must be live; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mk_check(
    b1: *const MkStructuringElement,
    b2: *const MkStructuringElement,
    p: *const MkPixelSet,
    relation: MkRelation,
    out_json: *mut *mut c_char,
) -> MkStatus {
    if b1.is_null() || b2.is_null() || p.is_null() || out_json.is_null() {
        return MkStatus::NullPointer;
    }
    *out_json = ptr::null_mut();
    let (b1, b2, p) = (&(*b1).0, &(*b2).0, &(*p).0);
    let report = match relation {
        MkRelation::Strict => check_shift_inclusion(b1, b2, p),
        MkRelation::Weak => check_weak_shift_inclusion(b1, b2, p),
    };
    report_out(report, out_json)
}

/// Decides the chosen relation on the whole lattice and writes the JSON
/// report to `out_json`.
///
/// # Safety
/// All handles must be live; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mk_check_whole_space(
    b1: *const MkStructuringElement,
    b2: *const MkStructuringElement,
    relation: MkRelation,
    out_json: *mut *mut c_char,
) -> MkStatus {
    if b1.is_null() || b2.is_null() || out_json.is_null() {
        return MkStatus::NullPointer;
    }
    *out_json = ptr::null_mut();
    let (b1, b2) = (&(*b1).0, &(*b2).0);
    let report = match relation {
        MkRelation::Strict => check_whole_space(b1, b2),
        MkRelation::Weak => check_weak_whole_space(b1, b2),
    };
    report_out(report, out_json)
}

/// Releases a string returned by a check function. Null is ignored.
///
/// # Safety
/// `ptr` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mk_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}
