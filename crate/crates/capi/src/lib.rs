//! C ABI over the skein engine: opaque handles, integer status codes, and
//! caller-freed strings. The header `include/skein.h` is generated by
//! cbindgen at build time.
//!
//! Every function is panic-safe: panics are caught at the boundary and
//! reported as `SKEIN_STATUS_INTERNAL`.

use skein::diagram::{parse_braid, parse_pd, LinkDiagram};
use skein::expansion::{default_rule_table, expand, verify_identity, Family};
use skein::homfly::evaluate_homfly;
use skein::kauffman::evaluate_kauffman;
use skein::laurent::{rational_to_json, RationalFunction};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SkeinStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Text argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input failed to parse or validate.
    Parse = 3,
    /// No bundled corpus entry with the given name.
    UnknownName = 4,
    /// Internal error (a caught panic).
    Internal = 5,
}

/// Opaque unoriented link diagram.
pub struct SkeinDiagram(LinkDiagram);

/// Opaque exact polynomial value (a quotient of Laurent polynomials).
pub struct SkeinValue(RationalFunction);

/// Expansion families for [`skein_expand`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SkeinFamily {
    Dn = 0,
    Bn = 1,
}

fn guard<F: FnOnce() -> SkeinStatus>(f: F) -> SkeinStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(SkeinStatus::Internal)
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SkeinStatus> {
    if ptr.is_null() {
        return Err(SkeinStatus::NullArgument);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| SkeinStatus::InvalidUtf8)
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> SkeinStatus {
    if out.is_null() {
        return SkeinStatus::NullArgument;
    }
    *out = Box::into_raw(Box::new(value));
    SkeinStatus::Ok
}

/// Parse a PD-format diagram (`X[a,b,c,d]` tokens and `O` loops).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success the caller owns the handle and must release it with
/// [`skein_diagram_free`].
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_parse_pd(
    text: *const c_char,
    out: *mut *mut SkeinDiagram,
) -> SkeinStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_pd(text) {
            Ok(d) => write_out(out, SkeinDiagram(d)),
            Err(_) => SkeinStatus::Parse,
        }
    })
}

/// Parse a braid spec `BR strands : i1 i2 -i1 ...` and close it.
///
/// # Safety
/// As for [`skein_diagram_parse_pd`].
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_from_braid(
    spec: *const c_char,
    out: *mut *mut SkeinDiagram,
) -> SkeinStatus {
    guard(|| {
        let spec = match read_str(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_braid(spec) {
            Ok(d) => write_out(out, SkeinDiagram(d)),
            Err(_) => SkeinStatus::Parse,
        }
    })
}

/// Look up a bundled corpus diagram by name.
///
/// # Safety
/// As for [`skein_diagram_parse_pd`].
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_corpus(
    name: *const c_char,
    out: *mut *mut SkeinDiagram,
) -> SkeinStatus {
    guard(|| {
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let entry = match skein::corpus::bundled_entry(name) {
            Ok(e) => e,
            Err(_) => return SkeinStatus::UnknownName,
        };
        match entry.diagram() {
            Ok(d) => write_out(out, SkeinDiagram(d)),
            Err(_) => SkeinStatus::Parse,
        }
    })
}

/// # Safety
/// `d` must be a handle from this library, not yet freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_free(d: *mut SkeinDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_crossings(d: *const SkeinDiagram) -> usize {
    if d.is_null() {
        return 0;
    }
    (*d).0.crossing_count()
}

/// # Safety
/// `d` must be a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn skein_diagram_components(d: *const SkeinDiagram) -> usize {
    if d.is_null() {
        return 0;
    }
    (*d).0.component_count()
}

/// Framed HOMFLY-PT polynomial of the diagram under its canonical
/// orientation.
///
/// # Safety
/// `d` must be a live diagram handle and `out` a valid pointer; the caller
/// frees the value with [`skein_value_free`].
#[no_mangle]
pub unsafe extern "C" fn skein_eval_homfly(
    d: *const SkeinDiagram,
    out: *mut *mut SkeinValue,
) -> SkeinStatus {
    guard(|| {
        if d.is_null() {
            return SkeinStatus::NullArgument;
        }
        let value = evaluate_homfly(&(*d).0.orient());
        write_out(out, SkeinValue(value))
    })
}

/// Framed Kauffman polynomial of the diagram.
///
/// # Safety
/// As for [`skein_eval_homfly`].
#[no_mangle]
pub unsafe extern "C" fn skein_eval_kauffman(
    d: *const SkeinDiagram,
    out: *mut *mut SkeinValue,
) -> SkeinStatus {
    guard(|| {
        if d.is_null() {
            return SkeinStatus::NullArgument;
        }
        let value = evaluate_kauffman(&(*d).0);
        write_out(out, SkeinValue(value))
    })
}

/// Weighted state sum of the diagram with the family's shipped rule table.
///
/// # Safety
/// As for [`skein_eval_homfly`].
#[no_mangle]
pub unsafe extern "C" fn skein_expand(
    d: *const SkeinDiagram,
    family: SkeinFamily,
    out: *mut *mut SkeinValue,
) -> SkeinStatus {
    guard(|| {
        if d.is_null() {
            return SkeinStatus::NullArgument;
        }
        let fam = match family {
            SkeinFamily::Dn => Family::Dn,
            SkeinFamily::Bn => Family::Bn,
        };
        let value = expand(&(*d).0, &default_rule_table(fam));
        write_out(out, SkeinValue(value))
    })
}

/// Check the expansion identity on one diagram; writes whether the state sum
/// equals the Kauffman polynomial and how many coherent states were summed.
///
/// # Safety
/// `d` must be a live diagram handle; `equal` and `states` must be valid or
/// null (null outputs are skipped).
#[no_mangle]
pub unsafe extern "C" fn skein_verify_identity(
    d: *const SkeinDiagram,
    equal: *mut bool,
    states: *mut usize,
) -> SkeinStatus {
    guard(|| {
        if d.is_null() {
            return SkeinStatus::NullArgument;
        }
        let report = verify_identity(&(*d).0);
        if !equal.is_null() {
            *equal = report.equal;
        }
        if !states.is_null() {
            *states = report.state_count;
        }
        SkeinStatus::Ok
    })
}

/// Substitute `a = q^n` in a value.
///
/// # Safety
/// `v` must be a live value handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn skein_value_substitute_a(
    v: *const SkeinValue,
    n: i64,
    out: *mut *mut SkeinValue,
) -> SkeinStatus {
    guard(|| {
        if v.is_null() {
            return SkeinStatus::NullArgument;
        }
        let value = (*v).0.substitute_a(n);
        write_out(out, SkeinValue(value))
    })
}

/// Exact equality of two values (cross-multiplied).
///
/// # Safety
/// Both arguments must be live value handles.
#[no_mangle]
pub unsafe extern "C" fn skein_value_equals(a: *const SkeinValue, b: *const SkeinValue) -> bool {
    if a.is_null() || b.is_null() {
        return false;
    }
    (*a).0.equals(&(*b).0)
}

fn to_owned_cstring(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Render a value as signed monomial text; free with [`skein_string_free`].
///
/// # Safety
/// `v` must be a live value handle.
#[no_mangle]
pub unsafe extern "C" fn skein_value_to_text(v: *const SkeinValue) -> *mut c_char {
    if v.is_null() {
        return std::ptr::null_mut();
    }
    to_owned_cstring((*v).0.to_string())
}

/// Render a value as JSON coefficient triples; free with
/// [`skein_string_free`].
///
/// # Safety
/// `v` must be a live value handle.
#[no_mangle]
pub unsafe extern "C" fn skein_value_to_json(v: *const SkeinValue) -> *mut c_char {
    if v.is_null() {
        return std::ptr::null_mut();
    }
    to_owned_cstring(rational_to_json(&(*v).0).to_string())
}

/// # Safety
/// `v` must be a handle from this library, not yet freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn skein_value_free(v: *mut SkeinValue) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `s` must have been returned by a `skein_value_to_*` function.
#[no_mangle]
pub unsafe extern "C" fn skein_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
