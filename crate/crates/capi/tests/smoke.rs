//! Exercises the C entry points exactly as a foreign caller would.

use skein_capi::*;
use std::ffi::{CStr, CString};
use std::ptr;

unsafe fn text_of(v: *const SkeinValue) -> String {
    let s = skein_value_to_text(v);
    assert!(!s.is_null());
    let owned = CStr::from_ptr(s).to_string_lossy().into_owned();
    skein_string_free(s);
    owned
}

#[test]
fn parse_evaluate_verify_roundtrip() {
    unsafe {
        let pd = CString::new("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let mut d: *mut SkeinDiagram = ptr::null_mut();
        assert_eq!(skein_diagram_parse_pd(pd.as_ptr(), &mut d), SkeinStatus::Ok);
        assert_eq!(skein_diagram_crossings(d), 3);
        assert_eq!(skein_diagram_components(d), 1);

        let mut f: *mut SkeinValue = ptr::null_mut();
        assert_eq!(skein_eval_kauffman(d, &mut f), SkeinStatus::Ok);
        let mut e: *mut SkeinValue = ptr::null_mut();
        assert_eq!(skein_expand(d, SkeinFamily::Dn, &mut e), SkeinStatus::Ok);
        assert!(skein_value_equals(f, e));

        let mut equal = false;
        let mut states = 0usize;
        assert_eq!(
            skein_verify_identity(d, &mut equal, &mut states),
            SkeinStatus::Ok
        );
        assert!(equal);
        assert_eq!(states, 16);

        let json = skein_value_to_json(f);
        assert!(!json.is_null());
        let parsed: serde_json::Value =
            serde_json::from_str(&CStr::from_ptr(json).to_string_lossy()).unwrap();
        assert!(parsed.get("numerator").is_some());
        skein_string_free(json);

        skein_value_free(f);
        skein_value_free(e);
        skein_diagram_free(d);
    }
}

#[test]
fn braid_corpus_and_specialization() {
    unsafe {
        let spec = CString::new("BR 2 : 1 1 1").unwrap();
        let mut from_braid: *mut SkeinDiagram = ptr::null_mut();
        assert_eq!(
            skein_diagram_from_braid(spec.as_ptr(), &mut from_braid),
            SkeinStatus::Ok
        );
        let name = CString::new("trefoil-right").unwrap();
        let mut from_corpus: *mut SkeinDiagram = ptr::null_mut();
        assert_eq!(
            skein_diagram_corpus(name.as_ptr(), &mut from_corpus),
            SkeinStatus::Ok
        );

        let mut p1: *mut SkeinValue = ptr::null_mut();
        let mut p2: *mut SkeinValue = ptr::null_mut();
        assert_eq!(skein_eval_homfly(from_braid, &mut p1), SkeinStatus::Ok);
        assert_eq!(skein_eval_homfly(from_corpus, &mut p2), SkeinStatus::Ok);
        assert!(skein_value_equals(p1, p2));

        let mut circle: *mut SkeinDiagram = ptr::null_mut();
        let circle_name = CString::new("circle").unwrap();
        assert_eq!(
            skein_diagram_corpus(circle_name.as_ptr(), &mut circle),
            SkeinStatus::Ok
        );
        let mut delta: *mut SkeinValue = ptr::null_mut();
        assert_eq!(skein_eval_homfly(circle, &mut delta), SkeinStatus::Ok);
        let mut trivial: *mut SkeinValue = ptr::null_mut();
        assert_eq!(
            skein_value_substitute_a(delta, 1, &mut trivial),
            SkeinStatus::Ok
        );
        assert_eq!(text_of(trivial), "1");

        skein_value_free(p1);
        skein_value_free(p2);
        skein_value_free(delta);
        skein_value_free(trivial);
        skein_diagram_free(from_braid);
        skein_diagram_free(from_corpus);
        skein_diagram_free(circle);
    }
}

#[test]
fn status_codes_for_bad_input() {
    unsafe {
        let mut d: *mut SkeinDiagram = ptr::null_mut();
        assert_eq!(
            skein_diagram_parse_pd(ptr::null(), &mut d),
            SkeinStatus::NullArgument
        );
        let bad = CString::new("X[1,2,3]").unwrap();
        assert_eq!(
            skein_diagram_parse_pd(bad.as_ptr(), &mut d),
            SkeinStatus::Parse
        );
        let nope = CString::new("nope").unwrap();
        assert_eq!(
            skein_diagram_corpus(nope.as_ptr(), &mut d),
            SkeinStatus::UnknownName
        );
        // Null handles are tolerated by the free functions.
        skein_diagram_free(ptr::null_mut());
        skein_value_free(ptr::null_mut());
        skein_string_free(ptr::null_mut());
    }
}
