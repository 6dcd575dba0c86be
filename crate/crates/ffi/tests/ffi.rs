use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use cmfield_ffi::*;

fn parse(text: &str) -> *mut CmfPolynomial {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { cmf_polynomial_parse(c.as_ptr(), &mut p) }, CmfStatus::Ok);
    assert!(!p.is_null());
    p
}

fn last_error() -> Option<String> {
    let p = cmf_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

#[test]
fn classify_through_handles() {
    let cases = [
        ("x^4 - x + 1", (4, 5), CmfFieldType::TrType),
        ("x^6 + x^5 + x^4 + x^3 + x^2 + x + 1", (6, 1), CmfFieldType::CmField),
        ("x^6 - x^5 + x^4 - 2x^3 + x^2 + 1", (6, 3), CmfFieldType::CmTypeNotCm),
    ];
    for (text, label, expected) in cases {
        let p = parse(text);
        let mut r = ptr::null_mut();
        unsafe {
            assert_eq!(cmf_classify(p, &mut r), CmfStatus::Ok, "{text}");
            assert!(last_error().is_none());
            let mut t = CmfFieldType::CmField;
            assert_eq!(cmf_classification_type(r, &mut t), CmfStatus::Ok);
            assert_eq!(t, expected, "{text}");
            let (mut d, mut i) = (0, 0);
            assert_eq!(cmf_classification_galois(r, &mut d, &mut i), CmfStatus::Ok);
            assert_eq!((d, i), label);
            let mut json = ptr::null_mut();
            assert_eq!(cmf_classification_json(r, &mut json), CmfStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
            assert_eq!(v["galois"]["label"], format!("{}T{}", label.0, label.1));
            cmf_string_free(json);
            cmf_classification_free(r);
            cmf_polynomial_free(p);
        }
    }
}

#[test]
fn signature_and_degree() {
    let p = parse("1,0,0,-2");
    let (mut r1, mut r2, mut n) = (9, 9, 0);
    unsafe {
        assert_eq!(cmf_polynomial_degree(p, &mut n), CmfStatus::Ok);
        assert_eq!(cmf_signature(p, &mut r1, &mut r2), CmfStatus::Ok);
        cmf_polynomial_free(p);
    }
    assert_eq!((n, r1, r2), (3, 1, 1));
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(cmf_polynomial_parse(ptr::null(), &mut p), CmfStatus::NullPointer);
        assert!(p.is_null());
        assert!(last_error().unwrap().contains("text"));

        let bad = CString::new("x^^3").unwrap();
        assert_eq!(cmf_polynomial_parse(bad.as_ptr(), &mut p), CmfStatus::Parse);
        assert!(p.is_null());
        assert!(!last_error().unwrap().is_empty());

        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(cmf_polynomial_parse(invalid.as_ptr().cast(), &mut p), CmfStatus::InvalidUtf8);

        let square = parse("x^4 + 2x^2 + 1");
        let mut r = ptr::null_mut();
        assert_eq!(cmf_classify(square, &mut r), CmfStatus::Domain);
        assert!(r.is_null());
        assert!(last_error().is_some());
        assert_eq!(cmf_classify(ptr::null(), &mut r), CmfStatus::NullPointer);
        assert_eq!(cmf_classify(square, ptr::null_mut()), CmfStatus::NullPointer);
        cmf_polynomial_free(square);

        // A later success clears the message.
        let mut n = 0;
        let q = parse("x^2 + 1");
        assert_eq!(cmf_polynomial_degree(q, &mut n), CmfStatus::Ok);
        assert!(last_error().is_none());
        cmf_polynomial_free(q);

        cmf_polynomial_free(ptr::null_mut());
        cmf_classification_free(ptr::null_mut());
        cmf_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(cmf_polynomial_parse(ptr::null(), &mut p), CmfStatus::NullPointer);
    }
    let other = std::thread::spawn(last_error).join().unwrap();
    assert!(other.is_none());
    assert!(last_error().is_some());
}

#[test]
fn bayes_defaults_and_inputs() {
    let (mut s4, mut cm) = (0.0, 0.0);
    unsafe {
        assert_eq!(cmf_bayes(ptr::null(), ptr::null(), ptr::null(), ptr::null(), &mut s4, &mut cm), CmfStatus::Ok);
    }
    assert!((s4 - 0.66948).abs() < 5e-6 && (cm - 0.33052).abs() < 5e-6, "{s4} {cm}");
    let half = CString::new("0.5").unwrap();
    let bad = CString::new("0.7").unwrap();
    unsafe {
        assert_eq!(
            cmf_bayes(half.as_ptr(), half.as_ptr(), half.as_ptr(), half.as_ptr(), &mut s4, &mut cm),
            CmfStatus::Ok
        );
        assert_eq!((s4, cm), (0.5, 0.5));
        assert_ne!(
            cmf_bayes(bad.as_ptr(), half.as_ptr(), half.as_ptr(), half.as_ptr(), &mut s4, &mut cm),
            CmfStatus::Ok
        );
        assert!(last_error().is_some());
        assert_eq!(
            cmf_bayes(ptr::null(), ptr::null(), ptr::null(), ptr::null(), ptr::null_mut(), &mut cm),
            CmfStatus::NullPointer
        );
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(cmf_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// The generated header compiles as C and declares every exported function.
#[test]
fn header_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/cmfield.h")).unwrap();
    for f in [
        "cmf_last_error",
        "cmf_version",
        "cmf_polynomial_parse",
        "cmf_polynomial_free",
        "cmf_polynomial_degree",
        "cmf_signature",
        "cmf_classify",
        "cmf_classification_free",
        "cmf_classification_type",
        "cmf_classification_galois",
        "cmf_classification_json",
        "cmf_string_free",
        "cmf_bayes",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use.c");
    std::fs::write(
        &src,
        r#"#include "cmfield.h"
int main(void) {
    CmfPolynomial *p = NULL;
    CmfClassification *r = NULL;
    CmfFieldType t;
    if (cmf_polynomial_parse("x^4 - x + 1", &p) != CMF_STATUS_OK) return 1;
    if (cmf_classify(p, &r) != CMF_STATUS_OK) { cmf_polynomial_free(p); return 2; }
    cmf_classification_type(r, &t);
    cmf_classification_free(r);
    cmf_polynomial_free(p);
    return t == CMF_FIELD_TYPE_TR_TYPE ? 0 : 3;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
}
