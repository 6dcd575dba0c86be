//! C ABI over `cmfield`.
//!
//! Every fallible function returns a [`CmfStatus`]. On failure the message is kept per
//! thread and read with [`cmf_last_error`]. Handles are opaque and owned by the caller,
//! who releases them with the matching `_free` function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;

use cmfield::census::{bayes_posterior, QuarticDensities};
use cmfield::classifier::FieldType;
use cmfield::numfield::{classify_field, signature, ClassificationResult, IntegerPolynomial};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmfFieldType {
    CmField = 0,
    CmTypeNotCm = 1,
    TrType = 2,
}

impl From<FieldType> for CmfFieldType {
    fn from(t: FieldType) -> Self {
        match t {
            FieldType::CmField => CmfFieldType::CmField,
            FieldType::CmTypeNotCm => CmfFieldType::CmTypeNotCm,
            FieldType::TrType => CmfFieldType::TrType,
        }
    }
}

/// An integer polynomial.
pub struct CmfPolynomial(IntegerPolynomial);

/// The classification of a quartic or sextic field.
pub struct CmfClassification(ClassificationResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(bytes).expect("nul bytes removed")));
}

struct Failure(CmfStatus, String);

/// Runs `f`, recording its error and turning a panic into [`CmfStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CmfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CmfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            CmfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CmfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(CmfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or null after a success. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn cmf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cmf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `x^4 - x + 1` style text or comma-separated ascending coefficients.
///
/// # Safety
/// `text` must be a valid C string and `out_poly` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cmf_polynomial_parse(text: *const c_char, out_poly: *mut *mut CmfPolynomial) -> CmfStatus {
    guard(|| {
        let slot = out(out_poly, "out")?;
        *slot = ptr::null_mut();
        let s = str_arg(text, "text")?;
        let f: IntegerPolynomial = s.parse().map_err(|e| Failure(CmfStatus::Parse, format!("{e}")))?;
        *slot = Box::into_raw(Box::new(CmfPolynomial(f)));
        Ok(())
    })
}

/// # Safety
/// `poly` must come from [`cmf_polynomial_parse`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cmf_polynomial_free(poly: *mut CmfPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree of a polynomial.
///
/// # Safety
/// `poly` must be a live handle and `degree` writable.
#[no_mangle]
pub unsafe extern "C" fn cmf_polynomial_degree(poly: *const CmfPolynomial, degree: *mut usize) -> CmfStatus {
    guard(|| {
        let p = handle(poly, "poly")?;
        *out(degree, "degree")? = p.0.degree();
        Ok(())
    })
}

/// Signature `(r1, r2)` of a squarefree polynomial.
///
/// # Safety
/// `poly` must be a live handle; `r1` and `r2` writable.
#[no_mangle]
pub unsafe extern "C" fn cmf_signature(poly: *const CmfPolynomial, r1: *mut usize, r2: *mut usize) -> CmfStatus {
    guard(|| {
        let p = handle(poly, "poly")?;
        let (r1, r2) = (out(r1, "r1")?, out(r2, "r2")?);
        let s = signature(&p.0).map_err(|e| Failure(CmfStatus::Domain, e.to_string()))?;
        (*r1, *r2) = (s.r1, s.r2);
        Ok(())
    })
}

/// Classifies the field defined by an irreducible quartic or sextic.
///
/// # Safety
/// `poly` must be a live handle and `out_result` writable.
#[no_mangle]
pub unsafe extern "C" fn cmf_classify(
    poly: *const CmfPolynomial,
    out_result: *mut *mut CmfClassification,
) -> CmfStatus {
    guard(|| {
        let slot = out(out_result, "out")?;
        *slot = ptr::null_mut();
        let p = handle(poly, "poly")?;
        let r = classify_field(&p.0).map_err(|e| Failure(CmfStatus::Domain, e.to_string()))?;
        *slot = Box::into_raw(Box::new(CmfClassification(r)));
        Ok(())
    })
}

/// # Safety
/// `result` must come from [`cmf_classify`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cmf_classification_free(result: *mut CmfClassification) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `result` must be a live handle and `field_type` writable.
#[no_mangle]
pub unsafe extern "C" fn cmf_classification_type(
    result: *const CmfClassification,
    field_type: *mut CmfFieldType,
) -> CmfStatus {
    guard(|| {
        let r = handle(result, "result")?;
        *out(field_type, "field_type")? = r.0.verdict.category.into();
        Ok(())
    })
}

/// Galois group as the transitive label `degree`T`index`.
///
/// # Safety
/// `result` must be a live handle; `degree` and `index` writable.
#[no_mangle]
pub unsafe extern "C" fn cmf_classification_galois(
    result: *const CmfClassification,
    degree: *mut usize,
    index: *mut usize,
) -> CmfStatus {
    guard(|| {
        let r = handle(result, "result")?;
        let (d, i) = (out(degree, "degree")?, out(index, "index")?);
        (*d, *i) = (r.0.galois.label.degree, r.0.galois.label.index);
        Ok(())
    })
}

/// The full result as JSON. Release the string with [`cmf_string_free`].
///
/// # Safety
/// `result` must be a live handle and `json` writable.
#[no_mangle]
pub unsafe extern "C" fn cmf_classification_json(
    result: *const CmfClassification,
    json: *mut *mut c_char,
) -> CmfStatus {
    guard(|| {
        let slot = out(json, "json")?;
        *slot = ptr::null_mut();
        let r = handle(result, "result")?;
        let text = serde_json::to_string(&r.0).map_err(|e| Failure(CmfStatus::Domain, e.to_string()))?;
        *slot = CString::new(text).expect("JSON has no nul bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cmf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Posterior proportions of S4 (TR-type) and D4 (CM-type) among totally imaginary
/// quartic fields. The four densities are decimal strings; null selects the published
/// value for that slot.
///
/// # Safety
/// Each string argument must be null or a valid C string; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cmf_bayes(
    p_d4: *const c_char,
    p_s4: *const c_char,
    p_ti_given_s4: *const c_char,
    p_ti_given_d4: *const c_char,
    p_s4_given_ti: *mut f64,
    p_cm: *mut f64,
) -> CmfStatus {
    guard(|| {
        let (o_s4, o_cm) = (out(p_s4_given_ti, "p_s4_given_ti")?, out(p_cm, "p_cm")?);
        let arg = |p: *const c_char, default: &'static str, what: &str| {
            if p.is_null() {
                Ok(default)
            } else {
                str_arg(p, what)
            }
        };
        let d = QuarticDensities::from_decimals(
            arg(p_d4, "0.17111", "p_d4")?,
            arg(p_s4, "0.82889", "p_s4")?,
            arg(p_ti_given_s4, "0.30", "p_ti_given_s4")?,
            arg(p_ti_given_d4, "0.71747", "p_ti_given_d4")?,
        )
        .map_err(|e| Failure(CmfStatus::Parse, e.to_string()))?;
        let r = bayes_posterior(&d).map_err(|e| Failure(CmfStatus::Domain, e.to_string()))?;
        let f64_of = |q: &num_rational::BigRational| {
            q.to_f64().ok_or_else(|| Failure(CmfStatus::Domain, "posterior out of f64 range".into()))
        };
        (*o_s4, *o_cm) = (f64_of(&r.p_s4_given_ti)?, f64_of(&r.p_cm)?);
        Ok(())
    })
}
