use std::ffi::{CStr, CString};
use std::ptr;

use motzeta_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn text(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    mz_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(mz_last_error()).to_str().unwrap().to_owned()
}

unsafe fn parse(s: &str) -> *mut MzClass {
    let mut out = ptr::null_mut();
    assert_eq!(mz_class_parse(cs(s).as_ptr(), &mut out), MzStatus::Ok);
    out
}

#[test]
fn class_arithmetic() {
    unsafe {
        let a = parse("(L^2-1)/(L-1)");
        let b = parse("L+1");
        let mut eq = -1;
        assert_eq!(mz_class_equal(a, b, &mut eq), MzStatus::Ok);
        assert_eq!(eq, 1);

        let mut q = ptr::null_mut();
        assert_eq!(mz_class_q_pow(-3, &mut q), MzStatus::Ok);
        assert_eq!(text(mz_class_to_string(q)), parse_text("L^(-3/2)"));

        let mut prod = ptr::null_mut();
        assert_eq!(mz_class_mul(a, q, &mut prod), MzStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(mz_class_div(prod, q, &mut back), MzStatus::Ok);
        assert_eq!(mz_class_equal(back, b, &mut eq), MzStatus::Ok);
        assert_eq!(eq, 1);

        let mut psi = ptr::null_mut();
        assert_eq!(mz_class_adams(q, 2, &mut psi), MzStatus::Ok);
        assert_eq!(text(mz_class_to_string(psi)), parse_text("L^-3"));

        for p in [a, b, q, prod, back, psi] {
            mz_class_free(p);
        }
    }
}

unsafe fn parse_text(s: &str) -> String {
    let c = parse(s);
    let t = text(mz_class_to_string(c));
    mz_class_free(c);
    t
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(mz_class_parse(cs("L^").as_ptr(), &mut out), MzStatus::Parse);
        assert!(out.is_null());
        assert!(last_error().contains("position"));

        assert_eq!(mz_class_parse(ptr::null(), &mut out), MzStatus::NullPointer);

        let bad = [0xffu8, 0];
        assert_eq!(mz_class_parse(bad.as_ptr().cast(), &mut out), MzStatus::InvalidUtf8);

        let one = parse("1");
        let zero = parse("0");
        assert_eq!(mz_class_div(one, zero, &mut out), MzStatus::DivisionByZero);
        assert_eq!(mz_class_adams(one, 0, &mut out), MzStatus::OutOfRange);
        mz_class_free(one);
        mz_class_free(zero);

        let mut curve = ptr::null_mut();
        assert_eq!(mz_curve_builtin(cs("nope").as_ptr(), &mut curve), MzStatus::InvalidInput);
        assert!(last_error().contains("nope"));
    }
}

#[test]
fn node_poincare_series() {
    unsafe {
        let mut curve = ptr::null_mut();
        assert_eq!(mz_curve_builtin(cs("node").as_ptr(), &mut curve), MzStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mz_curve_poincare(curve, 4, &mut s), MzStatus::Ok);
        assert_eq!(mz_series_len(s), 5);
        for (i, want) in ["1", "0", "(L-1)/L^2", "2*(L-1)/L^3", "3*(L-1)/L^4"].iter().enumerate() {
            let mut c = ptr::null_mut();
            assert_eq!(mz_series_coeff(s, i, &mut c), MzStatus::Ok);
            assert_eq!(text(mz_class_to_string(c)), parse_text(want));
            mz_class_free(c);
        }
        let mut c = ptr::null_mut();
        assert_eq!(mz_series_coeff(s, 5, &mut c), MzStatus::OutOfRange);
        assert!(text(mz_series_to_json(s)).starts_with('['));
        assert!(text(mz_series_to_string(s)).starts_with("1 + "));
        mz_series_free(s);
        mz_curve_free(curve);
    }
}

#[test]
fn contact_class_of_node() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(mz_contact_class(cs("x*y").as_ptr(), 2, 3, &mut c), MzStatus::Ok);
        assert_eq!(text(mz_class_to_string(c)), parse_text("2*(L-1)*L^3"));
        mz_class_free(c);
        assert_eq!(mz_contact_class(cs("x*y").as_ptr(), 2, 0, &mut c), MzStatus::OutOfRange);
    }
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        mz_class_free(ptr::null_mut());
        mz_series_free(ptr::null_mut());
        mz_curve_free(ptr::null_mut());
        mz_string_free(ptr::null_mut());
        assert!(mz_class_to_string(ptr::null()).is_null());
        assert_eq!(mz_series_len(ptr::null()), 0);
        assert!(!CStr::from_ptr(mz_version()).to_bytes().is_empty());
    }
}
