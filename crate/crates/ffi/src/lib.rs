//! C ABI over `motzeta`.
//!
//! Values cross the boundary as opaque handles (`MzClass`, `MzSeries`,
//! `MzCurve`). Every fallible call returns an `MzStatus`; on failure the
//! message is available from `mz_last_error` on the same thread. Handles and
//! strings returned by the library are released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use motzeta::contact::{contact_class, parse_f};
use motzeta::curve::{builtin, CurveSing};
use motzeta::{Error, MotClass, MotSeries};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    DivisionByZero = 5,
    Scope = 6,
    Budget = 7,
    Validation = 8,
    OutOfRange = 9,
    Internal = 10,
    Panic = 11,
}

/// An element of the localized Grothendieck ring.
pub struct MzClass(MotClass);

/// A truncated power series in `T` with class coefficients.
pub struct MzSeries(MotSeries);

/// A plane curve singularity.
pub struct MzCurve(CurveSing);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MzStatus {
    match e {
        Error::Parse { .. } => MzStatus::Parse,
        Error::InvalidInput(_) | Error::UnknownBuiltin(_) => MzStatus::InvalidInput,
        Error::ZeroDenominator | Error::DivisionByZero | Error::Pole => MzStatus::DivisionByZero,
        Error::Scope(_) => MzStatus::Scope,
        Error::Budget(_) | Error::Truncation(_) => MzStatus::Budget,
        Error::Validation(_) => MzStatus::Validation,
        _ => MzStatus::Internal,
    }
}

struct Fail(MzStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MzStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            MzStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(MzStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MzStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer returned by a `*_to_string` call.
#[no_mangle]
pub unsafe extern "C" fn mz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a class such as `(L^2-1)/(L-1)` or `L^(-3/2)`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_parse(text: *const c_char, out: *mut *mut MzClass) -> MzStatus {
    guard(|| {
        let c: MotClass = str_arg(text)?.parse()?;
        put(out, MzClass(c))
    })
}

/// `L^(k/2)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_q_pow(k: i64, out: *mut *mut MzClass) -> MzStatus {
    guard(|| put(out, MzClass(MotClass::one().mul_q_pow(k))))
}

unsafe fn binary(
    a: *const MzClass,
    b: *const MzClass,
    out: *mut *mut MzClass,
    op: fn(&MotClass, &MotClass) -> motzeta::Result<MotClass>,
) -> MzStatus {
    guard(|| {
        let r = op(&obj(a)?.0, &obj(b)?.0)?;
        put(out, MzClass(r))
    })
}

/// `a + b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_add(a: *const MzClass, b: *const MzClass, out: *mut *mut MzClass) -> MzStatus {
    binary(a, b, out, |x, y| Ok(x + y))
}

/// `a - b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_sub(a: *const MzClass, b: *const MzClass, out: *mut *mut MzClass) -> MzStatus {
    binary(a, b, out, |x, y| Ok(x - y))
}

/// `a * b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_mul(a: *const MzClass, b: *const MzClass, out: *mut *mut MzClass) -> MzStatus {
    binary(a, b, out, |x, y| Ok(x * y))
}

/// `a / b`; fails with `DivisionByZero` when `b` is zero.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_div(a: *const MzClass, b: *const MzClass, out: *mut *mut MzClass) -> MzStatus {
    binary(a, b, out, |x, y| x.checked_div(y))
}

/// Adams operation `psi_k`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_adams(a: *const MzClass, k: u32, out: *mut *mut MzClass) -> MzStatus {
    guard(|| {
        if k == 0 {
            return Err(Fail(MzStatus::OutOfRange, "Adams index must be positive".into()));
        }
        let r = obj(a)?.0.adams(k as usize);
        put(out, MzClass(r))
    })
}

/// Writes 1 to `out` if the classes are equal, else 0.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_class_equal(a: *const MzClass, b: *const MzClass, out: *mut i32) -> MzStatus {
    guard(|| {
        let eq = obj(a)?.0 == obj(b)?.0;
        if out.is_null() {
            return Err(null());
        }
        *out = i32::from(eq);
        Ok(())
    })
}

/// Canonical text of a class, or NULL if `a` is NULL. Free with `mz_string_free`.
///
/// # Safety
/// `a` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_class_to_string(a: *const MzClass) -> *mut c_char {
    a.as_ref().map_or(ptr::null_mut(), |c| c_string(c.0.to_string()))
}

/// # Safety
/// `a` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mz_class_free(a: *mut MzClass) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Looks up a builtin curve by name (`smooth`, `node`, `cusp`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_curve_builtin(name: *const c_char, out: *mut *mut MzCurve) -> MzStatus {
    guard(|| {
        let c = builtin(str_arg(name)?)?;
        put(out, MzCurve(c))
    })
}

/// Reads a curve from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_curve_from_json(json: *const c_char, out: *mut *mut MzCurve) -> MzStatus {
    guard(|| {
        let c = CurveSing::from_json_str(str_arg(json)?)?;
        put(out, MzCurve(c))
    })
}

/// # Safety
/// `c` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mz_curve_free(c: *mut MzCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Motivic Poincare series of the curve up to `T^n`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_curve_poincare(c: *const MzCurve, n: usize, out: *mut *mut MzSeries) -> MzStatus {
    guard(|| {
        let s = obj(c)?.0.poincare_gel(n)?;
        put(out, MzSeries(s))
    })
}

/// Class of the contact locus `X_n` of `f` in `m` variables.
///
/// # Safety
/// `f` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_contact_class(f: *const c_char, m: usize, n: usize, out: *mut *mut MzClass) -> MzStatus {
    guard(|| {
        if n == 0 {
            return Err(Fail(MzStatus::OutOfRange, "contact order must be positive".into()));
        }
        let poly = parse_f(str_arg(f)?, m)?;
        let e = contact_class(&poly, n, None)?;
        put(out, MzClass(e.class))
    })
}

/// Number of stored coefficients, `T^0` through `T^(len-1)`.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_series_len(s: *const MzSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.coeffs().len())
}

/// Copy of the coefficient of `T^i`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mz_series_coeff(s: *const MzSeries, i: usize, out: *mut *mut MzClass) -> MzStatus {
    guard(|| {
        let s = obj(s)?;
        let c = s.0.coeffs().get(i).ok_or_else(|| {
            Fail(MzStatus::OutOfRange, format!("T^{i} is past the truncation order"))
        })?;
        put(out, MzClass(c.clone()))
    })
}

/// Text of a series, or NULL if `s` is NULL. Free with `mz_string_free`.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_series_to_string(s: *const MzSeries) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| c_string(s.0.to_string()))
}

/// JSON form of a series, or NULL if `s` is NULL. Free with `mz_string_free`.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_series_to_json(s: *const MzSeries) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| c_string(s.0.to_json().to_string()))
}

/// # Safety
/// `s` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mz_series_free(s: *mut MzSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
