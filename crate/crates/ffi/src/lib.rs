//! C interface.  Bases and operators are opaque handles; results come back
//! as JSON strings owned by the caller and released with [`fbm_string_free`].
//! Every function returns an [`FbmStatus`]; on failure the message is
//! available from [`fbm_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fbm::basis::SectionedBasis;
use fbm::compat::{e_compatibility, x_compatibility};
use fbm::ore::PolyOp;
use fbm::report::{matrix_report, solve_report, CompatReport, Status};
use fbm::syntax::{parse_basis, parse_poly_op};
use fbm::Error;

/// Result codes; the nonzero values below 5 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FbmStatus {
    Ok = 0,
    Other = 1,
    Parse = 2,
    NoCompatibility = 3,
    Verification = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// Opaque factorial basis.
pub struct FbmBasis(SectionedBasis);

/// Opaque operator in `x` and `E`.
pub struct FbmOperator(PolyOp);

/// Operator selector for [`fbm_compat_json`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FbmShift {
    E = 0,
    X = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(FbmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => FbmStatus::Parse,
            Error::NoCompatibility(_) => FbmStatus::NoCompatibility,
            Error::Verification(_) => FbmStatus::Verification,
            _ => FbmStatus::Other,
        };
        Fail(code, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FbmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FbmStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            FbmStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(FbmStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(FbmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(FbmStatus::NullArgument, format!("{what} is null")))
}

unsafe fn put_json(out: *mut *mut c_char, v: &impl serde::Serialize) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(FbmStatus::NullArgument, "output pointer is null".into()));
    }
    let s = serde_json::to_string(v).map_err(|e| Fail(FbmStatus::Other, e.to_string()))?;
    *out = CString::new(s).unwrap().into_raw();
    Ok(())
}

/// Parses a basis in the textual form, e.g. `product(binomial(1,0),binomial(1,0))`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.  The
/// handle written to `*out` must be released with [`fbm_basis_free`].
#[no_mangle]
pub unsafe extern "C" fn fbm_basis_parse(spec: *const c_char, out: *mut *mut FbmBasis) -> FbmStatus {
    guard(|| {
        let s = text(spec, "spec")?;
        if out.is_null() {
            return Err(Fail(FbmStatus::NullArgument, "output pointer is null".into()));
        }
        let b = parse_basis(s)?.build()?;
        *out = Box::into_raw(Box::new(FbmBasis(b)));
        Ok(())
    })
}

/// Number of sections of a basis, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a handle from [`fbm_basis_parse`].
#[no_mangle]
pub unsafe extern "C" fn fbm_basis_sections(b: *const FbmBasis) -> usize {
    b.as_ref().map_or(0, |b| b.0.sections())
}

/// # Safety
/// `b` must be null or a handle from [`fbm_basis_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fbm_basis_free(b: *mut FbmBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Parses an operator such as `(x+2)^2*E^2 - (11*x^2+33*x+25)*E - (x+1)^2`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.  The
/// handle written to `*out` must be released with [`fbm_operator_free`].
#[no_mangle]
pub unsafe extern "C" fn fbm_operator_parse(src: *const c_char, out: *mut *mut FbmOperator) -> FbmStatus {
    guard(|| {
        let s = text(src, "operator")?;
        if out.is_null() {
            return Err(Fail(FbmStatus::NullArgument, "output pointer is null".into()));
        }
        *out = Box::into_raw(Box::new(FbmOperator(parse_poly_op(s)?)));
        Ok(())
    })
}

/// # Safety
/// `op` must be null or a handle from [`fbm_operator_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fbm_operator_free(op: *mut FbmOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Section-0 solutions as JSON, verified on `lo..=hi`.  A failed
/// verification still writes the report and returns
/// [`FbmStatus::Verification`].
///
/// # Safety
/// `op` and `b` must be live handles and `out` a valid pointer.  The string
/// written to `*out` must be released with [`fbm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fbm_solve_json(
    op: *const FbmOperator,
    b: *const FbmBasis,
    lo: usize,
    hi: usize,
    out: *mut *mut c_char,
) -> FbmStatus {
    guard(|| {
        let (op, b) = (deref(op, "operator")?, deref(b, "basis")?);
        if lo > hi {
            return Err(Fail(FbmStatus::Other, format!("empty range {lo}..{hi}")));
        }
        let r = solve_report(&op.0, &b.0, (lo, hi), None, false)?;
        put_json(out, &r)?;
        match (r.verification.status, r.verification.failure) {
            (Status::Failed, Some(m)) => Err(Fail(FbmStatus::Verification, m)),
            _ => Ok(()),
        }
    })
}

/// `[RE]`, `[RX]` and, when `op` is not null, `[RL]` as JSON.
///
/// # Safety
/// `b` must be a live handle, `op` null or a live handle, and `out` a valid
/// pointer.  The string written to `*out` must be released with
/// [`fbm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fbm_matrix_json(
    op: *const FbmOperator,
    b: *const FbmBasis,
    out: *mut *mut c_char,
) -> FbmStatus {
    guard(|| {
        let b = deref(b, "basis")?;
        let r = matrix_report(op.as_ref().map(|o| &o.0), &b.0, None)?;
        put_json(out, &r)
    })
}

/// Expansion coefficients of `E` or `X` as JSON.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.  The string written
/// to `*out` must be released with [`fbm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fbm_compat_json(b: *const FbmBasis, which: FbmShift, out: *mut *mut c_char) -> FbmStatus {
    guard(|| {
        let b = deref(b, "basis")?;
        let c = match which {
            FbmShift::E => e_compatibility(&b.0, None, false)?,
            FbmShift::X => x_compatibility(&b.0)?,
        };
        put_json(out, &CompatReport::from(&c))
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fbm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null.  The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fbm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> serde_json::Value {
        let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        fbm_string_free(s);
        v
    }

    #[test]
    fn solve_roundtrip() {
        unsafe {
            let mut b = ptr::null_mut();
            let spec = c("shuffle([genbinom(1,0,0,1), genbinom(1,1,0,2)],[2,1,2])");
            assert_eq!(fbm_basis_parse(spec.as_ptr(), &mut b), FbmStatus::Ok);
            assert_eq!(fbm_basis_sections(b), 3);
            let mut op = ptr::null_mut();
            let src = c("(x+2)^2*E^2 - (11*x^2+33*x+25)*E - (x+1)^2");
            assert_eq!(fbm_operator_parse(src.as_ptr(), &mut op), FbmStatus::Ok);
            let mut out = ptr::null_mut();
            assert_eq!(fbm_solve_json(op, b, 0, 20, &mut out), FbmStatus::Ok);
            let v = take(out);
            assert_eq!(v["gcrd"], "S - (4*k+2)/(k+1)");
            assert_eq!(v["verification"]["status"], "ok");
            fbm_operator_free(op);
            fbm_basis_free(b);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut b = ptr::null_mut();
            let bad = c("binomal(1,0)");
            assert_eq!(fbm_basis_parse(bad.as_ptr(), &mut b), FbmStatus::Parse);
            assert!(b.is_null());
            let msg = CStr::from_ptr(fbm_last_error()).to_str().unwrap();
            assert!(msg.contains("unknown basis"), "{msg}");

            let p = c("power(1,0)");
            assert_eq!(fbm_basis_parse(p.as_ptr(), &mut b), FbmStatus::Ok);
            assert!(fbm_last_error().is_null());
            let mut out = ptr::null_mut();
            assert_eq!(fbm_compat_json(b, FbmShift::E, &mut out), FbmStatus::NoCompatibility);
            assert!(out.is_null());
            assert_eq!(fbm_compat_json(b, FbmShift::X, &mut out), FbmStatus::Ok);
            assert_eq!(take(out)["B"], 1);
            fbm_basis_free(b);

            assert_eq!(fbm_matrix_json(ptr::null(), ptr::null(), &mut out), FbmStatus::NullArgument);
            assert_eq!(fbm_basis_parse(ptr::null(), &mut b), FbmStatus::NullArgument);
        }
    }

    #[test]
    fn matrix_without_operator() {
        unsafe {
            let mut b = ptr::null_mut();
            let spec = c("product(binomial(1,0),binomial(1,0))");
            assert_eq!(fbm_basis_parse(spec.as_ptr(), &mut b), FbmStatus::Ok);
            let mut out = ptr::null_mut();
            assert_eq!(fbm_matrix_json(ptr::null(), b, &mut out), FbmStatus::Ok);
            let v = take(out);
            assert_eq!(v["RE"][0][0], "S + 1");
            assert!(v.get("matrix").is_none());
            fbm_basis_free(b);
        }
    }
}
