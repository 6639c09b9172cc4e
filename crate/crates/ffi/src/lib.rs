//! C ABI over `sexticlab`.
//!
//! Every fallible call returns an [`SxStatus`]. Results come back through out
//! pointers; strings returned to C are NUL-terminated, owned by the caller,
//! and released with [`sx_string_free`]. After a non-OK status,
//! [`sx_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sexticlab::parser::{parse_poly, print_poly};
use sexticlab::poly::{MultiPoly, Rational};
use sexticlab::triple_plane::{branch_locus, build_condition_system, solve_projection_centers, Convention, CubicSurface};
use sexticlab::versal::{j_invariant, VersalPoint};
use sexticlab::zariski::{verify_six_cusps, ZariskiInput};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SxStatus {
    Ok = 0,
    /// The computation ran but a checked property does not hold.
    VerificationFailed = 1,
    ParseError = 2,
    InvalidArgument = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Internal = 6,
}

/// Which triple-plane normalization to use.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SxConvention {
    /// `x3^3 - 3 f2 x3 + 2 f3`
    Lemma = 0,
    /// `x3^3 + f2 x3 + f3`
    Corollary = 1,
}

/// A polynomial with rational coefficients.
pub struct SxPoly {
    inner: MultiPoly,
}

/// A cubic surface `x3^3 + c1 f2 x3 + c2 f3`.
pub struct SxSurface {
    inner: CubicSurface,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(SxStatus, String);

impl Fail {
    fn arg(msg: impl ToString) -> Self {
        Fail(SxStatus::InvalidArgument, msg.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<SxStatus, Fail>) -> SxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SxStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SxStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SxStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(SxStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SxStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(SxStatus::Internal, "interior NUL in output".into()))?;
    write_out(out, c.into_raw())
}

fn rational_arg(s: &str) -> Result<Rational, Fail> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Fail::arg(format!("'{s}' is not a rational number: {e}")))
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail(SxStatus::Internal, e.to_string()))
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `expr` into a new handle stored in `*out`.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_poly_parse(expr: *const c_char, out: *mut *mut SxPoly) -> SxStatus {
    guard(|| {
        let src = str_arg(expr)?;
        let p = parse_poly(src).map_err(|e| Fail(SxStatus::ParseError, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(SxPoly { inner: p })))?;
        Ok(SxStatus::Ok)
    })
}

/// # Safety
/// `p` must be NULL or a live handle from [`sx_poly_parse`].
#[no_mangle]
pub unsafe extern "C" fn sx_poly_free(p: *mut SxPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of `p`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_poly_to_string(p: *const SxPoly, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let p = ref_arg(p)?;
        write_string(out, print_poly(&p.inner))?;
        Ok(SxStatus::Ok)
    })
}

/// Total degree of `p`, or -1 for the zero polynomial.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sx_poly_total_degree(p: *const SxPoly) -> i64 {
    p.as_ref()
        .and_then(|p| p.inner.total_degree())
        .map_or(-1, i64::from)
}

/// Builds the cubic surface for the conic `f2` and cubic `f3`.
///
/// # Safety
/// `f2`, `f3` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_surface_new(
    f2: *const SxPoly,
    f3: *const SxPoly,
    convention: SxConvention,
    out: *mut *mut SxSurface,
) -> SxStatus {
    guard(|| {
        let (f2, f3) = (ref_arg(f2)?, ref_arg(f3)?);
        let c = match convention {
            SxConvention::Lemma => Convention::Lemma,
            SxConvention::Corollary => Convention::Corollary,
        };
        let s = CubicSurface::with_convention(&f2.inner, &f3.inner, c).map_err(Fail::arg)?;
        write_out(out, Box::into_raw(Box::new(SxSurface { inner: s })))?;
        Ok(SxStatus::Ok)
    })
}

/// # Safety
/// `s` must be NULL or a live handle from [`sx_surface_new`].
#[no_mangle]
pub unsafe extern "C" fn sx_surface_free(s: *mut SxSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Branch curve of the surface as JSON. Returns `VerificationFailed` (with
/// the JSON still written) when it differs from the expected discriminant.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_surface_branch_locus_json(s: *const SxSurface, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let s = ref_arg(s)?;
        let b = branch_locus(&s.inner).map_err(Fail::arg)?;
        write_string(out, json(&b)?)?;
        Ok(if b.identity_holds {
            SxStatus::Ok
        } else {
            SxStatus::VerificationFailed
        })
    })
}

/// Condition rows and projection centers of the surface as JSON.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_surface_centers_json(s: *const SxSurface, seed: u64, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let s = ref_arg(s)?;
        let sys = build_condition_system(&s.inner);
        let set = solve_projection_centers(&sys, seed).map_err(|e| Fail(SxStatus::Internal, e.to_string()))?;
        let v = serde_json::json!({ "rows": sys.rows, "solutions": set });
        write_string(out, json(&v)?)?;
        Ok(if set.complete {
            SxStatus::Ok
        } else {
            SxStatus::VerificationFailed
        })
    })
}

/// Six-cusp verification of `a*f3^2 + b*f2^3`; `a` and `b` are rationals
/// written like `"-3/2"`.
///
/// # Safety
/// Handles must be live, strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_sextic_verify_json(
    f2: *const SxPoly,
    f3: *const SxPoly,
    a: *const c_char,
    b: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> SxStatus {
    guard(|| {
        let (f2, f3) = (ref_arg(f2)?, ref_arg(f3)?);
        let input = ZariskiInput {
            a: rational_arg(str_arg(a)?)?,
            b: rational_arg(str_arg(b)?)?,
            ..ZariskiInput::new(f2.inner.clone(), f3.inner.clone())
        };
        let report = verify_six_cusps(&input, seed).map_err(Fail::arg)?;
        write_string(out, json(&report)?)?;
        Ok(if report.verified {
            SxStatus::Ok
        } else {
            SxStatus::VerificationFailed
        })
    })
}

/// j-invariant of `y^2 = x^3 + a x + b` as a rational string.
///
/// # Safety
/// Strings must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sx_j_invariant(a: *const c_char, b: *const c_char, out: *mut *mut c_char) -> SxStatus {
    guard(|| {
        let p = VersalPoint::new(rational_arg(str_arg(a)?)?, rational_arg(str_arg(b)?)?);
        let j = j_invariant(&p).map_err(Fail::arg)?;
        write_string(out, sexticlab::poly::format_rational(&j))?;
        Ok(SxStatus::Ok)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_internal_errors() {
        assert_eq!(guard(|| panic!("boom")), SxStatus::Internal);
        let msg = unsafe { CStr::from_ptr(sx_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }

    #[test]
    fn rationals() {
        assert!(rational_arg(" -3/4 ").is_ok());
        assert!(matches!(rational_arg("1/0"), Err(Fail(SxStatus::InvalidArgument, _))));
    }
}
