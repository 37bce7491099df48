//! C interface to `nothg2`.
//!
//! Every function returns an [`NgStatus`]; on anything but `NG_STATUS_OK` the
//! message is available from [`ng_last_error`] on the same thread. Handles
//! are opaque and owned by the caller, who releases them with the matching
//! `*_free` function. Strings returned to C are released with
//! [`ng_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nothg2::algebra::{parse, parse_infix, var, RationalFunction};
use nothg2::noth::residual_explicit;
use nothg2::verify::{self, parse_manifest, CheckReport};
use nothg2::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NgStatus {
    Ok = 0,
    /// Bad expression, manifest or group name.
    ParseError = 1,
    /// A null pointer or non-UTF-8 string was passed.
    InvalidArgument = 2,
    /// Exact arithmetic failed, e.g. a division by zero.
    MathError = 3,
    /// A Rust panic was caught at the boundary.
    Internal = 4,
}

/// A rational function over Q(12^(1/3), 3^(1/2)).
pub struct NgExpr(RationalFunction);

/// The reports of one verification run, ordered by check id.
pub struct NgReportList(Vec<CheckReport>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: NgStatus, msg: impl Into<String>) -> NgStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> NgStatus {
    let status = match e {
        Error::Parse { .. } => NgStatus::ParseError,
        _ => NgStatus::MathError,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> NgStatus) -> NgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(NgStatus::Internal, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, NgStatus> {
    if s.is_null() {
        return Err(fail(NgStatus::InvalidArgument, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(NgStatus::InvalidArgument, "string is not UTF-8"))
}

fn to_c(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> NgStatus {
    *out = Box::into_raw(Box::new(v));
    NgStatus::Ok
}

macro_rules! try_ng {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on this thread; do not free.
#[no_mangle]
pub extern "C" fn ng_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or came from this library and was not freed before.
#[no_mangle]
pub unsafe extern "C" fn ng_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `src`, in prefix form or infix, into `*out`.
///
/// # Safety
/// `src` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ng_expr_parse(src: *const c_char, out: *mut *mut NgExpr) -> NgStatus {
    guard(|| {
        if out.is_null() {
            return fail(NgStatus::InvalidArgument, "null output pointer");
        }
        let s = try_ng!(read_str(src));
        match parse(s).or_else(|_| parse_infix(s)).and_then(|e| e.to_rational_function()) {
            Ok(f) => put(out, NgExpr(f)),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `e` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ng_expr_free(e: *mut NgExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Canonical prefix text of `e`, or null for a null handle.
///
/// # Safety
/// `e` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ng_expr_to_string(e: *const NgExpr) -> *mut c_char {
    match e.as_ref() {
        Some(e) => to_c(&e.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `e` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ng_expr_is_zero(e: *const NgExpr) -> bool {
    e.as_ref().is_some_and(|e| e.0.is_zero())
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NgOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// `*out = a op b`.
///
/// # Safety
/// `a`, `b` are live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ng_expr_binary(op: NgOp, a: *const NgExpr, b: *const NgExpr, out: *mut *mut NgExpr) -> NgStatus {
    guard(|| {
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            return fail(NgStatus::InvalidArgument, "null handle");
        };
        if out.is_null() {
            return fail(NgStatus::InvalidArgument, "null output pointer");
        }
        let r = match op {
            NgOp::Add => Ok(&a.0 + &b.0),
            NgOp::Sub => Ok(&a.0 - &b.0),
            NgOp::Mul => Ok(&a.0 * &b.0),
            NgOp::Div => a.0.checked_div(&b.0),
        };
        match r {
            Ok(f) => put(out, NgExpr(f)),
            Err(e) => from_error(e),
        }
    })
}

/// Derivative of `e` in the variable named `v`.
///
/// # Safety
/// `e` is a live handle, `v` a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ng_expr_derivative(e: *const NgExpr, v: *const c_char, out: *mut *mut NgExpr) -> NgStatus {
    guard(|| {
        let Some(e) = e.as_ref() else { return fail(NgStatus::InvalidArgument, "null handle") };
        let v = try_ng!(read_str(v));
        if out.is_null() {
            return fail(NgStatus::InvalidArgument, "null output pointer");
        }
        put(out, NgExpr(e.0.derivative(var(v))))
    })
}

/// Left-hand side of Noth's equation for `H = h(v)`.
///
/// # Safety
/// `h` is a live handle, `v` a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ng_noth_residual(h: *const NgExpr, v: *const c_char, out: *mut *mut NgExpr) -> NgStatus {
    guard(|| {
        let Some(h) = h.as_ref() else { return fail(NgStatus::InvalidArgument, "null handle") };
        let v = try_ng!(read_str(v));
        if out.is_null() {
            return fail(NgStatus::InvalidArgument, "null output pointer");
        }
        put(out, NgExpr(residual_explicit(&h.0, var(v))))
    })
}

/// Runs a built-in check group: `all`, `noth`, `dft`, `tensors:<case>`,
/// `symmetry:<1|2>` or `diffeo:<0|1|2>`.
///
/// # Safety
/// `group` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ng_verify(group: *const c_char, out: *mut *mut NgReportList) -> NgStatus {
    guard(|| {
        let g = try_ng!(read_str(group));
        if out.is_null() {
            return fail(NgStatus::InvalidArgument, "null output pointer");
        }
        match verify::groups_by_name(g) {
            Ok(groups) => put(out, NgReportList(verify::run_groups(groups))),
            Err(e) => from_error(e),
        }
    })
}

/// Parses a TOML manifest and runs its checks.
///
/// # Safety
/// `toml` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ng_manifest_run(toml: *const c_char, out: *mut *mut NgReportList) -> NgStatus {
    guard(|| {
        let src = try_ng!(read_str(toml));
        if out.is_null() {
            return fail(NgStatus::InvalidArgument, "null output pointer");
        }
        match parse_manifest(src) {
            Ok(m) => put(out, NgReportList(m.run())),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `l` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ng_reports_len(l: *const NgReportList) -> usize {
    l.as_ref().map_or(0, |l| l.0.len())
}

/// Whether every report passed; false for a null handle.
///
/// # Safety
/// `l` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ng_reports_all_passed(l: *const NgReportList) -> bool {
    l.as_ref().is_some_and(|l| l.0.iter().all(CheckReport::passed))
}

/// Report `i` as one JSON object, or null when out of range.
///
/// # Safety
/// `l` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ng_report_json(l: *const NgReportList, i: usize) -> *mut c_char {
    match l.as_ref().and_then(|l| l.0.get(i)) {
        Some(r) => to_c(&r.to_json()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `l` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ng_reports_free(l: *mut NgReportList) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}
