//! C ABI over `varcoalg`.
//!
//! Equation systems are parsed and solved once into an opaque [`VcSystem`]
//! handle. Every function returns a [`VcStatus`] whose values match the exit
//! codes of the `varcoalg` binary; on failure the message is available from
//! [`vc_last_error_message`] on the same thread. Strings handed out by the
//! library must be released with [`vc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use indexmap::IndexMap;
use varcoalg::coalg::{RegularElement, Verdict};
use varcoalg::commands::cmd_check;
use varcoalg::dsl::parse_system;
use varcoalg::eqsolve::solve;
use varcoalg::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcStatus {
    Ok = 0,
    /// Elements are not bisimilar, or a check did not pass.
    Distinct = 1,
    /// Bad input: parse error, unknown variable, null pointer, invalid UTF-8.
    Invalid = 2,
    /// A size or depth guard tripped.
    Resource = 3,
    /// The library panicked. This is a bug.
    Internal = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcFormat {
    Set = 0,
    Json = 1,
}

/// A parsed and solved equation system.
pub struct VcSystem {
    solution: IndexMap<String, RegularElement>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(VcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_resource_guard() {
            VcStatus::Resource
        } else {
            VcStatus::Invalid
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: &str) -> Failure {
    Failure(VcStatus::Invalid, msg.to_string())
}

/// Runs `body`, clearing the error slot first and recording any failure.
fn guarded(body: impl FnOnce() -> Result<VcStatus, Failure>) -> VcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            VcStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not valid UTF-8")))
}

fn lookup<'a>(sys: &'a VcSystem, var: &str) -> Result<&'a RegularElement, Failure> {
    sys.solution
        .get(var)
        .ok_or_else(|| Error::UnboundVariable(var.to_string()).into())
}

fn hand_out(s: String, out: *mut *mut c_char) -> Result<VcStatus, Failure> {
    let c = CString::new(s).map_err(|_| invalid("output contains a NUL byte"))?;
    // SAFETY: the caller checked `out` for null.
    unsafe { *out = c.into_raw() };
    Ok(VcStatus::Ok)
}

/// Parses and solves a system written in the equation language.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer. On success
/// `*out` receives a handle to release with [`vc_system_free`].
#[no_mangle]
pub unsafe extern "C" fn vc_system_parse(src: *const c_char, out: *mut *mut VcSystem) -> VcStatus {
    guarded(|| {
        if out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        *out = ptr::null_mut();
        let solution = solve(&parse_system(text(src, "source")?)?)?;
        *out = Box::into_raw(Box::new(VcSystem { solution }));
        Ok(VcStatus::Ok)
    })
}

/// # Safety
/// `sys` must come from [`vc_system_parse`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vc_system_free(sys: *mut VcSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Writes the depth-`depth` expansion of `var` to `*out`.
///
/// # Safety
/// `sys` must be a live handle, `var` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn vc_solve_expand(
    sys: *const VcSystem,
    var: *const c_char,
    depth: usize,
    format: VcFormat,
    out: *mut *mut c_char,
) -> VcStatus {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            return Err(invalid("null handle or output pointer"));
        }
        *out = ptr::null_mut();
        let set = lookup(&*sys, text(var, "variable")?)?.expand(depth)?;
        hand_out(
            match format {
                VcFormat::Set => set.to_string(),
                VcFormat::Json => set.to_json(),
            },
            out,
        )
    })
}

/// Compares two solved variables. Returns `Ok` when they are bisimilar and
/// `Distinct` otherwise, with the first separating depth in `*depth` when
/// `depth` is non-null.
///
/// # Safety
/// `sys` must be a live handle, `v1`/`v2` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn vc_equal(
    sys: *const VcSystem,
    v1: *const c_char,
    v2: *const c_char,
    depth: *mut usize,
) -> VcStatus {
    guarded(|| {
        if sys.is_null() {
            return Err(invalid("null handle"));
        }
        let sys = &*sys;
        let a = lookup(sys, text(v1, "first variable")?)?;
        let b = lookup(sys, text(v2, "second variable")?)?;
        match a.bisim(b)? {
            Verdict::Bisimilar => Ok(VcStatus::Ok),
            Verdict::Distinct { depth: d } => {
                if !depth.is_null() {
                    *depth = d;
                }
                Ok(VcStatus::Distinct)
            }
        }
    })
}

/// Runs a named built-in check (`prop3` or `lemma31`) and writes its report
/// to `*out`. Returns `Distinct` if the check ran but did not pass.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn vc_check(name: *const c_char, out: *mut *mut c_char) -> VcStatus {
    guarded(|| {
        if out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        *out = ptr::null_mut();
        let report = cmd_check(text(name, "check name")?)?;
        hand_out(report.text, out)?;
        Ok(if report.passed { VcStatus::Ok } else { VcStatus::Distinct })
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn vc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}
