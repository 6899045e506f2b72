//! C ABI over the solver.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free` function. Every fallible call returns a
//! [`PhErrorCode`]; on failure a message is available from
//! [`ph_last_error_message`] on the same thread. Strings returned by the
//! library are freed with [`ph_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use planehit::geom::{HalfPlane, Point, Rational};
use planehit::instance::{
    parse_instance, serialize_instance, serialize_solution, HittingSet, Instance,
};
use planehit::solver::{solve, solve_baseline, solve_brute_force, SolveError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhErrorCode {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    IndexOutOfRange = 5,
    LimitExceeded = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhTier {
    /// The `O(n log^2 n)` pipeline.
    Fast = 0,
    /// Same pipeline covering with every maximal arc.
    Baseline = 1,
    /// Exhaustive subset search, up to `max_k` points.
    BruteForce = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhStatus {
    Optimal = 0,
    Infeasible = 1,
}

/// Points and half-planes being assembled or parsed.
pub struct PhInstance {
    points: Vec<Point>,
    halfplanes: Vec<HalfPlane>,
}

/// A solver answer.
pub struct PhSolution {
    inner: HittingSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(code: PhErrorCode, msg: impl Into<String>) -> PhErrorCode {
    set_error(msg);
    code
}

/// Runs `f`, turning a panic into [`PhErrorCode::Panic`].
fn guard(f: impl FnOnce() -> PhErrorCode) -> PhErrorCode {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => fail(PhErrorCode::Panic, "panic inside planehit"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PhErrorCode> {
    if s.is_null() {
        return Err(fail(PhErrorCode::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(PhErrorCode::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn read_rational(s: *const c_char) -> Result<Rational, PhErrorCode> {
    let text = read_str(s)?;
    text.parse()
        .map_err(|e| fail(PhErrorCode::Parse, format!("{e}")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn ph_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ph_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// An empty instance to be filled with `ph_instance_add_*`.
#[no_mangle]
pub extern "C" fn ph_instance_new() -> *mut PhInstance {
    Box::into_raw(Box::new(PhInstance {
        points: Vec::new(),
        halfplanes: Vec::new(),
    }))
}

/// Parses instance JSON into a new handle stored in `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_instance_from_json(
    json: *const c_char,
    out: *mut *mut PhInstance,
) -> PhErrorCode {
    guard(|| {
        if out.is_null() {
            return fail(PhErrorCode::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match parse_instance(text) {
            Ok(inst) => {
                let h = PhInstance {
                    points: inst.points().to_vec(),
                    halfplanes: inst.halfplanes().to_vec(),
                };
                *out = Box::into_raw(Box::new(h));
                PhErrorCode::Ok
            }
            Err(e) => fail(PhErrorCode::Parse, e.to_string()),
        }
    })
}

/// Appends the point `(x, y)`; coordinates are integers or `a/b` fractions.
///
/// # Safety
/// `inst` must come from this library; `x` and `y` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ph_instance_add_point(
    inst: *mut PhInstance,
    x: *const c_char,
    y: *const c_char,
) -> PhErrorCode {
    guard(|| {
        let Some(inst) = inst.as_mut() else {
            return fail(PhErrorCode::NullPointer, "null instance");
        };
        match (read_rational(x), read_rational(y)) {
            (Ok(x), Ok(y)) => {
                inst.points.push(Point::new(x, y));
                PhErrorCode::Ok
            }
            (Err(code), _) | (_, Err(code)) => code,
        }
    })
}

/// Appends the half-plane `nx * x + ny * y >= c`.
///
/// # Safety
/// `inst` must come from this library; the strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ph_instance_add_halfplane(
    inst: *mut PhInstance,
    nx: *const c_char,
    ny: *const c_char,
    c: *const c_char,
) -> PhErrorCode {
    guard(|| {
        let Some(inst) = inst.as_mut() else {
            return fail(PhErrorCode::NullPointer, "null instance");
        };
        let (nx, ny, c) = match (read_rational(nx), read_rational(ny), read_rational(c)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(code), _, _) | (_, Err(code), _) | (_, _, Err(code)) => return code,
        };
        match HalfPlane::new(nx, ny, c) {
            Ok(h) => {
                inst.halfplanes.push(h);
                PhErrorCode::Ok
            }
            Err(e) => fail(PhErrorCode::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ph_instance_num_points(inst: *const PhInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.points.len())
}

/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ph_instance_num_halfplanes(inst: *const PhInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.halfplanes.len())
}

fn build(inst: &PhInstance) -> Result<Instance, PhErrorCode> {
    Instance::new(inst.points.clone(), inst.halfplanes.clone())
        .map_err(|e| fail(PhErrorCode::InvalidArgument, e.to_string()))
}

/// Canonical instance JSON, or null on failure. Free with `ph_string_free`.
///
/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ph_instance_to_json(inst: *const PhInstance) -> *mut c_char {
    let Some(inst) = inst.as_ref() else {
        set_error("null instance");
        return ptr::null_mut();
    };
    match build(inst) {
        Ok(i) => into_c_string(serialize_instance(&i)),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `inst` must be null or come from this library, and not be used after.
#[no_mangle]
pub unsafe extern "C" fn ph_instance_free(inst: *mut PhInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Solves with the chosen tier and stores a new solution in `*out`.
/// `max_k` is only read by the brute-force tier.
///
/// # Safety
/// `inst` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ph_solve(
    inst: *const PhInstance,
    tier: PhTier,
    max_k: usize,
    out: *mut *mut PhSolution,
) -> PhErrorCode {
    guard(|| {
        if out.is_null() {
            return fail(PhErrorCode::NullPointer, "null output pointer");
        }
        let Some(inst) = inst.as_ref() else {
            return fail(PhErrorCode::NullPointer, "null instance");
        };
        let inst = match build(inst) {
            Ok(i) => i,
            Err(code) => return code,
        };
        let result = match tier {
            PhTier::Fast => solve(&inst),
            PhTier::Baseline => solve_baseline(&inst),
            PhTier::BruteForce => solve_brute_force(&inst, max_k),
        };
        match result {
            Ok(set) => {
                *out = Box::into_raw(Box::new(PhSolution { inner: set }));
                PhErrorCode::Ok
            }
            Err(e @ SolveError::LimitExceeded(_)) => {
                fail(PhErrorCode::LimitExceeded, e.to_string())
            }
            Err(e) => fail(PhErrorCode::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `sol` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn ph_solution_status(sol: *const PhSolution) -> PhStatus {
    match sol.as_ref() {
        Some(s) if s.inner.is_optimal() => PhStatus::Optimal,
        _ => PhStatus::Infeasible,
    }
}

/// Number of chosen points; 0 for an infeasible instance or a null handle.
///
/// # Safety
/// `sol` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ph_solution_size(sol: *const PhSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.inner.size())
}

/// Copies the chosen point indices (ascending) into `buf`, which must hold
/// at least `ph_solution_size(sol)` entries.
///
/// # Safety
/// `sol` must come from this library and `buf` must be writable for `len`
/// entries.
#[no_mangle]
pub unsafe extern "C" fn ph_solution_indices(
    sol: *const PhSolution,
    buf: *mut usize,
    len: usize,
) -> PhErrorCode {
    guard(|| {
        let Some(sol) = sol.as_ref() else {
            return fail(PhErrorCode::NullPointer, "null solution");
        };
        let ids = &sol.inner.point_ids;
        if ids.is_empty() {
            return PhErrorCode::Ok;
        }
        if buf.is_null() {
            return fail(PhErrorCode::NullPointer, "null buffer");
        }
        if len < ids.len() {
            return fail(
                PhErrorCode::IndexOutOfRange,
                format!("buffer holds {len}, need {}", ids.len()),
            );
        }
        ptr::copy_nonoverlapping(ids.as_ptr(), buf, ids.len());
        PhErrorCode::Ok
    })
}

/// Solution JSON; free with `ph_string_free`.
///
/// # Safety
/// `sol` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ph_solution_to_json(sol: *const PhSolution) -> *mut c_char {
    match sol.as_ref() {
        Some(s) => into_c_string(serialize_solution(&s.inner)),
        None => {
            set_error("null solution");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `sol` must be null or come from this library, and not be used after.
#[no_mangle]
pub unsafe extern "C" fn ph_solution_free(sol: *mut PhSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
