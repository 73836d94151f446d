//! C ABI over the weincalc engine.
//!
//! Conventions: functions that produce a handle or string return a status
//! code and write through an out-pointer (or return NULL on failure); the
//! message for the most recent error on the calling thread is available from
//! `wc_last_error_message`. All returned strings are NUL-terminated, UTF-8,
//! and owned by the caller — release them with `wc_string_free`; handles go
//! back through `wc_classfn_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use weincalc::algebra::ClassFunction;
use weincalc::engine::{
    ascension, descension, gram_function, pseudo_weingarten, weingarten_by_ladder, weingarten_rat,
    weingarten_sym, WgRoute,
};
use weincalc::exact::ratfunc::RatFunc;
use weincalc::exact::rational::{rat, Rat};
use weincalc::moments::eval::{moment_rat, moment_sym, moment_u_recursive};
use weincalc::moments::query::{MomentQuery, Target};
use weincalc::sampler::{estimate_moment, SamplerConfig, DEFAULT_RESAMPLE_EPSILON};
use weincalc::sym::partition::Partition;

/// Status codes returned by the fallible entry points.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    /// Mathematically out of domain (e.g. k > n for the Weingarten function).
    Domain = 1,
    /// Malformed input (bad query text, bad cycle type, bad route id).
    Invalid = 2,
    /// A required pointer was NULL.
    NullPointer = 3,
    /// Input text was not valid UTF-8.
    Utf8 = 4,
    /// Internal panic; report this as a bug.
    Panic = 5,
}

enum ClassFnRepr {
    Numeric(ClassFunction<Rat>),
    Symbolic(ClassFunction<RatFunc>),
}

/// Opaque handle to a class function on S_k with exact values.
pub struct WcClassFn {
    repr: ClassFnRepr,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg.into());
}

fn guard<F: FnOnce() -> WcStatus>(body: F) -> WcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            WcStatus::Panic
        }
    }
}

fn guard_ptr<T, F: FnOnce() -> Option<T>>(body: F) -> Option<T> {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(v) => v,
        Err(_) => {
            set_error("internal panic");
            None
        }
    }
}

fn to_c_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("output contained an interior NUL byte");
            std::ptr::null_mut()
        }
    }
}

fn route_from(route: i32) -> Option<WgRoute> {
    match route {
        0 => Some(WgRoute::CharacterExpansion),
        1 => Some(WgRoute::GramInverse),
        2 => Some(WgRoute::RecursiveAscension),
        _ => None,
    }
}

fn emit_handle(out: *mut *mut WcClassFn, repr: ClassFnRepr) -> WcStatus {
    if out.is_null() {
        set_error("out pointer is NULL");
        return WcStatus::NullPointer;
    }
    let boxed = Box::new(WcClassFn { repr });
    unsafe { *out = Box::into_raw(boxed) };
    WcStatus::Ok
}

fn numeric_result(
    out: *mut *mut WcClassFn,
    result: weincalc::Result<ClassFunction<Rat>>,
) -> WcStatus {
    match result {
        Ok(f) => emit_handle(out, ClassFnRepr::Numeric(f)),
        Err(e) => {
            set_error(e.to_string());
            WcStatus::Domain
        }
    }
}

fn symbolic_result(
    out: *mut *mut WcClassFn,
    result: weincalc::Result<ClassFunction<RatFunc>>,
) -> WcStatus {
    match result {
        Ok(f) => emit_handle(out, ClassFnRepr::Symbolic(f)),
        Err(e) => {
            set_error(e.to_string());
            WcStatus::Domain
        }
    }
}

/// Weingarten function Wg_{k,n}. Routes: 0 = character expansion,
/// 1 = Gram inverse, 2 = dimension recursion, 3 = full ladder.
#[no_mangle]
pub extern "C" fn wc_weingarten(
    k: usize,
    n: i64,
    route: i32,
    out: *mut *mut WcClassFn,
) -> WcStatus {
    guard(|| {
        let result = if route == 3 {
            weingarten_by_ladder(k, n)
        } else {
            match route_from(route) {
                Some(r) => weingarten_rat(k, n, r),
                None => {
                    set_error(format!("unknown route id {route}"));
                    return WcStatus::Invalid;
                }
            }
        };
        numeric_result(out, result)
    })
}

/// Weingarten function of the formal dimension symbol. Routes 0..=2.
#[no_mangle]
pub extern "C" fn wc_weingarten_symbolic(
    k: usize,
    route: i32,
    out: *mut *mut WcClassFn,
) -> WcStatus {
    guard(|| match route_from(route) {
        Some(r) => symbolic_result(out, weingarten_sym(k, r)),
        None => {
            set_error(format!("unknown route id {route}"));
            WcStatus::Invalid
        }
    })
}

/// Canonical pseudo-Weingarten W_{k,n}, defined for every k, n >= 1.
#[no_mangle]
pub extern "C" fn wc_pseudo_weingarten(k: usize, n: i64, out: *mut *mut WcClassFn) -> WcStatus {
    guard(|| numeric_result(out, pseudo_weingarten(k, n)))
}

/// Ascension function of degree k at dimension n.
#[no_mangle]
pub extern "C" fn wc_ascension(k: usize, n: i64, out: *mut *mut WcClassFn) -> WcStatus {
    guard(|| numeric_result(out, ascension(k, &rat(n))))
}

/// Ascension function of the formal dimension symbol.
#[no_mangle]
pub extern "C" fn wc_ascension_symbolic(k: usize, out: *mut *mut WcClassFn) -> WcStatus {
    guard(|| symbolic_result(out, ascension(k, &RatFunc::var())))
}

/// Descension function of degree k at dimension n (requires k <= n).
#[no_mangle]
pub extern "C" fn wc_descension(k: usize, n: i64, out: *mut *mut WcClassFn) -> WcStatus {
    guard(|| numeric_result(out, descension(k, &rat(n))))
}

/// Descension function of the formal dimension symbol.
#[no_mangle]
pub extern "C" fn wc_descension_symbolic(k: usize, out: *mut *mut WcClassFn) -> WcStatus {
    guard(|| symbolic_result(out, descension(k, &RatFunc::var())))
}

/// Gram function G_{k,n}.
#[no_mangle]
pub extern "C" fn wc_gram(k: usize, n: i64, out: *mut *mut WcClassFn) -> WcStatus {
    guard(|| numeric_result(out, Ok(gram_function(k, &rat(n)))))
}

/// Gram function of the formal dimension symbol.
#[no_mangle]
pub extern "C" fn wc_gram_symbolic(k: usize, out: *mut *mut WcClassFn) -> WcStatus {
    guard(|| symbolic_result(out, Ok(gram_function(k, &RatFunc::var()))))
}

/// Degree k of the underlying symmetric group; 0 on NULL input.
///
/// # Safety
/// `handle` must come from this library and be unreleased.
#[no_mangle]
pub unsafe extern "C" fn wc_classfn_degree(handle: *const WcClassFn) -> usize {
    if handle.is_null() {
        return 0;
    }
    match unsafe { &(*handle).repr } {
        ClassFnRepr::Numeric(f) => f.degree(),
        ClassFnRepr::Symbolic(f) => f.degree(),
    }
}

/// Exact value at a cycle type given as comma-separated parts, e.g. "2,1,1".
/// Returns a caller-owned string, or NULL with an error message.
///
/// # Safety
/// `handle` must come from this library and be unreleased; `cycle_type` must
/// be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wc_classfn_value(
    handle: *const WcClassFn,
    cycle_type: *const c_char,
) -> *mut c_char {
    guard_ptr(|| {
        if handle.is_null() || cycle_type.is_null() {
            set_error("NULL pointer argument");
            return None;
        }
        let text = match unsafe { CStr::from_ptr(cycle_type) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("cycle type is not valid UTF-8");
                return None;
            }
        };
        let ct: Partition = match text.parse() {
            Ok(ct) => ct,
            Err(e) => {
                set_error(e.to_string());
                return None;
            }
        };
        let rendered = match unsafe { &(*handle).repr } {
            ClassFnRepr::Numeric(f) => f.value(&ct).map(|v| v.to_string()),
            ClassFnRepr::Symbolic(f) => f.value(&ct).map(|v| v.to_string()),
        };
        match rendered {
            Ok(s) => Some(to_c_string(s)),
            Err(e) => {
                set_error(e.to_string());
                None
            }
        }
    })
    .unwrap_or(std::ptr::null_mut())
}

/// The whole table as JSON (cycle type -> exact value string). Caller owns
/// the returned string; NULL on error.
///
/// # Safety
/// `handle` must come from this library and be unreleased.
#[no_mangle]
pub unsafe extern "C" fn wc_classfn_json(handle: *const WcClassFn) -> *mut c_char {
    guard_ptr(|| {
        if handle.is_null() {
            set_error("NULL pointer argument");
            return None;
        }
        let json = match unsafe { &(*handle).repr } {
            ClassFnRepr::Numeric(f) => serde_json::to_string(&f.to_json()),
            ClassFnRepr::Symbolic(f) => serde_json::to_string(&f.to_json()),
        };
        match json {
            Ok(s) => Some(to_c_string(s)),
            Err(e) => {
                set_error(e.to_string());
                None
            }
        }
    })
    .unwrap_or(std::ptr::null_mut())
}

/// Releases a class-function handle. NULL is a no-op.
///
/// # Safety
/// `handle` must come from this library and not already be released.
#[no_mangle]
pub unsafe extern "C" fn wc_classfn_free(handle: *mut WcClassFn) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

fn parse_query(query: *const c_char) -> Option<MomentQuery> {
    if query.is_null() {
        set_error("query pointer is NULL");
        return None;
    }
    let text = match unsafe { CStr::from_ptr(query) }.to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("query is not valid UTF-8");
            return None;
        }
    };
    match MomentQuery::parse(text) {
        Ok(q) => Some(q),
        Err(e) => {
            set_error(e.to_string());
            None
        }
    }
}

/// Exact moment of a query like `p[1,2]^2 p~[n,2]^2 r[2,2]^3` at dimension n.
/// U-queries go through the Weingarten sum unless `recursive` is nonzero.
/// Caller owns the returned string; NULL on error.
///
/// # Safety
/// `query` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wc_moment(query: *const c_char, n: i64, recursive: i32) -> *mut c_char {
    guard_ptr(|| {
        let q = parse_query(query)?;
        let use_recursive = recursive != 0 && matches!(q.target(), Ok(Target::U));
        let value = if use_recursive {
            moment_u_recursive(&q, n)
        } else {
            moment_rat(&q, n)
        };
        match value {
            Ok(v) => Some(to_c_string(v.to_string())),
            Err(e) => {
                set_error(e.to_string());
                None
            }
        }
    })
    .unwrap_or(std::ptr::null_mut())
}

/// Exact symbolic moment of a p/r query as a rational function of n.
/// Caller owns the returned string; NULL on error.
///
/// # Safety
/// `query` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wc_moment_symbolic(query: *const c_char) -> *mut c_char {
    guard_ptr(|| {
        let q = parse_query(query)?;
        match moment_sym(&q) {
            Ok(v) => Some(to_c_string(v.to_string())),
            Err(e) => {
                set_error(e.to_string());
                None
            }
        }
    })
    .unwrap_or(std::ptr::null_mut())
}

/// Monte Carlo estimate of a moment; returns the run report as JSON
/// (query, n, N, seed, mean, stderr). Caller owns the string; NULL on error.
///
/// # Safety
/// `query` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wc_sample_moment_json(
    query: *const c_char,
    n: i64,
    samples: u64,
    seed: u64,
    workers: usize,
) -> *mut c_char {
    guard_ptr(|| {
        let q = parse_query(query)?;
        let config = SamplerConfig {
            seed,
            samples,
            workers,
            resample_epsilon: DEFAULT_RESAMPLE_EPSILON,
        };
        match estimate_moment(&q, n, &config) {
            Ok(est) => match serde_json::to_string(&est) {
                Ok(s) => Some(to_c_string(s)),
                Err(e) => {
                    set_error(e.to_string());
                    None
                }
            },
            Err(e) => {
                set_error(e.to_string());
                None
            }
        }
    })
    .unwrap_or(std::ptr::null_mut())
}

/// A copy of the most recent error message on this thread (possibly empty).
/// Caller owns the returned string.
#[no_mangle]
pub extern "C" fn wc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| to_c_string(slot.borrow().clone()))
}

/// Releases a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must have been returned by this library and not already be released.
#[no_mangle]
pub unsafe extern "C" fn wc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
