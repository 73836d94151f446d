//! Exercises the C ABI from the Rust side, and compiles a small C program
//! against the generated header and the static library.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;

use weincalc_ffi::*;

fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null(), "expected a string, got NULL: {}", last_error());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { wc_string_free(ptr) };
    s
}

fn last_error() -> String {
    let ptr = wc_last_error_message();
    if ptr.is_null() {
        return String::new();
    }
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { wc_string_free(ptr) };
    s
}

#[test]
fn weingarten_handles_and_values() {
    let mut handle: *mut WcClassFn = std::ptr::null_mut();
    let status = wc_weingarten(2, 2, 0, &mut handle);
    assert!(matches!(status, WcStatus::Ok));
    assert_eq!(unsafe { wc_classfn_degree(handle) }, 2);
    let e = CString::new("1,1").unwrap();
    assert_eq!(take_string(unsafe { wc_classfn_value(handle, e.as_ptr()) }), "1/3");
    let swap = CString::new("2").unwrap();
    assert_eq!(take_string(unsafe { wc_classfn_value(handle, swap.as_ptr()) }), "-1/6");
    let json = take_string(unsafe { wc_classfn_json(handle) });
    assert!(json.contains("\"1,1\":\"1/3\""), "json: {json}");
    unsafe { wc_classfn_free(handle) };
}

#[test]
fn symbolic_handle_and_route_agreement() {
    for route in 0..=2 {
        let mut handle: *mut WcClassFn = std::ptr::null_mut();
        assert!(matches!(wc_weingarten_symbolic(2, route, &mut handle), WcStatus::Ok));
        let e = CString::new("1,1").unwrap();
        assert_eq!(
            take_string(unsafe { wc_classfn_value(handle, e.as_ptr()) }),
            "1/((n-1)*(n+1))",
            "route {route}"
        );
        unsafe { wc_classfn_free(handle) };
    }
}

#[test]
fn domain_and_argument_errors() {
    let mut handle: *mut WcClassFn = std::ptr::null_mut();
    // k > n is a domain error with a useful message
    let status = wc_weingarten(3, 2, 0, &mut handle);
    assert!(matches!(status, WcStatus::Domain));
    assert!(last_error().contains("pseudo-wg"));
    // bad route id
    assert!(matches!(wc_weingarten(2, 3, 9, &mut handle), WcStatus::Invalid));
    // NULL out-pointer
    assert!(matches!(
        wc_gram(2, 3, std::ptr::null_mut()),
        WcStatus::NullPointer
    ));
    // bad cycle type yields NULL and an error message
    let mut ok: *mut WcClassFn = std::ptr::null_mut();
    assert!(matches!(wc_gram(2, 3, &mut ok), WcStatus::Ok));
    let bad = CString::new("2,0").unwrap();
    let value = unsafe { wc_classfn_value(ok, bad.as_ptr()) };
    assert!(value.is_null());
    assert!(!last_error().is_empty());
    unsafe { wc_classfn_free(ok) };
}

#[test]
fn moments_across_the_boundary() {
    let q = CString::new("p[1,2] p[2,1] p[n,n]^4 p~[3,3]^2 p~[n,n]^3").unwrap();
    let sym = take_string(unsafe { wc_moment_symbolic(q.as_ptr()) });
    assert_eq!(sym, "2*(n+6)/(n*(n+1)*(n+2)*(n+3)*(n+4))");
    let at4 = take_string(unsafe { wc_moment(q.as_ptr(), 4, 0) });
    assert_eq!(at4, "1/336");

    let u = CString::new("u[2,2] u[3,3] u~[2,3] u~[3,2]").unwrap();
    assert_eq!(take_string(unsafe { wc_moment(u.as_ptr(), 3, 0) }), "-1/24");
    assert_eq!(take_string(unsafe { wc_moment(u.as_ptr(), 3, 1) }), "-1/24");

    let report = take_string(unsafe {
        wc_sample_moment_json(u.as_ptr(), 3, 5000, 11, 2)
    });
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["samples"], 5000);
    assert!(v["standard_error"].as_f64().unwrap() > 0.0);
}

#[test]
fn pseudo_ascension_descension_handles() {
    let mut w: *mut WcClassFn = std::ptr::null_mut();
    assert!(matches!(wc_pseudo_weingarten(3, 2, &mut w), WcStatus::Ok));
    let e = CString::new("1,1,1").unwrap();
    assert_eq!(take_string(unsafe { wc_classfn_value(w, e.as_ptr()) }), "17/144");
    unsafe { wc_classfn_free(w) };

    let mut raise: *mut WcClassFn = std::ptr::null_mut();
    assert!(matches!(wc_ascension_symbolic(1, &mut raise), WcStatus::Ok));
    let one = CString::new("1").unwrap();
    assert_eq!(take_string(unsafe { wc_classfn_value(raise, one.as_ptr()) }), "(n-1)/n");
    unsafe { wc_classfn_free(raise) };

    let mut lower: *mut WcClassFn = std::ptr::null_mut();
    assert!(matches!(wc_descension(4, 3, &mut lower), WcStatus::Domain));
    assert!(matches!(wc_descension(4, 4, &mut lower), WcStatus::Ok));
    unsafe { wc_classfn_free(lower) };
}

/// Compiles and runs a C client against include/weincalc.h and the freshly
/// built static library.
#[test]
fn c_client_compiles_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    // the workspace target dir holds libweincalc_ffi.a for the current profile
    let target_dir = std::env::var("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|_| manifest.join("../../target"));
    let profile_dir = target_dir.join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let static_lib = profile_dir.join("libweincalc_ffi.a");
    assert!(
        static_lib.exists(),
        "static library not found at {}",
        static_lib.display()
    );

    let scratch = std::env::temp_dir().join(format!("weincalc-ffi-c-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    let c_source = scratch.join("client.c");
    std::fs::write(
        &c_source,
        r#"
#include <stdio.h>
#include <string.h>
#include "weincalc.h"

int main(void) {
    WcClassFn *wg = NULL;
    if (wc_weingarten(3, 3, 3, &wg) != WcStatus_Ok) return 1;
    char *value = wc_classfn_value(wg, "1,1,1");
    if (!value) return 2;
    int ok = strcmp(value, "7/120") == 0;
    wc_string_free(value);
    wc_classfn_free(wg);
    if (!ok) return 3;

    char *m = wc_moment_symbolic("r[1,1] r~[1,1] r[n,n] r~[n,n]");
    if (!m) return 4;
    ok = strcmp(m, "(n^2 - n + 2)/(n^2*(n+1))") == 0;
    wc_string_free(m);
    if (!ok) return 5;

    puts("c client ok");
    return 0;
}
"#,
    )
    .unwrap();

    let exe = scratch.join("client");
    let compile = Command::new("cc")
        .arg(&c_source)
        .arg("-I")
        .arg(&include_dir)
        .arg(&static_lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&exe).output().expect("client runs");
    assert_eq!(
        run.status.code(),
        Some(0),
        "client exit: {:?}, stderr: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("c client ok"));
    std::fs::remove_dir_all(&scratch).ok();
}
