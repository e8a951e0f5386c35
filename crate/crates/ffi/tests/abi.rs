use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use varcoalg_ffi::*;

const SYSTEM: &str = "index 2\nx = [1, $x]\ny = <1 ; $y>\none = 1\nzero = 0\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(src: &str) -> (VcStatus, *mut VcSystem) {
    let mut sys = ptr::null_mut();
    let status = unsafe { vc_system_parse(c(src).as_ptr(), &mut sys) };
    (status, sys)
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vc_string_free(s) };
    out
}

fn last_error() -> String {
    let p = vc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn expand_and_compare() {
    let (status, sys) = parse(SYSTEM);
    assert_eq!(status, VcStatus::Ok);
    assert!(vc_last_error_message().is_null());

    let mut out = ptr::null_mut();
    let s = unsafe { vc_solve_expand(sys, c("y").as_ptr(), 3, VcFormat::Set, &mut out) };
    assert_eq!(s, VcStatus::Ok);
    assert_eq!(take(out), "{{{0}},{{{0}},{{0},{{0}}}}}");
    let s = unsafe { vc_solve_expand(sys, c("x").as_ptr(), 2, VcFormat::Json, &mut out) };
    assert_eq!(s, VcStatus::Ok);
    assert_eq!(take(out), "[[[[]]]]");

    let mut depth = usize::MAX;
    assert_eq!(unsafe { vc_equal(sys, c("x").as_ptr(), c("y").as_ptr(), &mut depth) }, VcStatus::Ok);
    assert_eq!(depth, usize::MAX);
    assert_eq!(
        unsafe { vc_equal(sys, c("one").as_ptr(), c("zero").as_ptr(), &mut depth) },
        VcStatus::Distinct
    );
    assert_eq!(depth, 1);
    assert_eq!(
        unsafe { vc_equal(sys, c("one").as_ptr(), c("zero").as_ptr(), ptr::null_mut()) },
        VcStatus::Distinct
    );
    unsafe { vc_system_free(sys) };
}

#[test]
fn failures_set_status_and_message() {
    let (status, sys) = parse("index 2\nx = [$y, 1]\n");
    assert_eq!(status, VcStatus::Invalid);
    assert!(sys.is_null());
    assert!(last_error().contains("2:6"));

    let (_, sys) = parse(SYSTEM);
    let mut out = ptr::null_mut();
    let s = unsafe { vc_solve_expand(sys, c("nope").as_ptr(), 1, VcFormat::Set, &mut out) };
    assert_eq!(s, VcStatus::Invalid);
    assert!(out.is_null());
    assert!(last_error().contains("nope"));
    let s = unsafe { vc_solve_expand(sys, c("x").as_ptr(), 1000, VcFormat::Set, &mut out) };
    assert_eq!(s, VcStatus::Resource);
    let s = unsafe { vc_solve_expand(sys, ptr::null(), 1, VcFormat::Set, &mut out) };
    assert_eq!(s, VcStatus::Invalid);
    let s = unsafe { vc_solve_expand(ptr::null(), c("x").as_ptr(), 1, VcFormat::Set, &mut out) };
    assert_eq!(s, VcStatus::Invalid);
    unsafe { vc_system_free(sys) };
    unsafe { vc_system_free(ptr::null_mut()) };
    unsafe { vc_string_free(ptr::null_mut()) };

    let bad_utf8 = [0xffu8, 0];
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { vc_system_parse(bad_utf8.as_ptr().cast(), &mut sys) }, VcStatus::Invalid);
    assert_eq!(unsafe { vc_system_parse(c(SYSTEM).as_ptr(), ptr::null_mut()) }, VcStatus::Invalid);
}

#[test]
fn checks() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { vc_check(c("prop3").as_ptr(), &mut out) }, VcStatus::Ok);
    assert_eq!(take(out), "2 solutions: 0, {0}");
    assert_eq!(unsafe { vc_check(c("lemma31").as_ptr(), &mut out) }, VcStatus::Ok);
    assert!(take(out).ends_with("pass"));
    assert_eq!(unsafe { vc_check(c("other").as_ptr(), &mut out) }, VcStatus::Invalid);
    assert!(out.is_null());
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn header_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libvarcoalg_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let src = manifest.join("tests/smoke.c");
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi_smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc not runnable");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{{{0}}}\nbisimilar\ndistinct 1\nerror 2\n");
}
