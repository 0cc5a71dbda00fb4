use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use isosurf_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn run(cmd: &str, input: Option<&str>, options: Option<&str>) -> (IsosurfStatus, *mut IsosurfReport) {
    let (cmd, input, options) = (c(cmd), input.map(c), options.map(c));
    let mut out = ptr::null_mut();
    let st = isosurf_run(
        cmd.as_ptr(),
        input.as_ref().map_or(ptr::null(), |s| s.as_ptr()),
        options.as_ref().map_or(ptr::null(), |s| s.as_ptr()),
        &mut out,
    );
    (st, out)
}

unsafe fn json(r: *const IsosurfReport) -> serde_json::Value {
    serde_json::from_str(CStr::from_ptr(isosurf_report_json(r)).to_str().unwrap()).unwrap()
}

#[test]
fn classify_through_the_abi() {
    unsafe {
        let doc = r#"{"A": [["2", "0"], ["0", "3"]], "B": [["1", "0"], ["0", "1"]]}"#;
        let (st, r) = run("classify-map", Some(doc), None);
        assert_eq!(st, IsosurfStatus::Ok);
        assert_eq!(isosurf_report_exit_code(r), 0);
        assert_eq!(json(r)["payload"]["class"]["tag"], "UV");
        assert!(isosurf_report_svg(r).is_null());
        isosurf_report_free(r);
    }
}

#[test]
fn envelope_report_carries_svg() {
    unsafe {
        let doc = r#"{"omega1": {"alpha": "1", "beta": ["0", "0"], "gamma": "-1"},
                      "omega2": {"moebius": [["i", "2"], ["0", "1"]]}}"#;
        let (st, r) = run("envelope", Some(doc), Some(r#"{"seed": 7}"#));
        assert_eq!(st, IsosurfStatus::Ok);
        assert_eq!(json(r)["payload"]["cyclic"]["text"], "x^2 + y^2 - 4");
        let svg = CStr::from_ptr(isosurf_report_svg(r)).to_str().unwrap();
        assert!(svg.starts_with("<svg"));
        isosurf_report_free(r);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let (st, r) = run("no-such-command", Some("{}"), None);
        assert_eq!((st, r.is_null()), (IsosurfStatus::Parse, true));
        assert!(CStr::from_ptr(isosurf_last_error()).to_str().unwrap().contains("unknown command"));

        let (st, r) = run("lift", Some("{not json"), None);
        assert_eq!((st, r.is_null()), (IsosurfStatus::Parse, true));

        let (st, r) = run("lift", Some("{}"), Some(r#"{"mode": "sideways"}"#));
        assert_eq!((st, r.is_null()), (IsosurfStatus::Parse, true));

        // schema violation: a report with exit code 2
        let (st, r) = run("decompose", Some(r#"{"tuple": [1]}"#), None);
        assert_eq!(st, IsosurfStatus::Parse);
        assert_eq!(isosurf_report_exit_code(r), 2);
        isosurf_report_free(r);

        let zero = r#"{"field": "Q", "terms": []}"#;
        let doc = format!(r#"{{"kind": "tparam", "P": {zero}, "Q": {zero}, "R": {zero}}}"#);
        let (st, r) = run("construct", Some(&doc), None);
        assert_eq!(st, IsosurfStatus::Domain);
        assert_eq!(json(r)["error"]["tag"], "surface.zero_polynomial");
        assert_eq!(CStr::from_ptr(isosurf_last_error()).to_str().unwrap(), "surface.zero_polynomial");
        isosurf_report_free(r);

        let (st, r) = run("lift", None, None);
        assert_eq!((st, r.is_null()), (IsosurfStatus::Null, true));
        assert_eq!(isosurf_run(ptr::null(), ptr::null(), ptr::null(), ptr::null_mut()), IsosurfStatus::Null);
        let bad = [0xffu8, 0];
        let cmd = c("lift");
        let mut out = ptr::null_mut();
        assert_eq!(isosurf_run(cmd.as_ptr(), bad.as_ptr().cast(), ptr::null(), &mut out), IsosurfStatus::Utf8);

        assert!(isosurf_report_json(ptr::null()).is_null());
        assert_eq!(isosurf_report_exit_code(ptr::null()), -1);
        isosurf_report_free(ptr::null_mut());
        assert_eq!(CStr::from_ptr(isosurf_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn selftest_smoke_via_abi() {
    unsafe {
        let (st, r) = run("selftest", None, None);
        assert_eq!(st, IsosurfStatus::Ok);
        assert_eq!(json(r)["payload"]["scale"], "smoke");
        isosurf_report_free(r);
    }
}

/// The static library. `cargo test` links integration tests against the
/// rlib only, so the staticlib is built into a scratch target directory.
fn static_lib() -> PathBuf {
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c-abi");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let status = Command::new(cargo)
        .args(["build", "--quiet", "--offline", "-p", "isosurf-ffi", "--lib", "--target-dir"])
        .arg(&target)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .expect("cargo runs");
    assert!(status.success(), "building the static library failed");
    let lib = target.join("debug/libisosurf_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    lib
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/isosurf.h");
    let text = std::fs::read_to_string(&header).expect("build script writes the header");
    for sym in ["isosurf_run", "isosurf_report_free", "ISOSURF_STATUS_DOMAIN", "IsosurfReport"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let lib = static_lib();
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "isosurf.h"
int main(void) {
    IsosurfReport *r = NULL;
    IsosurfStatus st = isosurf_run("classify-map",
        "{\"A\": [[\"2\", \"0\"], [\"0\", \"3\"]], \"B\": [[\"1\", \"0\"], [\"0\", \"1\"]]}", NULL, &r);
    if (st != ISOSURF_STATUS_OK || r == NULL) return 1;
    int ok = strstr(isosurf_report_json(r), "\"UV\"") != NULL;
    isosurf_report_free(r);
    st = isosurf_run("lift", "{}", NULL, &r);
    if (st != ISOSURF_STATUS_PARSE) return 2;
    isosurf_report_free(r);
    return ok ? 0 : 3;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler is available");
    assert!(status.success(), "C compilation failed");
    assert!(Command::new(&bin).status().unwrap().success(), "C program failed");
}
