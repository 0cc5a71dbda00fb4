//! C ABI over the command dispatcher.
//!
//! Every call takes NUL-terminated UTF-8 strings and yields an opaque
//! `IsosurfReport` owned by the caller until `isosurf_report_free`. Strings
//! returned from a report live as long as the report. Panics never cross the
//! boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isosurf::cli::{run_value, Command, Mode, Request};
use serde_json::Value;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsosurfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    Null = 1,
    /// An argument was not valid UTF-8.
    Utf8 = 2,
    /// Unknown command, malformed options or input; report exit code 2.
    Parse = 3,
    /// The operation is undefined on the input; report exit code 1.
    Domain = 4,
    /// Internal panic; no report is produced.
    Panic = 5,
}

/// Opaque report handle.
pub struct IsosurfReport {
    json: CString,
    svg: Option<CString>,
    exit_code: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

unsafe fn arg<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, IsosurfStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| {
        set_last_error(&format!("{name} is not valid UTF-8"));
        IsosurfStatus::Utf8
    })
}

fn parse_err(msg: String) -> IsosurfStatus {
    set_last_error(&msg);
    IsosurfStatus::Parse
}

/// Options document: `{"mode": "exact" | "float", "tol": real, "seed": integer}`.
fn apply_options(req: &mut Request, options: &str) -> Result<(), IsosurfStatus> {
    let v: Value = serde_json::from_str(options).map_err(|e| parse_err(format!("options: {e}")))?;
    let Value::Object(m) = v else { return Err(parse_err("options must be a JSON object".into())) };
    for (k, val) in &m {
        match (k.as_str(), val) {
            ("mode", Value::String(s)) if s == "exact" => req.mode = Mode::Exact,
            ("mode", Value::String(s)) if s == "float" => req.mode = Mode::Float,
            ("tol", Value::Number(n)) if n.as_f64().is_some() => req.tol = n.as_f64().expect("checked"),
            ("seed", Value::Number(n)) if n.as_u64().is_some() => req.seed = n.as_u64().expect("checked"),
            _ => return Err(parse_err(format!("options: bad entry {k:?}: {val}"))),
        }
    }
    Ok(())
}

fn run_inner(command: &str, input: Option<&str>, options: Option<&str>) -> Result<IsosurfReport, IsosurfStatus> {
    let cmd = Command::from_name(command).ok_or_else(|| parse_err(format!("unknown command {command:?}")))?;
    let mut req = Request::new(cmd, None);
    if let Some(o) = options {
        apply_options(&mut req, o)?;
    }
    let report = if cmd == Command::Selftest {
        req.input = Some(input.unwrap_or("smoke").to_string());
        isosurf::cli::run(&req)
    } else {
        let text = input.ok_or_else(|| {
            set_last_error("input is null");
            IsosurfStatus::Null
        })?;
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("input: {e}")))?;
        run_value(&req, &v)
    };
    let json = CString::new(report.to_text()).expect("JSON text has no NUL");
    let svg = report.svg.clone().map(|s| CString::new(s).expect("SVG text has no NUL"));
    if let Some(f) = &report.failure {
        set_last_error(f.tag());
    }
    Ok(IsosurfReport { json, svg, exit_code: report.exit_code() })
}

/// Runs `command` (e.g. `"classify-map"`) on the JSON document `input`.
/// For `"selftest"`, `input` is `"smoke"` or `"full"` and may be null.
/// `options` may be null. On `OK`, `DOMAIN` and report-level `PARSE`
/// failures `*out` receives a report; otherwise it is set to null.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn isosurf_run(
    command: *const c_char,
    input: *const c_char,
    options: *const c_char,
    out: *mut *mut IsosurfReport,
) -> IsosurfStatus {
    if out.is_null() {
        set_last_error("out is null");
        return IsosurfStatus::Null;
    }
    *out = ptr::null_mut();
    let result = catch_unwind(AssertUnwindSafe(|| {
        let command = arg(command, "command")?.ok_or_else(|| {
            set_last_error("command is null");
            IsosurfStatus::Null
        })?;
        run_inner(command, arg(input, "input")?, arg(options, "options")?)
    }));
    match result {
        Ok(Ok(rep)) => {
            let status = match rep.exit_code {
                0 => IsosurfStatus::Ok,
                1 => IsosurfStatus::Domain,
                _ => IsosurfStatus::Parse,
            };
            *out = Box::into_raw(Box::new(rep));
            status
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            IsosurfStatus::Panic
        }
    }
}

/// The report as JSON text; null for a null handle.
///
/// # Safety
/// `report` must be null or a live handle from `isosurf_run`.
#[no_mangle]
pub unsafe extern "C" fn isosurf_report_json(report: *const IsosurfReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// SVG text for commands that draw, else null.
///
/// # Safety
/// `report` must be null or a live handle from `isosurf_run`.
#[no_mangle]
pub unsafe extern "C" fn isosurf_report_svg(report: *const IsosurfReport) -> *const c_char {
    report.as_ref().and_then(|r| r.svg.as_ref()).map_or(ptr::null(), |s| s.as_ptr())
}

/// CLI exit code of the report (0, 1 or 2); -1 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle from `isosurf_run`.
#[no_mangle]
pub unsafe extern "C" fn isosurf_report_exit_code(report: *const IsosurfReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.exit_code)
}

/// Frees a report; null is ignored.
///
/// # Safety
/// `report` must be null or a handle from `isosurf_run` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isosurf_report_free(report: *mut IsosurfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Message of the last failure on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn isosurf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn isosurf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
