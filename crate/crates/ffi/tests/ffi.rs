use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;
use std::process::Command;
use std::ptr;

use equitrace_ffi::*;

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    eqt_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(eqt_last_error_message())
        .to_str()
        .unwrap()
        .to_owned()
}

unsafe fn new_action(d: u32, spectrum: &str) -> *mut EqtAction {
    let s = CString::new(spectrum).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(eqt_action_new(d, s.as_ptr(), &mut a), EqtStatus::EqtOk);
    assert!(!a.is_null());
    a
}

#[test]
fn rational_trace_without_strings() {
    unsafe {
        let a = new_action(4, "2: 0^3, 1^1");
        let (mut p, mut q) = (0i64, 0i64);
        assert_eq!(
            eqt_action_trace_rational(a, &mut p, &mut q),
            EqtStatus::EqtOk
        );
        assert_eq!((p, q), (-7, 1));
        let mut n = 0;
        assert_eq!(eqt_action_dimension(a, &mut n), EqtStatus::EqtOk);
        assert_eq!(n, 2);
        eqt_action_free(a);
    }
}

#[test]
fn klein_quartic_order_seven() {
    unsafe {
        let a = new_action(4, "7: 1, 4, 2");
        let (mut p, mut q) = (0i64, 0i64);
        assert_eq!(
            eqt_action_trace_rational(a, &mut p, &mut q),
            EqtStatus::EqtOk
        );
        assert_eq!((p, q), (-1, 1));
        eqt_action_free(a);
    }
}

#[test]
fn trace_json_matches_core() {
    unsafe {
        let a = new_action(3, "9: 1, 7, 4");
        let mut json = ptr::null_mut();
        assert_eq!(eqt_action_trace_json(a, &mut json), EqtStatus::EqtOk);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["trace"], "-1");
        eqt_action_free(a);
    }
}

#[test]
fn chi_y_json() {
    unsafe {
        let a = new_action(3, "1: 0^3");
        let mut json = ptr::null_mut();
        assert_eq!(eqt_action_chi_y_json(a, 2, &mut json), EqtStatus::EqtOk);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["chi_y_prim"], "1 - y");
        eqt_action_free(a);
    }
}

#[test]
fn hodge_numbers_json() {
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(
            eqt_primitive_hodge_numbers_json(2, 4, &mut json),
            EqtStatus::EqtOk
        );
        assert_eq!(take_string(json), r#"["1","19","1"]"#);
    }
}

#[test]
fn theta_character_flag() {
    unsafe {
        let mut ok = true;
        assert_eq!(
            eqt_theta_is_character(2, 2, false, &mut ok),
            EqtStatus::EqtOk
        );
        assert!(!ok);
        assert_eq!(
            eqt_theta_is_character(5, 3, false, &mut ok),
            EqtStatus::EqtOk
        );
        assert!(ok);
    }
}

#[test]
fn parse_errors_map_to_codes() {
    unsafe {
        let s = CString::new("3: 1, x").unwrap();
        let mut a = ptr::null_mut();
        assert_eq!(eqt_action_new(3, s.as_ptr(), &mut a), EqtStatus::EqtParse);
        assert!(a.is_null());
        assert!(last_error().contains("position"));
    }
}

#[test]
fn null_and_utf8_are_rejected() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(
            eqt_action_new(3, ptr::null(), &mut a),
            EqtStatus::EqtNullPointer
        );
        let bad = [0xffu8 as c_char, 0];
        assert_eq!(
            eqt_action_new(3, bad.as_ptr(), &mut a),
            EqtStatus::EqtInvalidUtf8
        );
        let mut n = 0;
        assert_eq!(
            eqt_action_dimension(ptr::null(), &mut n),
            EqtStatus::EqtNullPointer
        );
        eqt_action_free(ptr::null_mut());
        eqt_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_last_error() {
    unsafe {
        let mut a = ptr::null_mut();
        eqt_action_new(3, ptr::null(), &mut a);
        assert!(!last_error().is_empty());
        let a = new_action(3, "1: 0^3");
        assert!(last_error().is_empty());
        eqt_action_free(a);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(eqt_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = dir.join("equitrace.h");
    assert!(header.exists(), "header not generated");
    let src = std::env::temp_dir().join(format!("equitrace_hdr_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"equitrace.h\"\nint main(void) { EqtAction *a = 0; \
         return eqt_action_new(3, \"1: 0^3\", &a) == EQT_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&dir)
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    std::fs::remove_file(&src).ok();
    assert!(status.success());
}
