//! C interface to `equitrace`.
//!
//! Every fallible function returns an [`EqtStatus`] and writes its result
//! through an out-pointer. Strings handed out by the library are NUL
//! terminated JSON and must be released with [`eqt_string_free`]. The message
//! for the most recent failure on the calling thread is available from
//! [`eqt_last_error_message`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use equitrace::lefschetz::{trace_primitive, HypersurfaceAction, Spectrum, TraceEngine};
use equitrace::symgroup::{is_character, signed_theta_tilde, theta_tilde};
use equitrace::{Error, Rational};
use num_traits::ToPrimitive;
use serde_json::json;

/// Result codes. `EQT_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqtStatus {
    EqtOk = 0,
    EqtNullPointer = 1,
    EqtInvalidUtf8 = 2,
    EqtParse = 3,
    EqtInvalidInput = 4,
    EqtDivisionByZero = 5,
    EqtNotRational = 6,
    EqtZeroReciprocal = 7,
    EqtWindowExhausted = 8,
    EqtNotPolynomial = 9,
    EqtInternalMismatch = 10,
    EqtEmptySpectrum = 11,
    EqtNonIntegralValue = 12,
    EqtSearchCapExceeded = 13,
    EqtCapExceeded = 14,
    /// The value does not fit the requested fixed-width output.
    EqtOverflow = 15,
    EqtPanic = 99,
}

impl From<&Error> for EqtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DivisionByZero => EqtStatus::EqtDivisionByZero,
            Error::NotRational(_) => EqtStatus::EqtNotRational,
            Error::ZeroReciprocal => EqtStatus::EqtZeroReciprocal,
            Error::WindowExhausted { .. } => EqtStatus::EqtWindowExhausted,
            Error::NotPolynomial(_) => EqtStatus::EqtNotPolynomial,
            Error::InternalMismatch(_) => EqtStatus::EqtInternalMismatch,
            Error::Parse { .. } => EqtStatus::EqtParse,
            Error::EmptySpectrum => EqtStatus::EqtEmptySpectrum,
            Error::NonIntegralValue { .. } => EqtStatus::EqtNonIntegralValue,
            Error::SearchCapExceeded { .. } => EqtStatus::EqtSearchCapExceeded,
            Error::CapExceeded { .. } => EqtStatus::EqtCapExceeded,
            Error::InvalidInput(_) => EqtStatus::EqtInvalidInput,
        }
    }
}

/// Opaque handle to a hypersurface degree together with an eigenvalue spectrum.
pub struct EqtAction {
    inner: HypersurfaceAction,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(EqtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `f`, recording failures and turning panics into `EqtPanic`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EqtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            EqtStatus::EqtOk
        }
        Ok(Err(Failure(code, msg))) => {
            set_last_error(&msg);
            code
        }
        Err(_) => {
            set_last_error("panic inside equitrace");
            EqtStatus::EqtPanic
        }
    }
}

fn null() -> Failure {
    Failure(EqtStatus::EqtNullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(EqtStatus::EqtInvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: serde_json::Value) -> Result<(), Failure> {
    let s = CString::new(v.to_string()).expect("JSON has no NUL bytes");
    write(out, s.into_raw())
}

unsafe fn action<'a>(a: *const EqtAction) -> Result<&'a HypersurfaceAction, Failure> {
    a.as_ref().map(|a| &a.inner).ok_or_else(null)
}

/// Message for the last failure on this thread, or an empty string. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn eqt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eqt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an action from a degree and a spectrum such as `"2: 0^3, 1^1"`.
///
/// # Safety
/// `spectrum` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_action_new(
    degree: u32,
    spectrum: *const c_char,
    out: *mut *mut EqtAction,
) -> EqtStatus {
    guard(|| {
        let s = Spectrum::parse(read_str(spectrum)?)?;
        let inner = HypersurfaceAction::new(degree, s)?;
        write(out, Box::into_raw(Box::new(EqtAction { inner })))
    })
}

/// Releases an action. Null is ignored.
///
/// # Safety
/// `a` must come from [`eqt_action_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eqt_action_free(a: *mut EqtAction) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension n of the hypersurface.
///
/// # Safety
/// `a` must be a live action; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_action_dimension(a: *const EqtAction, out: *mut u32) -> EqtStatus {
    guard(|| write(out, action(a)?.n()))
}

/// Trace on primitive middle cohomology as a reduced fraction. Fails with
/// `EqtOverflow` when the value does not fit in 64 bits.
///
/// # Safety
/// `a` must be a live action; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_action_trace_rational(
    a: *const EqtAction,
    num: *mut i64,
    den: *mut i64,
) -> EqtStatus {
    guard(|| {
        let r: Rational = trace_primitive(action(a)?).to_rational()?;
        let (Some(p), Some(q)) = (r.numer().to_i64(), r.denom().to_i64()) else {
            return Err(Failure(
                EqtStatus::EqtOverflow,
                format!("{r} does not fit in i64"),
            ));
        };
        write(num, p)?;
        write(den, q)
    })
}

/// Trace as JSON: `{"trace": "...", "value": {"conductor": N, "coeffs": [...]}}`.
///
/// # Safety
/// `a` must be a live action; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_action_trace_json(
    a: *const EqtAction,
    out: *mut *mut c_char,
) -> EqtStatus {
    guard(|| {
        let t = trace_primitive(action(a)?);
        write_json(out, json!({"trace": t.to_string(), "value": t}))
    })
}

/// chi_y of the hypersurface and of its primitive part, as JSON strings.
///
/// # Safety
/// `a` must be a live action; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_action_chi_y_json(
    a: *const EqtAction,
    window_slack: u32,
    out: *mut *mut c_char,
) -> EqtStatus {
    guard(|| {
        let a = action(a)?;
        let engine = TraceEngine::new(window_slack as usize);
        let chi = engine.chi_y_hypersurface(a)?;
        let prim = engine.chi_y_primitive(a)?;
        write_json(
            out,
            json!({"chi_y": chi.to_string(), "chi_y_prim": prim.to_string()}),
        )
    })
}

/// Primitive Hodge numbers h^{p,n-p} for p = 0..n, as a JSON array of strings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_primitive_hodge_numbers_json(
    n: u32,
    d: u32,
    out: *mut *mut c_char,
) -> EqtStatus {
    guard(|| {
        let h = TraceEngine::new(equitrace::lefschetz::DEFAULT_WINDOW_SLACK)
            .primitive_hodge_numbers(n, d)?;
        let h: Vec<String> = h.iter().map(|v| v.to_string()).collect();
        write_json(out, json!(h))
    })
}

/// Whether sigma -> l^{m_1(sigma) - 1} on S_n (times the sign character if
/// `signed` is set) is a character.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqt_theta_is_character(
    n: u32,
    l: u64,
    signed: bool,
    out: *mut bool,
) -> EqtStatus {
    guard(|| {
        let f = if signed {
            signed_theta_tilde(n, l)?
        } else {
            theta_tilde(n, l)?
        };
        write(out, is_character(&f).is_character)
    })
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn eqt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
