//! C ABI over `teter-core`.
//!
//! Ideals live behind the opaque [`TeterIdeal`] handle. Every call returns a
//! [`TeterStatus`]; on failure the message is available from
//! [`teter_last_error_message`] on the same thread. Strings handed out by the
//! library are released with [`teter_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use teter_core::linalg::{self, RandomSense, RandomVerdict};
use teter_core::{hom, parse_ideal, DivisorPoset, Error, MonomialIdeal, TeterVerdict};

/// Opaque handle to a parsed ideal and its divisor poset.
pub struct TeterIdeal {
    ideal: MonomialIdeal,
    poset: DivisorPoset,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TeterStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Malformed = 3,
    NotArtinian = 4,
    UnitIdeal = 5,
    Gorenstein = 6,
    InvalidArgument = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TeterTypeVerdict {
    No = 0,
    Yes = 1,
    Gorenstein = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TeterRandomSense {
    Graded = 0,
    Local = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TeterRandomVerdict {
    ProbablyNo = 0,
    Yes = 1,
    Gorenstein = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> TeterStatus {
    match err {
        Error::Malformed(_)
        | Error::NegativeExponent(_)
        | Error::NoGenerators
        | Error::ArityMismatch { .. }
        | Error::Json(_) => TeterStatus::Malformed,
        Error::NotArtinian(_) => TeterStatus::NotArtinian,
        Error::UnitIdeal => TeterStatus::UnitIdeal,
        Error::Gorenstein => TeterStatus::Gorenstein,
        Error::CompositeModulus(_) | Error::InvalidArgument(_) => TeterStatus::InvalidArgument,
        _ => TeterStatus::Internal,
    }
}

enum Failure {
    Status(TeterStatus, String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TeterStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TeterStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(format!("{}: {e}", e.kind()));
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            TeterStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure::Status(TeterStatus::NullArgument, format!("{name} is null"))
}

unsafe fn handle<'a>(ideal: *const TeterIdeal) -> Result<&'a TeterIdeal, Failure> {
    ideal.as_ref().ok_or_else(|| null("ideal"))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::Status(TeterStatus::Internal, "output contains a NUL byte".into()))
}

/// Parses an ideal given as JSON (`{"vars":..,"generators":..}`) or as an
/// expression such as `x^3, y^4, x*y^2`, and builds its divisor poset.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn teter_ideal_parse(text: *const c_char, out: *mut *mut TeterIdeal) -> TeterStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure::Status(TeterStatus::InvalidUtf8, "text is not UTF-8".into()))?;
        let ideal = parse_ideal(text, None)?;
        let poset = DivisorPoset::build(&ideal)?;
        *out = Box::into_raw(Box::new(TeterIdeal { ideal, poset }));
        Ok(())
    })
}

/// Releases a handle from [`teter_ideal_parse`]. Null is ignored.
///
/// # Safety
/// `ideal` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn teter_ideal_free(ideal: *mut TeterIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Number of standard monomials of `R = S/I`.
///
/// # Safety
/// `ideal` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn teter_ideal_length(ideal: *const TeterIdeal, out: *mut usize) -> TeterStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = handle(ideal)?.poset.len();
        Ok(())
    })
}

/// Writes the full multigraded trace report as a JSON string.
///
/// # Safety
/// `ideal` must be a live handle and `out` a valid pointer. The string is
/// owned by the caller and released with [`teter_string_free`].
#[no_mangle]
pub unsafe extern "C" fn teter_trace_report_json(ideal: *const TeterIdeal, out: *mut *mut c_char) -> TeterStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = ptr::null_mut();
        let h = handle(ideal)?;
        let report = hom::trace_multigraded(&h.poset)?;
        let mut value = serde_json::to_value(&report).map_err(Error::from)?;
        value["vars"] = serde_json::json!(h.ideal.vars());
        *out = into_c_string(value.to_string())?;
        Ok(())
    })
}

/// Decides Teter type in the multigraded sense.
///
/// # Safety
/// `ideal` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn teter_type_multigraded(ideal: *const TeterIdeal, out: *mut TeterTypeVerdict) -> TeterStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let (verdict, _) = hom::teter_type_multigraded(&handle(ideal)?.poset)?;
        *out = match verdict {
            TeterVerdict::Yes => TeterTypeVerdict::Yes,
            TeterVerdict::No => TeterTypeVerdict::No,
            TeterVerdict::Gorenstein => TeterTypeVerdict::Gorenstein,
        };
        Ok(())
    })
}

/// Randomized Teter-type test over `F_prime` in the graded or local sense.
/// `Yes` is certified; `ProbablyNo` is a Monte Carlo answer.
///
/// # Safety
/// `ideal` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn teter_type_randomized(
    ideal: *const TeterIdeal,
    sense: TeterRandomSense,
    prime: u64,
    trials: u32,
    seed: u64,
    out: *mut TeterRandomVerdict,
) -> TeterStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let sense = match sense {
            TeterRandomSense::Graded => RandomSense::Graded,
            TeterRandomSense::Local => RandomSense::Local,
        };
        let report = linalg::teter_type_randomized(&handle(ideal)?.poset, sense, prime, trials, seed)?;
        *out = match report.verdict {
            RandomVerdict::Yes => TeterRandomVerdict::Yes,
            RandomVerdict::ProbablyNo => TeterRandomVerdict::ProbablyNo,
            RandomVerdict::Gorenstein => TeterRandomVerdict::Gorenstein,
        };
        Ok(())
    })
}

/// Multigraded Teter number: the fewest multigraded homomorphisms whose
/// images sum to the trace. Writes 0 when the cover search exceeds its cap.
/// Fails with `Gorenstein` on Gorenstein rings.
///
/// # Safety
/// `ideal` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn teter_number(ideal: *const TeterIdeal, out: *mut usize) -> TeterStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = hom::teter_number_multigraded(&handle(ideal)?.poset)?.map_or(0, |(k, _)| k);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn teter_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn teter_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
