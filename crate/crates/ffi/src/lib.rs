//! C ABI for pell-core.
//!
//! Integers cross the boundary as NUL-terminated decimal strings. Results are
//! opaque handles released with the matching `*_free`; strings returned
//! through out-parameters are released with [`pell_string_free`]. Every entry
//! point returns a [`PellStatus`]; on failure [`pell_last_error`] holds a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::{BigInt, BigUint};
use pell_core::cf::{cf_expand_with, CfConfig, CfExpansion, QuadIrrational};
use pell_core::{forms, oracle, Error, FormCycle, PellN, PellSolution, PellSolver, QForm};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PellStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    NoSolution = 5,
    LimitExceeded = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

/// Continued fraction of a quadratic irrational.
pub struct PellCf {
    inner: CfExpansion,
}

/// An ordered list of solutions of `x^2 - d y^2 = N`.
pub struct PellSolutions {
    inner: Vec<PellSolution>,
}

/// A binary quadratic form `(a, b, c)`.
pub struct PellForm {
    inner: QForm,
}

/// A cycle of reduced forms.
pub struct PellCycle {
    inner: FormCycle,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(PellStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NoSolution { .. } => PellStatus::NoSolution,
            Error::PeriodLimit { .. } | Error::CycleLimit { .. } => PellStatus::LimitExceeded,
            _ => PellStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PellStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PellStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PellStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PellStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(PellStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn nat(p: *const c_char, name: &str) -> Result<BigUint, Fail> {
    let s = text(p, name)?;
    s.trim().parse().map_err(|_| {
        Fail(
            PellStatus::ParseError,
            format!("{name} is not a nonnegative integer: {s:?}"),
        )
    })
}

unsafe fn int(p: *const c_char, name: &str) -> Result<BigInt, Fail> {
    let s = text(p, name)?;
    s.trim()
        .parse()
        .map_err(|_| Fail(PellStatus::ParseError, format!("{name} is not an integer: {s:?}")))
}

fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    // SAFETY: the caller passes a valid, writable pointer or null.
    unsafe { p.as_mut() }.ok_or_else(|| Fail(PellStatus::NullPointer, "output pointer is null".into()))
}

fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    // SAFETY: non-null handles come from this library and are still live.
    unsafe { p.as_ref() }.ok_or_else(|| Fail(PellStatus::NullPointer, "handle is null".into()))
}

fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let slot = out_ptr(out)?;
    *slot = CString::new(s).expect("decimal output has no NUL").into_raw();
    Ok(())
}

fn emit_box<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    let slot = out_ptr(out)?;
    *slot = Box::into_raw(Box::new(v));
    Ok(())
}

fn index_error(i: usize, len: usize) -> Fail {
    Fail(
        PellStatus::IndexOutOfRange,
        format!("index {i} out of range for length {len}"),
    )
}

fn config(max_period: usize) -> CfConfig {
    if max_period == 0 {
        CfConfig::default()
    } else {
        CfConfig { max_period }
    }
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn pell_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn pell_status_name(status: PellStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PellStatus::Ok => c"ok",
        PellStatus::NullPointer => c"null_pointer",
        PellStatus::InvalidUtf8 => c"invalid_utf8",
        PellStatus::ParseError => c"parse_error",
        PellStatus::InvalidInput => c"invalid_input",
        PellStatus::NoSolution => c"no_solution",
        PellStatus::LimitExceeded => c"limit_exceeded",
        PellStatus::IndexOutOfRange => c"index_out_of_range",
        PellStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// # Safety
/// `s` must be null or a string previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pell_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Expands `(p0 + sqrt d) / q0`. Pass `p0 = "0"`, `q0 = "1"` for `sqrt d`.
/// `max_period = 0` selects the default limit.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_cf_new(
    d: *const c_char,
    p0: *const c_char,
    q0: *const c_char,
    max_period: usize,
    out: *mut *mut PellCf,
) -> PellStatus {
    guard(|| {
        let x = QuadIrrational::new(int(p0, "p0")?, int(q0, "q0")?, nat(d, "d")?)?;
        let inner = cf_expand_with(&x, &config(max_period))?;
        emit_box(out, PellCf { inner })
    })
}

/// # Safety
/// `cf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pell_cf_free(cf: *mut PellCf) {
    if !cf.is_null() {
        drop(Box::from_raw(cf));
    }
}

/// Writes the preperiod length (excluding `a0`) and the period length.
///
/// # Safety
/// `cf` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_cf_lengths(cf: *const PellCf, preperiod: *mut usize, period: *mut usize) -> PellStatus {
    guard(|| {
        let cf = &handle(cf)?.inner;
        *out_ptr(preperiod)? = cf.preperiod.len();
        *out_ptr(period)? = cf.period_len();
        Ok(())
    })
}

/// Partial quotient `a_i` of the expansion, `i = 0` being the integer part.
/// Indices past the preperiod wrap around the period.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_cf_term(cf: *const PellCf, i: usize, out: *mut *mut c_char) -> PellStatus {
    guard(|| {
        let cf = &handle(cf)?.inner;
        let t = cf
            .terms()
            .nth(i)
            .ok_or_else(|| index_error(i, cf.preperiod.len() + 1))?;
        emit_string(out, t.to_string())
    })
}

/// Renders the expansion as `[a0; overline(...)]`.
///
/// # Safety
/// `cf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_cf_to_string(cf: *const PellCf, out: *mut *mut c_char) -> PellStatus {
    guard(|| emit_string(out, handle(cf)?.inner.to_string()))
}

/// First `count` solutions of `x^2 - d y^2 = n` for `n` in {1, -1, 4, -4}.
///
/// # Safety
/// `d` must be a valid string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_solve(
    d: *const c_char,
    n: i32,
    count: usize,
    max_period: usize,
    out: *mut *mut PellSolutions,
) -> PellStatus {
    guard(|| {
        let d = nat(d, "d")?;
        let n = PellN::try_from(i64::from(n))?;
        let inner = PellSolver::new(config(max_period)).solve(&d, n, count)?;
        emit_box(out, PellSolutions { inner })
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pell_solutions_free(s: *mut PellSolutions) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of solutions held, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pell_solutions_len(s: *const PellSolutions) -> usize {
    s.as_ref().map_or(0, |s| s.inner.len())
}

/// Writes solution `i` (0-based) as decimal strings.
///
/// # Safety
/// `s` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_solutions_get(
    s: *const PellSolutions,
    i: usize,
    x: *mut *mut c_char,
    y: *mut *mut c_char,
) -> PellStatus {
    guard(|| {
        let v = &handle(s)?.inner;
        let sol = v.get(i).ok_or_else(|| index_error(i, v.len()))?;
        out_ptr(x)?;
        out_ptr(y)?;
        emit_string(x, sol.x.to_string())?;
        emit_string(y, sol.y.to_string())
    })
}

/// Sets `valid` to whether `x^2 - d y^2 = n`.
///
/// # Safety
/// String arguments must be valid; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_verify(
    d: *const c_char,
    n: i64,
    x: *const c_char,
    y: *const c_char,
    valid: *mut bool,
) -> PellStatus {
    guard(|| {
        let ok = oracle::verify_solution(&nat(d, "d")?, n, &nat(x, "x")?, &nat(y, "y")?);
        *out_ptr(valid)? = ok;
        Ok(())
    })
}

/// # Safety
/// String arguments must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_form_new(
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out: *mut *mut PellForm,
) -> PellStatus {
    guard(|| {
        let inner = QForm::new(int(a, "a")?, int(b, "b")?, int(c, "c")?);
        emit_box(out, PellForm { inner })
    })
}

/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pell_form_free(f: *mut PellForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Coefficient 0, 1 or 2 (`a`, `b`, `c`) as a decimal string.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_form_coefficient(f: *const PellForm, which: usize, out: *mut *mut c_char) -> PellStatus {
    guard(|| {
        let f = &handle(f)?.inner;
        let v = [&f.a, &f.b, &f.c];
        let c = v.get(which).ok_or_else(|| index_error(which, 3))?;
        emit_string(out, c.to_string())
    })
}

/// Discriminant `b^2 - 4ac`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_form_discriminant(f: *const PellForm, out: *mut *mut c_char) -> PellStatus {
    guard(|| emit_string(out, forms::discriminant(&handle(f)?.inner).to_string()))
}

/// Reduces an indefinite form; writes a new handle and the number of steps.
///
/// # Safety
/// `f` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_form_reduce(
    f: *const PellForm,
    out: *mut *mut PellForm,
    steps: *mut usize,
) -> PellStatus {
    guard(|| {
        let r = forms::reduce(&handle(f)?.inner)?;
        *out_ptr(steps)? = r.steps.len();
        emit_box(out, PellForm { inner: r.form })
    })
}

/// Cycle of a reduced form with `a > 0`; `proper` selects the proper cycle.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_form_cycle(f: *const PellForm, proper: bool, out: *mut *mut PellCycle) -> PellStatus {
    guard(|| {
        let f = &handle(f)?.inner;
        let inner = if proper {
            forms::proper_cycle(f)?
        } else {
            forms::cycle(f)?
        };
        emit_box(out, PellCycle { inner })
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pell_cycle_free(c: *mut PellCycle) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pell_cycle_len(c: *const PellCycle) -> usize {
    c.as_ref().map_or(0, |c| c.inner.len())
}

/// Copies form `i` of the cycle into a new handle.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pell_cycle_get(c: *const PellCycle, i: usize, out: *mut *mut PellForm) -> PellStatus {
    guard(|| {
        let forms = &handle(c)?.inner.forms;
        let f = forms.get(i).ok_or_else(|| index_error(i, forms.len()))?;
        emit_box(out, PellForm { inner: f.clone() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn take(p: *mut c_char) -> String {
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { pell_string_free(p) };
        s
    }

    #[test]
    fn status_names() {
        let name = unsafe { CStr::from_ptr(pell_status_name(PellStatus::NoSolution)) };
        assert_eq!(name.to_str().unwrap(), "no_solution");
    }

    #[test]
    fn null_handles_are_rejected() {
        let mut out = ptr::null_mut();
        let st = unsafe { pell_cf_to_string(ptr::null(), &mut out) };
        assert_eq!(st, PellStatus::NullPointer);
        assert!(out.is_null());
        assert_eq!(unsafe { pell_solutions_len(ptr::null()) }, 0);
    }

    #[test]
    fn cf_roundtrip() {
        let mut cf = ptr::null_mut();
        let st = unsafe { pell_cf_new(c"7".as_ptr(), c"0".as_ptr(), c"1".as_ptr(), 0, &mut cf) };
        assert_eq!(st, PellStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { pell_cf_to_string(cf, &mut s) }, PellStatus::Ok);
        assert_eq!(take(s), "[2; overline(1, 1, 1, 4)]");
        unsafe { pell_cf_free(cf) };
    }
}
