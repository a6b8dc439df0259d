//! C ABI over the koszul-lab engine.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns a [`KlStatus`] and
//! leaves a message for [`kl_last_error_message`] on failure. Strings
//! returned by the library are released with [`kl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use koszul_lab::algebra::{parse_ring, RingSpec};
use koszul_lab::freeres::{deviations, koszul_check, KoszulVerdict};
use koszul_lab::koszulhom::{betti_table, default_window, BettiTable, CertifiedWindow};
use koszul_lab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlStatus {
    Ok = 0,
    ParseError = 1,
    ConfigError = 2,
    Unsupported = 3,
    WindowTooSmall = 4,
    Internal = 5,
    NullArgument = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

/// Parsed ring `Q/I`.
pub struct KlRing(RingSpec);

/// Betti table over a finite window.
pub struct KlBetti(BettiTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> KlStatus {
    match e {
        Error::Parse { .. } => KlStatus::ParseError,
        Error::Config(_) => KlStatus::ConfigError,
        Error::Unsupported(_) => KlStatus::Unsupported,
        Error::WindowTooSmall(_) => KlStatus::WindowTooSmall,
        Error::Internal(_) => KlStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), KlStatus>) -> KlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KlStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside koszul-lab");
            KlStatus::Panic
        }
    }
}

fn fail(e: Error) -> KlStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> KlStatus {
    set_error(format!("{what} is null"));
    KlStatus::NullArgument
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn kl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a ring file. `p` overrides the prime in the text when nonzero.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_ring_parse(text: *const c_char, p: u64, out: *mut *mut KlRing) -> KlStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = CStr::from_ptr(text).to_str().map_err(|e| {
            set_error(format!("ring text is not UTF-8: {e}"));
            KlStatus::InvalidUtf8
        })?;
        let spec = parse_ring(text, (p != 0).then_some(p)).map_err(fail)?;
        *out = Box::into_raw(Box::new(KlRing(spec)));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from [`kl_ring_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn kl_ring_free(ring: *mut KlRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_ring_nvars(ring: *const KlRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.nvars())
}

/// Number of minimal generators, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_ring_ngens(ring: *const KlRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.g())
}

/// Betti table over `0..=i_max`, `0..=j_max`; negative bounds select the
/// default window.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_betti_compute(
    ring: *const KlRing,
    i_max: i32,
    j_max: i32,
    out: *mut *mut KlBetti,
) -> KlStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (di, dj) = default_window(&ring.0);
        let i = if i_max < 0 { di } else { i_max as usize };
        let j = if j_max < 0 { dj } else { j_max as usize };
        let mut t = betti_table(&ring.0, i, j);
        t.complete = CertifiedWindow::of(&ring.0).covered_by(i, j);
        *out = Box::into_raw(Box::new(KlBetti(t)));
        Ok(())
    })
}

/// # Safety
/// `betti` must be null or a handle from [`kl_betti_compute`], freed once.
#[no_mangle]
pub unsafe extern "C" fn kl_betti_free(betti: *mut KlBetti) {
    if !betti.is_null() {
        drop(Box::from_raw(betti));
    }
}

/// `β_{i,j}`, or 0 outside the window or for a null handle.
///
/// # Safety
/// `betti` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kl_betti_get(betti: *const KlBetti, i: usize, j: usize) -> u64 {
    match betti.as_ref() {
        Some(b) if i <= b.0.i_max && j <= b.0.j_max => b.0.get(i, j),
        _ => 0,
    }
}

/// Window bounds and whether the window covers every nonzero entry.
///
/// # Safety
/// `betti` must be a live handle; the out pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn kl_betti_window(
    betti: *const KlBetti,
    i_max: *mut usize,
    j_max: *mut usize,
    complete: *mut bool,
) -> KlStatus {
    guard(|| {
        let b = betti.as_ref().ok_or_else(|| null("betti"))?;
        if let Some(p) = i_max.as_mut() {
            *p = b.0.i_max;
        }
        if let Some(p) = j_max.as_mut() {
            *p = b.0.j_max;
        }
        if let Some(p) = complete.as_mut() {
            *p = b.0.complete;
        }
        Ok(())
    })
}

/// Table rendering with rows indexed by `j - i`; free with [`kl_string_free`].
///
/// # Safety
/// `betti` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_betti_render(betti: *const KlBetti, out: *mut *mut c_char) -> KlStatus {
    guard(|| {
        let b = betti.as_ref().ok_or_else(|| null("betti"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = CString::new(b.0.render()).map_err(|_| KlStatus::Internal)?.into_raw();
        Ok(())
    })
}

/// Total deviation `ε_i` summed over internal degrees up to `j_max`.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_deviation(
    ring: *const KlRing,
    i: usize,
    j_max: usize,
    out: *mut u64,
) -> KlStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = deviations(&ring.0, i, j_max).map_err(fail)?;
        *out = d.total(i);
        Ok(())
    })
}

/// Outcome of [`kl_koszul_check`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlKoszul {
    /// linear through the requested number of steps
    Linear = 0,
    /// nonlinear entry found; see `fail_i`, `fail_j`
    Fails = 1,
    /// degree window too small to decide
    Inconclusive = 2,
}

/// Linearity of the resolution of k over R through `steps` steps.
/// `fail_i` and `fail_j` receive the first nonlinear `Tor_i(k,k)_j` when
/// the verdict is [`KlKoszul::Fails`]; they may be null.
///
/// # Safety
/// `ring` must be a live handle and `verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kl_koszul_check(
    ring: *const KlRing,
    steps: usize,
    verdict: *mut KlKoszul,
    fail_i: *mut usize,
    fail_j: *mut usize,
) -> KlStatus {
    guard(|| {
        let ring = ring.as_ref().ok_or_else(|| null("ring"))?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let v = koszul_check(&ring.0, steps, None).map_err(fail)?;
        *verdict = match v {
            KoszulVerdict::KoszulUpTo(_) => KlKoszul::Linear,
            KoszulVerdict::FailsAt(i, j) => {
                if let Some(p) = fail_i.as_mut() {
                    *p = i;
                }
                if let Some(p) = fail_j.as_mut() {
                    *p = j;
                }
                KlKoszul::Fails
            }
            KoszulVerdict::Inconclusive { .. } => KlKoszul::Inconclusive,
        };
        Ok(())
    })
}
